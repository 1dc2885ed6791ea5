#ifndef GENESYS_ORACLE_HPP
#define GENESYS_ORACLE_HPP

#include <cstddef>
#include <string>
#include <vector>

#include "genesys/lts.hpp"
#include "genesys/logic.hpp"
#include "genesys/machine.hpp"

namespace genesys {

struct ExplicitEdge {
    std::size_t src;
    std::string event;
    std::size_t dst;
};

// Ground truth: the explicit reachable graph of one finite instantiation.
struct ExplicitLts {
    std::vector<Valuation> nodes; // BFS order, node 0 initial
    std::vector<ExplicitEdge> edges;
};

// Breadth-first closure from the initialisation. `constants` must cover all
// machine constants and satisfy the properties.
ExplicitLts explore(const MachineModel& m, const Valuation& constants,
                    std::size_t max_states = 100000);

enum class CheckStatus { Pass, Fail, Warn };

struct CheckLine {
    std::string kind;
    CheckStatus status;
    std::string detail;
};

struct ConformanceReport {
    std::vector<CheckLine> lines;
    bool sound = true; // no explicit edge without a symbolic image

    bool ok() const { return sound; }
    // indices into the symbolic leaf transition list that were witnessed
    std::vector<bool> witnessed;
};

std::string to_string(const ConformanceReport& r);

// Check the symbolic LTS against one explicit exploration.
ConformanceReport conformance(const ExplicitLts& x, const SymbolicLts& s, const MachineModel& m);

} // namespace genesys

#endif
