#ifndef GENESYS_LTS_HPP
#define GENESYS_LTS_HPP

#include <optional>
#include <string>
#include <vector>

#include "genesys/machine.hpp"
#include "genesys/oblige.hpp"
#include "genesys/prover.hpp"

namespace genesys {

enum class StateLevel { Abstract, Concrete };

struct StateNode {
    std::string name;
    PredPtr predicate;
    std::optional<std::string> parent;
    StateLevel level = StateLevel::Abstract;
    bool empty_flag = false; // predicate proven unsatisfiable under the invariant
};

struct InitialArrow {
    std::string state;
    PredPtr condition;
};

struct Transition {
    std::string src;
    std::string event;
    PredPtr condition;
    bool reduced = false;    // rendered `[]`
    bool is_default = false; // kept because some verdict stayed Unknown
    std::string dst;
};

struct SymbolicLts {
    std::string machine_name;
    std::vector<StateNode> states;
    std::vector<InitialArrow> initial;
    std::vector<Transition> transitions;

    const StateNode* find_state(const std::string& name) const;
    bool hierarchical() const;
    // Concrete-level states when a hierarchy is present, all states otherwise.
    std::vector<const StateNode*> leaf_states() const;
    std::vector<const Transition*> leaf_transitions() const;
};

struct PoRecord {
    std::string id;
    PoKind kind;
    std::string verdict; // Valid/Invalid/Unknown or Sat/Unsat/Unknown
    std::string method;
    std::optional<Valuation> witness;
};

struct BuildReport {
    std::vector<PoRecord> records;
    std::vector<std::string> warnings;
    bool has_default = false;
};

std::string to_string(const BuildReport& r);

// Assemble the symbolic LTS of a single machine.
SymbolicLts build(const MachineModel& m, const ProverConfig& cfg, BuildReport* report = nullptr,
                  bool override_cover = false);

// Two-level LTS: concrete states nested under the abstract states they refine.
SymbolicLts build_refined(const LinkedPair& pair, const SymbolicLts& abstract_lts,
                          const ProverConfig& cfg, BuildReport* report = nullptr,
                          bool override_cover = false);

// Intermediate textual format (round-trip identity with parse_intermediate).
std::string emit_intermediate(const SymbolicLts& l);
SymbolicLts parse_intermediate(const std::string& text, const MachineModel& m);

std::string emit_dot(const SymbolicLts& l);
std::string emit_aut(const SymbolicLts& l, bool allow_multiple_initial = false);

bool equal(const SymbolicLts& a, const SymbolicLts& b);

} // namespace genesys

#endif
