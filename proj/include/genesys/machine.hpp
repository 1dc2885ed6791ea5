#ifndef GENESYS_MACHINE_HPP
#define GENESYS_MACHINE_HPP

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "genesys/ast.hpp"
#include "genesys/errors.hpp"

namespace genesys {

struct Event {
    std::string name;
    PredPtr guard;
    SubstPtr action;
    SourcePos pos;
};

struct StatePredicate {
    std::string name; // auto S0..Sn or user label
    PredPtr pred;
};

enum class MachineKind { Machine, Refinement };

struct MachineModel {
    std::string name;
    MachineKind kind = MachineKind::Machine;
    std::optional<std::string> refines;
    std::vector<std::pair<std::string, std::vector<std::string>>> sets;
    std::vector<std::string> constants;
    PredPtr properties; // TRUE when absent
    std::vector<std::string> variables;
    PredPtr invariant;
    std::vector<StatePredicate> state_predicates;
    SubstPtr initialisation;
    std::vector<Event> events;

    // ident -> sort, filled by the frontend (variables + constants).
    std::map<std::string, Sort> sorts;
    // enum literal -> owning set
    std::map<std::string, std::string> enum_literals;

    // Identifiers used but not declared locally; only legal for refinements,
    // resolved against the abstract machine by resolve_refinement.
    std::vector<std::string> external_idents;

    bool has_set(const std::string& s) const;
    const std::vector<std::string>* set_elements(const std::string& s) const;
};

// Two-level view produced by resolve_refinement. The concrete model is
// completed in place (external constants, merged sort table); `gluing` is the
// refinement's INVARIANT clause.
struct LinkedPair {
    const MachineModel* abstract_model;
    MachineModel concrete; // completed copy
    PredPtr gluing;
};

MachineModel parse(const std::string& source);
LinkedPair resolve_refinement(const MachineModel& concrete, const MachineModel& abstract_model);

// Pretty-print back to the concrete syntax (round-trip with parse).
std::string to_string(const MachineModel& m);

// Parse a single predicate against a machine's symbol table (used by the
// intermediate-format reader and the CLI).
PredPtr parse_predicate(const std::string& text, const MachineModel& m);

} // namespace genesys

#endif
