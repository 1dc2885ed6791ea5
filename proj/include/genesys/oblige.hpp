#ifndef GENESYS_OBLIGE_HPP
#define GENESYS_OBLIGE_HPP

#include <string>
#include <vector>

#include "genesys/machine.hpp"

namespace genesys {

enum class PoKind {
    Cover,
    Disjoint,
    EnabledAlways,
    EnabledNever,
    ReachExists,
    ReachTotal,
    InitReach,
    Placement
};

const char* po_kind_text(PoKind k);

struct ProofObligation {
    std::string id;
    PoKind kind;
    PredPtr hypothesis;
    PredPtr goal;
    // subject: state [, event [, target state]]
    std::string state;
    std::string event;
    std::string target;
};

// properties & invariant, the hypothesis shared by most obligations.
PredPtr machine_hypothesis(const MachineModel& m);

// invariant => disjunction of state predicates
ProofObligation cover_obligation(const MachineModel& m);

// One satisfiability query per state pair; a pair is reported when it is not
// proven mutually exclusive. The queries are returned for the caller's prover.
std::vector<ProofObligation> disjointness_obligations(const MachineModel& m);

// (PO_always, PO_never) for a (state, event) pair.
std::pair<ProofObligation, ProofObligation>
enabledness_pair(const StatePredicate& state, const Event& e, const MachineModel& m);

// (PO_exists, PO_total) for (src, event, dst). PO_exists is a satisfiability
// query over its goal (hypothesis is TRUE there); PO_total is an entailment.
std::pair<ProofObligation, ProofObligation>
reach_obligations(const StatePredicate& src, const Event& e, const StatePredicate& dst,
                  const MachineModel& m);

// Per-state initial-placement satisfiability queries.
std::vector<ProofObligation> init_obligations(const MachineModel& m);

// Placement of one concrete state under each candidate abstract state.
std::vector<ProofObligation>
placement_obligations(const StatePredicate& concrete_state,
                      const std::vector<StatePredicate>& abstract_states, const PredPtr& gluing,
                      const PredPtr& concrete_hypothesis);

// Textual obligation file: `PO <id> <kind> HYP <pred> GOAL <pred>` per line.
std::string emit_obligations(const std::vector<ProofObligation>& pos);

// Every obligation a flat generation run can pose, in deterministic order:
// cover, disjointness, all enabledness pairs, all reach pairs, init.
std::vector<ProofObligation> all_obligations(const MachineModel& m);

} // namespace genesys

#endif
