#include "genesys/oblige.hpp"

#include <sstream>

#include "genesys/logic.hpp"

namespace genesys {

const char* po_kind_text(PoKind k) {
    switch (k) {
    case PoKind::Cover: return "cover";
    case PoKind::Disjoint: return "disjoint";
    case PoKind::EnabledAlways: return "enabled_always";
    case PoKind::EnabledNever: return "enabled_never";
    case PoKind::ReachExists: return "reach_exists";
    case PoKind::ReachTotal: return "reach_total";
    case PoKind::InitReach: return "init_reach";
    case PoKind::Placement: return "placement";
    }
    return "?";
}

PredPtr machine_hypothesis(const MachineModel& m) {
    return Pred::conj(m.properties, m.invariant);
}

ProofObligation cover_obligation(const MachineModel& m) {
    PredPtr goal = Pred::falsity();
    for (const auto& sp : m.state_predicates) goal = Pred::disj(goal, sp.pred);
    return {"cover", PoKind::Cover, machine_hypothesis(m), goal, "", "", ""};
}

std::vector<ProofObligation> disjointness_obligations(const MachineModel& m) {
    std::vector<ProofObligation> out;
    const auto& sps = m.state_predicates;
    for (std::size_t i = 0; i < sps.size(); ++i)
        for (std::size_t j = i + 1; j < sps.size(); ++j) {
            PredPtr q = Pred::conj(machine_hypothesis(m), Pred::conj(sps[i].pred, sps[j].pred));
            out.push_back({"disj_" + sps[i].name + "_" + sps[j].name, PoKind::Disjoint,
                           Pred::truth(), q, sps[i].name, "", sps[j].name});
        }
    return out;
}

std::pair<ProofObligation, ProofObligation>
enabledness_pair(const StatePredicate& state, const Event& e, const MachineModel& m) {
    PredPtr hyp = Pred::conj(machine_hypothesis(m), state.pred);
    ProofObligation always{"alw_" + state.name + "_" + e.name, PoKind::EnabledAlways, hyp, e.guard,
                           state.name, e.name, ""};
    ProofObligation never{"nev_" + state.name + "_" + e.name, PoKind::EnabledNever, hyp,
                          Pred::negation(e.guard), state.name, e.name, ""};
    return {always, never};
}

std::pair<ProofObligation, ProofObligation>
reach_obligations(const StatePredicate& src, const Event& e, const StatePredicate& dst,
                  const MachineModel& m) {
    PredPtr w = wp(e.action, dst.pred);
    PredPtr hyp = Pred::conj(Pred::conj(machine_hypothesis(m), src.pred), e.guard);
    std::string tag = src.name + "_" + e.name + "_" + dst.name;
    // PO_exists: satisfiability of hyp & W; kept as a goal-only obligation.
    ProofObligation exists{"ex_" + tag, PoKind::ReachExists, Pred::truth(), Pred::conj(hyp, w),
                           src.name, e.name, dst.name};
    ProofObligation total{"tot_" + tag, PoKind::ReachTotal, hyp, w, src.name, e.name, dst.name};
    return {exists, total};
}

std::vector<ProofObligation> init_obligations(const MachineModel& m) {
    std::vector<ProofObligation> out;
    for (const auto& sp : m.state_predicates) {
        PredPtr q = Pred::conj(m.properties, wp(m.initialisation, sp.pred));
        out.push_back(
            {"init_" + sp.name, PoKind::InitReach, Pred::truth(), q, sp.name, "", ""});
    }
    return out;
}

std::vector<ProofObligation>
placement_obligations(const StatePredicate& concrete_state,
                      const std::vector<StatePredicate>& abstract_states, const PredPtr& gluing,
                      const PredPtr& concrete_hypothesis) {
    std::vector<ProofObligation> out;
    PredPtr hyp =
        Pred::conj(Pred::conj(concrete_hypothesis, gluing), concrete_state.pred);
    for (const auto& abs : abstract_states)
        out.push_back({"place_" + concrete_state.name + "_" + abs.name, PoKind::Placement, hyp,
                       abs.pred, concrete_state.name, "", abs.name});
    return out;
}

std::vector<ProofObligation> all_obligations(const MachineModel& m) {
    std::vector<ProofObligation> out;
    out.push_back(cover_obligation(m));
    for (auto& po : disjointness_obligations(m)) out.push_back(std::move(po));
    for (const auto& src : m.state_predicates)
        for (const auto& e : m.events) {
            auto [a, n] = enabledness_pair(src, e, m);
            out.push_back(std::move(a));
            out.push_back(std::move(n));
            for (const auto& dst : m.state_predicates) {
                auto [ex, tot] = reach_obligations(src, e, dst, m);
                out.push_back(std::move(ex));
                out.push_back(std::move(tot));
            }
        }
    for (auto& po : init_obligations(m)) out.push_back(std::move(po));
    return out;
}

std::string emit_obligations(const std::vector<ProofObligation>& pos) {
    std::ostringstream os;
    for (const auto& po : pos)
        os << "PO " << po.id << " " << po_kind_text(po.kind) << " HYP " << to_string(po.hypothesis)
           << " GOAL " << to_string(po.goal) << "\n";
    return os.str();
}

} // namespace genesys
