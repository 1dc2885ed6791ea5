#include <doctest.h>

#include <cstdio>
#include <filesystem>

#include "genesys/prover.hpp"
#include "genesys/logic.hpp"
#include "helpers.hpp"

using namespace genesys;

namespace {

ProverConfig bounded(long lo, long hi) {
    ProverConfig cfg;
    std::vector<long> vals;
    for (long v = lo; v <= hi; ++v) vals.push_back(v);
    cfg.constant_bounds["NbPlaces"] = vals;
    cfg.require_bounds = true;
    return cfg;
}

} // namespace

TEST_CASE("cover of the parking machine is Valid by case split") {
    MachineModel m = test::load("parking.mch");
    Prover prover(m, {});
    ProofResult r = prover.decide(cover_obligation(m));
    CHECK(r.verdict == Verdict::Valid);
    CHECK(r.method == ProofMethod::Simplifier);
    CHECK(!r.counterexample.has_value());
}

TEST_CASE("cover of the refined machine is Valid") {
    MachineModel conc = test::load("parking_r1.ref");
    MachineModel abs = test::load("parking.mch");
    LinkedPair pair = resolve_refinement(conc, abs);
    MachineModel effective = pair.concrete;
    effective.invariant = Pred::conj(abs.invariant, pair.concrete.invariant);
    Prover prover(effective, {});
    CHECK(prover.decide(cover_obligation(effective)).verdict == Verdict::Valid);
}

TEST_CASE("dropping the cc=1 state makes cover Invalid with cc=1 in the cex") {
    MachineModel m = test::load("parking_nocc1.mch");
    Prover prover(m, bounded(1, 3));
    ProofResult r = prover.decide(cover_obligation(m));
    REQUIRE(r.verdict == Verdict::Invalid);
    REQUIRE(r.counterexample.has_value());
    CHECK(std::get<long>(r.counterexample->at("cc")) == 1);
    // the counterexample satisfies the hypothesis and refutes the goal
    ProofObligation po = cover_obligation(m);
    CHECK(evaluate(po.hypothesis, *r.counterexample));
    CHECK(!evaluate(po.goal, *r.counterexample));
}

TEST_CASE("decide degrades to Unknown without bounds") {
    MachineModel m = test::load("parking_nocc1.mch");
    Prover prover(m, {});
    // NbPlaces has no finite domain, so no counterexample can be produced
    CHECK(prover.decide(cover_obligation(m)).verdict == Verdict::Unknown);
}

TEST_CASE("a guard entailed by the state predicate is Valid by the simplifier") {
    MachineModel m = test::load("parking.mch");
    Prover prover(m, {});
    auto [alw, nev] = enabledness_pair(m.state_predicates[2], m.events[1], m); // C1, controler_entree
    CHECK(prover.decide(alw).verdict == Verdict::Valid);
    // refuting the never-claim needs a concrete NbPlaces
    CHECK(Prover(m, bounded(1, 3)).decide(nev).verdict == Verdict::Invalid);
}

TEST_CASE("check_sat finds witnesses and proves vacuity") {
    MachineModel m = test::load("parking.mch");
    Prover prover(m, bounded(1, 3));
    auto P = [&](const char* t) { return parse_predicate(t, m); };

    SatResult sat = prover.check_sat(P("NbPlaces:NAT & NbPlaces>0 & NbVoit:0..NbPlaces & NbVoit>0"));
    REQUIRE(sat.status == SatStatus::Sat);
    CHECK(evaluate(P("NbVoit>0"), *sat.witness));

    // structurally contradictory: simplifier path
    CHECK(prover.check_sat(P("cc=0 & cc=1")).status == SatStatus::Unsat);
    // exhaustive enumeration path
    CHECK(prover.check_sat(P("NbPlaces:NAT & NbPlaces>0 & NbPlaces<1")).status == SatStatus::Unsat);
}

TEST_CASE("enlarging bounds never flips Valid verdicts") {
    MachineModel m = test::load("parking.mch");
    Prover small(m, bounded(1, 1));
    Prover big(m, bounded(1, 3));
    for (const auto& po : all_obligations(m)) {
        if (po.kind == PoKind::Disjoint || po.kind == PoKind::ReachExists ||
            po.kind == PoKind::InitReach)
            continue; // satisfiability queries
        Verdict a = small.decide(po).verdict;
        Verdict b = big.decide(po).verdict;
        if (a == Verdict::Valid) CHECK(b == Verdict::Valid);
    }
}

TEST_CASE("decide is deterministic") {
    MachineModel m = test::load("parking.mch");
    Prover prover(m, bounded(1, 3));
    for (const auto& po : all_obligations(m)) {
        if (po.kind == PoKind::Disjoint || po.kind == PoKind::ReachExists ||
            po.kind == PoKind::InitReach)
            continue;
        ProofResult a = prover.decide(po);
        ProofResult b = prover.decide(po);
        CHECK(a.verdict == b.verdict);
        CHECK(a.counterexample == b.counterexample);
    }
}

TEST_CASE("Invalid counterexamples re-evaluate correctly") {
    MachineModel m = test::load("parking.mch");
    Prover prover(m, bounded(1, 3));
    int invalids = 0;
    for (const auto& po : all_obligations(m)) {
        if (po.kind == PoKind::Disjoint || po.kind == PoKind::ReachExists ||
            po.kind == PoKind::InitReach)
            continue;
        ProofResult r = prover.decide(po);
        if (r.verdict != Verdict::Invalid) continue;
        ++invalids;
        REQUIRE(r.counterexample.has_value());
        CHECK(evaluate(po.hypothesis, *r.counterexample));
        CHECK(!evaluate(po.goal, *r.counterexample));
    }
    CHECK(invalids > 0);
}

TEST_CASE("SMT-LIB export declares identifiers and negates the goal") {
    MachineModel conc = test::load("parking_r1.ref");
    MachineModel abs = test::load("parking.mch");
    LinkedPair pair = resolve_refinement(conc, abs);
    MachineModel& m = pair.concrete;

    auto dir = std::filesystem::temp_directory_path() / "genesys_smt_test";
    std::filesystem::create_directories(dir);
    auto [alw, nev] = enabledness_pair(m.state_predicates[0], m.events[0], m);
    std::string path = export_obligation(alw, m, dir.string());
    CHECK(path.find("alw_C0v_entrer.smt2") != std::string::npos);

    std::string text = test::slurp(path);
    CHECK(text.find("(set-logic QF_LIA)") != std::string::npos);
    CHECK(text.find("(declare-const NbVoit Int)") != std::string::npos);
    CHECK(text.find("(declare-const feu Int)") != std::string::npos);
    CHECK(text.find("vert=0, rouge=1") != std::string::npos); // enum mapping comment
    CHECK(text.find("(assert (not ") != std::string::npos);
    CHECK(text.find("(check-sat)") != std::string::npos);
    std::filesystem::remove_all(dir);
}
