#include <doctest.h>

#include "genesys/lts.hpp"
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

SymbolicLts build_parking(BuildReport* rep = nullptr) {
    MachineModel m = test::load("parking.mch");
    return build(m, bounded(1, 3), rep);
}

SymbolicLts build_parking_r1(BuildReport* rep = nullptr) {
    MachineModel conc = test::load("parking_r1.ref");
    MachineModel abs = test::load("parking.mch");
    LinkedPair pair = resolve_refinement(conc, abs);
    SymbolicLts abs_lts = build(abs, bounded(1, 3), rep);
    return build_refined(pair, abs_lts, bounded(1, 3), rep);
}

const Transition* find_trans(const SymbolicLts& l, const std::string& src,
                             const std::string& ev, const std::string& dst) {
    for (const auto& t : l.transitions)
        if (t.src == src && t.event == ev && t.dst == dst) return &t;
    return nullptr;
}

} // namespace

TEST_CASE("parking builds the published flat LTS") {
    BuildReport rep;
    SymbolicLts l = build_parking(&rep);
    CHECK(l.machine_name == "parking");
    REQUIRE(l.states.size() == 3);
    CHECK(!l.hierarchical());
    REQUIRE(l.initial.size() == 1);
    CHECK(l.initial[0].state == "C0");
    CHECK(l.initial[0].condition->kind == Pred::Kind::True);

    REQUIRE(l.transitions.size() == 4);
    const Transition* t = find_trans(l, "C0", "entrer", "C1");
    REQUIRE(t != nullptr);
    CHECK(!t->reduced);
    CHECK(to_string(t->condition) == "NbVoit<NbPlaces");
    t = find_trans(l, "C0", "sortir", "Cm1");
    REQUIRE(t != nullptr);
    CHECK(to_string(t->condition) == "NbVoit>0");
    t = find_trans(l, "C1", "controler_entree", "C0");
    REQUIRE(t != nullptr);
    CHECK(t->reduced);
    t = find_trans(l, "Cm1", "controler_sortie", "C0");
    REQUIRE(t != nullptr);
    CHECK(t->reduced);

    CHECK(!rep.has_default);
    CHECK(rep.warnings.empty());
    for (const auto& t2 : l.transitions) CHECK(!t2.is_default);
}

TEST_CASE("parking intermediate output matches the golden file") {
    SymbolicLts l = build_parking();
    CHECK(emit_intermediate(l) == test::slurp(test::data_path("golden/parking.lts")));
}

TEST_CASE("refined parking builds the published hierarchical LTS") {
    SymbolicLts l = build_parking_r1();
    CHECK(l.machine_name == "parking_r1");
    REQUIRE(l.states.size() == 8);
    CHECK(l.hierarchical());
    CHECK(l.leaf_states().size() == 5);

    auto parent = [&](const char* s) { return l.find_state(s)->parent.value(); };
    CHECK(parent("C0v") == "C0");
    CHECK(parent("C0r") == "C0");
    CHECK(parent("C1v") == "C1");
    CHECK(parent("Cm1v") == "Cm1");
    CHECK(parent("Cm1r") == "Cm1");

    REQUIRE(l.initial.size() == 1);
    CHECK(l.initial[0].state == "C0v");

    // entrer departs only from the green cc=0 sub-state
    int entrer_leaf = 0;
    for (const auto* t : l.leaf_transitions())
        if (t->event == "entrer") {
            ++entrer_leaf;
            CHECK(t->src == "C0v");
            CHECK(t->reduced);
        }
    CHECK(entrer_leaf == 1);

    // controler_entree splits on the car count
    const Transition* keep = find_trans(l, "C1v", "controler_entree", "C0v");
    REQUIRE(keep != nullptr);
    CHECK(to_string(keep->condition) == "NbVoit<NbPlaces");
    const Transition* full = find_trans(l, "C1v", "controler_entree", "C0r");
    REQUIRE(full != nullptr);
    CHECK(to_string(full->condition) == "NbVoit=NbPlaces");

    CHECK(l.leaf_transitions().size() == 7);
    CHECK(emit_intermediate(l) == test::slurp(test::data_path("golden/parking_r1.lts")));
}

TEST_CASE("cover failure aborts the build unless overridden") {
    MachineModel m = test::load("parking_nocc1.mch");
    CHECK_THROWS_AS(build(m, bounded(1, 3)), CoverFailed);
    BuildReport rep;
    SymbolicLts l = build(m, bounded(1, 3), &rep, /*override_cover=*/true);
    CHECK(l.states.size() == 2);
    REQUIRE(!rep.records.empty());
    CHECK(rep.records[0].id == "cover");
    CHECK(rep.records[0].verdict == "Invalid");
}

TEST_CASE("withheld bounds degrade transitions to default provenance") {
    MachineModel m = test::load("parking.mch");
    ProverConfig cfg; // no bounds: Invalid verdicts become Unknown
    BuildReport rep;
    SymbolicLts l = build(m, cfg, &rep);
    REQUIRE(l.transitions.size() == 4);
    CHECK(rep.has_default);
    const Transition* t = find_trans(l, "C0", "entrer", "C1");
    REQUIRE(t != nullptr);
    CHECK(t->is_default);
}

TEST_CASE("a skip self-loop on a single state is reduced") {
    MachineModel m = parse(R"(
MACHINE loop
VARIABLES x
INVARIANT x : 0..1
ASSERTIONS All@(x : 0..1)
INITIALISATION x := 0
OPERATIONS tick = SELECT x : 0..1 THEN skip END
END
)");
    SymbolicLts l = build(m, {});
    REQUIRE(l.transitions.size() == 1);
    CHECK(l.transitions[0].src == "All");
    CHECK(l.transitions[0].dst == "All");
    CHECK(l.transitions[0].reduced);
}

TEST_CASE("intermediate format round-trips") {
    MachineModel m = test::load("parking.mch");
    SymbolicLts l = build_parking();
    SymbolicLts l2 = parse_intermediate(emit_intermediate(l), m);
    CHECK(equal(l, l2));

    MachineModel conc = test::load("parking_r1.ref");
    MachineModel abs = test::load("parking.mch");
    LinkedPair pair = resolve_refinement(conc, abs);
    SymbolicLts r = build_parking_r1();
    SymbolicLts r2 = parse_intermediate(emit_intermediate(r), pair.concrete);
    CHECK(equal(r, r2));
    CHECK(emit_intermediate(r2) == emit_intermediate(r));
}

TEST_CASE("intermediate parser rejects malformed input") {
    MachineModel m = test::load("parking.mch");
    CHECK_THROWS_AS(parse_intermediate("STATE C0 WRONG cc=0\n", m), FormatError);
    CHECK_THROWS_AS(parse_intermediate("TRANS C0 entrer COND TRUE -> Nowhere\nSTATE C0 PRED cc=0\n", m),
                    FormatError);
    CHECK_THROWS_AS(parse_intermediate("BOGUS x\n", m), FormatError);
}

TEST_CASE("DOT output nests concrete states in clusters") {
    SymbolicLts l = build_parking_r1();
    std::string dot = emit_dot(l);
    CHECK(dot.find("digraph \"parking_r1\"") != std::string::npos);
    CHECK(dot.find("compound=true") != std::string::npos);
    CHECK(dot.find("subgraph \"cluster_C0\"") != std::string::npos);
    CHECK(dot.find("subgraph \"cluster_C1\"") != std::string::npos);
    CHECK(dot.find("subgraph \"cluster_Cm1\"") != std::string::npos);
    CHECK(dot.find("\"C0v\"") != std::string::npos);
    CHECK(dot.find("lhead=\"cluster_") != std::string::npos);
    CHECK(dot.find("ltail=\"cluster_") != std::string::npos);
    CHECK(dot.find("shape=point") != std::string::npos); // initial arrow source
    CHECK(dot.find("entrer []") != std::string::npos);
    CHECK(dot.find("controler_entree [NbVoit=NbPlaces]") != std::string::npos);
}

TEST_CASE("flat DOT output has no clusters") {
    std::string dot = emit_dot(build_parking());
    CHECK(dot.find("subgraph") == std::string::npos);
    CHECK(dot.find("entrer [NbVoit<NbPlaces]") != std::string::npos);
}

TEST_CASE("default transitions are dashed in DOT") {
    MachineModel m = test::load("parking.mch");
    SymbolicLts l = build(m, {});
    CHECK(emit_dot(l).find("style=dashed") != std::string::npos);
}

TEST_CASE("AUT export matches the published indexing") {
    SymbolicLts l = build_parking();
    std::string aut = emit_aut(l);
    CHECK(aut.substr(0, aut.find('\n')) == "des (1, 4, 3)");
    CHECK(aut.find("(1, \"entrer [NbVoit<NbPlaces]\", 2)") != std::string::npos);
    CHECK(aut.find("(0, \"controler_sortie []\", 1)") != std::string::npos);
}

TEST_CASE("hierarchical AUT flattens to the concrete level") {
    SymbolicLts l = build_parking_r1();
    std::string aut = emit_aut(l);
    CHECK(aut.substr(0, aut.find('\n')) == "des (0, 7, 5)");
}

TEST_CASE("degenerate AUT outputs") {
    SymbolicLts l;
    l.machine_name = "one";
    l.states.push_back({"S0", Pred::truth(), std::nullopt, StateLevel::Abstract, false});
    CHECK(emit_aut(l) == "des (0, 0, 1)\n");

    l.initial.push_back({"S0", Pred::truth()});
    l.initial.push_back({"S0", Pred::truth()});
    CHECK_THROWS_AS(emit_aut(l), MultipleInitial);
    CHECK(emit_aut(l, /*allow_multiple_initial=*/true) == "des (0, 0, 1)\n");
}

TEST_CASE("build report lists verdicts per obligation") {
    BuildReport rep;
    build_parking(&rep);
    std::string text = to_string(rep);
    CHECK(text.find("PO cover cover Valid simplifier") != std::string::npos);
    CHECK(text.find("PO alw_C1_controler_entree enabled_always Valid") != std::string::npos);
    CHECK(text.find("PO nev_Cm1_entrer enabled_never Valid") != std::string::npos);
    CHECK(text.find("Invalid enumeration {") != std::string::npos); // cex is printed
}
