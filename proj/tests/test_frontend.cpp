#include <doctest.h>

#include <algorithm>

#include "genesys/machine.hpp"
#include "helpers.hpp"

using namespace genesys;

namespace {

const char* kTiny = R"(
MACHINE tiny
VARIABLES x
INVARIANT x : 0..2
ASSERTIONS x = 0 or x > 0
INITIALISATION x := 0
OPERATIONS
  step = SELECT x < 2 THEN x := x + 1 END
END
)";

} // namespace

TEST_CASE("parking machine parses with its full structure") {
    MachineModel m = test::load("parking.mch");
    CHECK(m.name == "parking");
    CHECK(m.kind == MachineKind::Machine);
    CHECK(m.constants == std::vector<std::string>{"NbPlaces"});
    CHECK(m.variables == std::vector<std::string>{"NbVoit", "cc"});
    REQUIRE(m.events.size() == 4);
    CHECK(m.events[0].name == "entrer");
    CHECK(m.events[1].name == "controler_entree");
    CHECK(m.events[2].name == "sortir");
    CHECK(m.events[3].name == "controler_sortie");
    REQUIRE(m.state_predicates.size() == 3);
    CHECK(m.state_predicates[0].name == "Cm1");
    CHECK(m.state_predicates[1].name == "C0");
    CHECK(m.state_predicates[2].name == "C1");
    CHECK(to_string(m.state_predicates[0].pred) == "cc=-1");
    CHECK(m.sorts.at("cc") == Sort::integer());
    CHECK(m.sorts.at("NbPlaces") == Sort::integer());
}

TEST_CASE("unlabeled state disjuncts are auto-named S0..Sn") {
    MachineModel m = parse(kTiny);
    REQUIRE(m.state_predicates.size() == 2);
    CHECK(m.state_predicates[0].name == "S0");
    CHECK(m.state_predicates[1].name == "S1");
}

TEST_CASE("machine round-trips through to_string") {
    MachineModel m = test::load("parking.mch");
    MachineModel m2 = parse(to_string(m));
    CHECK(m2.name == m.name);
    REQUIRE(m2.events.size() == m.events.size());
    for (std::size_t i = 0; i < m.events.size(); ++i) {
        CHECK(equal(m2.events[i].guard, m.events[i].guard));
        CHECK(equal(m2.events[i].action, m.events[i].action));
    }
    CHECK(equal(m2.invariant, m.invariant));
    CHECK(equal(m2.initialisation, m.initialisation));
    REQUIRE(m2.state_predicates.size() == m.state_predicates.size());
    for (std::size_t i = 0; i < m.state_predicates.size(); ++i) {
        CHECK(m2.state_predicates[i].name == m.state_predicates[i].name);
        CHECK(equal(m2.state_predicates[i].pred, m.state_predicates[i].pred));
    }
}

TEST_CASE("refinement round-trips through to_string") {
    MachineModel m = test::load("parking_r1.ref");
    MachineModel m2 = parse(to_string(m));
    CHECK(m2.kind == MachineKind::Refinement);
    CHECK(m2.refines == m.refines);
    CHECK(m2.sets == m.sets);
    CHECK(equal(m2.invariant, m.invariant));
}

TEST_CASE("missing ASSERTIONS is rejected") {
    const char* src = R"(
MACHINE t
VARIABLES x
INVARIANT x : 0..1
INITIALISATION x := 0
OPERATIONS e = SELECT x = 0 THEN x := 1 END
END
)";
    CHECK_THROWS_AS(parse(src), MissingAssertions);
}

TEST_CASE("syntax errors carry a position") {
    try {
        parse("MACHINE t VARIABLES x INVARIANT x + ASSERTIONS x = 0\n");
        FAIL("expected SyntaxError");
    } catch (const SyntaxError& e) {
        CHECK(e.pos().line >= 1);
        CHECK(e.kind() == "SyntaxError");
    }
}

TEST_CASE("unbound identifiers are rejected in machines") {
    const char* src = R"(
MACHINE t
VARIABLES x
INVARIANT x : 0..1 & y = 0
ASSERTIONS x = 0 or x = 1
INITIALISATION x := 0
OPERATIONS e = SELECT x = 0 THEN x := 1 END
END
)";
    CHECK_THROWS_AS(parse(src), UnboundIdentifier);
}

TEST_CASE("duplicate declarations are rejected") {
    const char* src = R"(
MACHINE t
VARIABLES x, x
INVARIANT x : 0..1
ASSERTIONS x = 0 or x = 1
INITIALISATION x := 0
OPERATIONS e = SELECT x = 0 THEN x := 1 END
END
)";
    CHECK_THROWS_AS(parse(src), DuplicateIdentifier);
}

TEST_CASE("parallel write conflicts are rejected") {
    const char* src = R"(
MACHINE t
VARIABLES x
INVARIANT x : 0..1
ASSERTIONS x = 0 or x = 1
INITIALISATION x := 0
OPERATIONS e = SELECT x = 0 THEN x := 1 || x := 0 END
END
)";
    CHECK_THROWS_AS(parse(src), ParallelWriteConflict);
}

TEST_CASE("refinement resolves against its abstract machine") {
    MachineModel conc = test::load("parking_r1.ref");
    MachineModel abs = test::load("parking.mch");
    CHECK(conc.kind == MachineKind::Refinement);
    CHECK(conc.refines == std::optional<std::string>("parking"));
    // NbPlaces is not declared locally
    CHECK(std::find(conc.external_idents.begin(), conc.external_idents.end(), "NbPlaces") !=
          conc.external_idents.end());

    LinkedPair pair = resolve_refinement(conc, abs);
    CHECK(pair.concrete.constants == std::vector<std::string>{"NbPlaces"});
    CHECK(pair.concrete.sorts.at("feu") == Sort::enumerated("Couleur_feu"));
    CHECK(pair.concrete.enum_literals.at("vert") == "Couleur_feu");
    REQUIRE(pair.concrete.events.size() == 4);
    CHECK(equal(pair.gluing, conc.invariant));
}

TEST_CASE("REFINES name mismatch is rejected") {
    MachineModel conc = test::load("parking_r1.ref");
    MachineModel abs = test::load("parking.mch");
    abs.name = "other";
    CHECK_THROWS_AS(resolve_refinement(conc, abs), NameMismatch);
}

TEST_CASE("event-set mismatch between levels is rejected") {
    MachineModel conc = test::load("parking_r1.ref");
    MachineModel abs = test::load("parking.mch");
    abs.events.pop_back();
    CHECK_THROWS_AS(resolve_refinement(conc, abs), EventSetMismatch);
}

TEST_CASE("predicates parse and print without loss") {
    MachineModel m = test::load("parking.mch");
    for (const char* txt :
         {"NbVoit<NbPlaces", "cc=-1", "NbVoit:0..NbPlaces", "cc=1 => NbVoit>0",
          "NbVoit+1:0..NbPlaces", "not(cc=0) & NbVoit/=0", "cc=0 or cc=1 or cc=-1",
          "NbPlaces:NAT"}) {
        PredPtr p = parse_predicate(txt, m);
        CHECK(to_string(p) == txt);
        CHECK(equal(parse_predicate(to_string(p), m), p));
    }
}

TEST_CASE("comments and whitespace are skipped") {
    MachineModel m = parse("/* header */ MACHINE t /* mid */ VARIABLES x\n"
                           "INVARIANT x : 0..1 ASSERTIONS x = 0 or x = 1\n"
                           "INITIALISATION x := 0\n"
                           "OPERATIONS e = SELECT x = 0 THEN x := 1 END END\n");
    CHECK(m.name == "t");
    CHECK(m.events.size() == 1);
}
