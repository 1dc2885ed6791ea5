// Acceptance gate: one pass/fail line per criterion, nonzero exit on failure.
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <vector>

#include "genesys/lts.hpp"
#include "genesys/oracle.hpp"

namespace fs = std::filesystem;
using namespace genesys;
using Clock = std::chrono::steady_clock;

namespace {

int failures = 0;

void report(int n, const std::string& what, bool ok, const std::string& detail = "") {
    std::cout << (ok ? "PASS" : "FAIL") << " criterion-" << n << " " << what;
    if (!ok && !detail.empty()) std::cout << " (" << detail << ")";
    std::cout << std::endl;
    if (!ok) ++failures;
}

std::string data(const std::string& rel) { return std::string(GENESYS_DATA_DIR) + "/" + rel; }

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

struct CliResult {
    int exit_code;
    std::string output; // stdout + stderr
};

CliResult run_cli(const std::string& args) {
    std::string cmd = std::string(GENESYS_CLI_PATH) + " " + args + " 2>&1";
    FILE* pipe = popen(cmd.c_str(), "r");
    if (!pipe) return {-1, "popen failed"};
    std::string out;
    char buf[4096];
    while (std::size_t n = fread(buf, 1, sizeof buf, pipe)) out.append(buf, n);
    int status = pclose(pipe);
    return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

ProverConfig bounded() {
    ProverConfig cfg;
    cfg.constant_bounds["NbPlaces"] = {1, 2, 3};
    cfg.require_bounds = true;
    return cfg;
}

MachineModel load(const std::string& rel) { return parse(slurp(data(rel))); }

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

// ---------------------------------------------------------------------------

void criterion1(const fs::path& dir) {
    auto t0 = Clock::now();
    CliResult r = run_cli("generate " + data("parking.mch") + " --bound NbPlaces=1..3 --out " +
                          (dir / "c1").string());
    double dt = seconds_since(t0);
    bool ok = r.exit_code == 0 && dt < 5.0 &&
              slurp((dir / "c1" / "parking.lts").string()) == slurp(data("golden/parking.lts"));
    report(1, "flat parking LTS matches the golden intermediate file", ok,
           "exit " + std::to_string(r.exit_code) + ", " + std::to_string(dt) + "s");
}

void criterion2(const fs::path& dir) {
    auto t0 = Clock::now();
    CliResult r = run_cli("refine " + data("parking_r1.ref") + " --abstract " +
                          data("parking.mch") + " --bound NbPlaces=1..3 --out " +
                          (dir / "c2").string());
    double dt = seconds_since(t0);
    bool ok = r.exit_code == 0 && dt < 10.0 &&
              slurp((dir / "c2" / "parking_r1.lts").string()) ==
                  slurp(data("golden/parking_r1.lts"));
    report(2, "hierarchical parking_r1 LTS matches the golden file", ok,
           "exit " + std::to_string(r.exit_code) + ", " + std::to_string(dt) + "s");
}

void criterion3() {
    auto t0 = Clock::now();
    bool ok = true;
    std::string detail;

    MachineModel flat = load("parking.mch");
    SymbolicLts flat_lts = build(flat, bounded());
    MachineModel abs = load("parking.mch");
    LinkedPair pair = resolve_refinement(load("parking_r1.ref"), abs);
    MachineModel eff = pair.concrete;
    eff.invariant = Pred::conj(abs.invariant, pair.concrete.invariant);
    SymbolicLts abs_lts = build(abs, bounded());
    SymbolicLts hier_lts = build_refined(pair, abs_lts, bounded());

    struct Case {
        const MachineModel* m;
        const SymbolicLts* l;
        const char* tag;
    } cases[] = {{&flat, &flat_lts, "parking"}, {&eff, &hier_lts, "parking_r1"}};

    for (const auto& c : cases) {
        std::vector<bool> witnessed(c.l->leaf_transitions().size(), false);
        for (long nbp = 1; nbp <= 3; ++nbp) {
            ExplicitLts x = explore(*c.m, {{"NbPlaces", nbp}});
            ConformanceReport rep = conformance(x, *c.l, *c.m);
            if (!rep.ok()) {
                ok = false;
                detail = std::string(c.tag) + " unsound at NbPlaces=" + std::to_string(nbp);
            }
            for (std::size_t i = 0; i < witnessed.size(); ++i)
                if (rep.witnessed[i]) witnessed[i] = true;
        }
        for (std::size_t i = 0; i < witnessed.size(); ++i)
            if (!witnessed[i]) {
                ok = false;
                detail = std::string(c.tag) + " transition " + std::to_string(i) +
                         " never witnessed";
            }
    }
    double dt = seconds_since(t0);
    if (dt >= 10.0) {
        ok = false;
        detail = std::to_string(dt) + "s";
    }
    report(3, "trace conformance sound and fully witnessed for NbPlaces 1..3", ok, detail);
}

// Small independent generator mirroring the one in the unit suite.
struct Gen {
    std::mt19937 rng{7151};
    long pick(long n) { return std::uniform_int_distribution<long>(0, n - 1)(rng); }
    ExprPtr expr(const std::string& v) {
        switch (pick(4)) {
        case 0: return Expr::int_lit(pick(4));
        case 1: return Expr::ident(v);
        case 2: return Expr::add(expr(v), expr(v));
        default: return Expr::sub(expr(v), expr(v));
        }
    }
    PredPtr cmp(const std::string& v) {
        return Pred::cmp(static_cast<CmpOp>(pick(6)), expr(v), expr(v));
    }
    SubstPtr branch(const std::string& v) {
        switch (pick(4)) {
        case 0: return Subst::assign(v, expr(v));
        case 1: return Subst::if_then(cmp(v), Subst::assign(v, expr(v)));
        case 2:
            return Subst::if_then_else(cmp(v), Subst::assign(v, expr(v)),
                                       Subst::assign(v, expr(v)));
        default: return Subst::skip();
        }
    }
    SubstPtr subst(const std::vector<std::string>& vars) {
        std::vector<SubstPtr> bs;
        for (const auto& v : vars)
            if (pick(3) > 0) bs.push_back(branch(v));
        if (bs.empty()) return Subst::skip();
        SubstPtr body = bs.size() == 1 ? bs[0] : Subst::parallel(bs);
        if (pick(4) == 0) return Subst::select(cmp(vars[pick(vars.size())]), body);
        return body;
    }
    PredPtr pred(const std::vector<std::string>& vars, int depth) {
        if (depth == 0 || pick(3) == 0) return cmp(vars[pick(vars.size())]);
        switch (pick(4)) {
        case 0: return Pred::conj(pred(vars, depth - 1), pred(vars, depth - 1));
        case 1: return Pred::disj(pred(vars, depth - 1), pred(vars, depth - 1));
        case 2: return Pred::negation(pred(vars, depth - 1));
        default: return Pred::implies(pred(vars, depth - 1), pred(vars, depth - 1));
        }
    }
};

void criterion4() {
    std::vector<std::string> vars{"x", "y", "z"};
    Gen gen;
    int bad = 0, total = 0;
    for (int i = 0; i < 1500; ++i) {
        SubstPtr s = gen.subst(vars);
        PredPtr post = gen.pred(vars, 2);
        PredPtr w = wp(s, post);
        Valuation v{{"x", gen.pick(4)}, {"y", gen.pick(4)}, {"z", gen.pick(4)}};
        auto after = exec(s, v);
        bool coherent = after ? evaluate(w, v) == evaluate(post, *after) : evaluate(w, v);
        if (!coherent) ++bad;
        ++total;
    }
    report(4, "wp/exec coherence on " + std::to_string(total) + " random triples",
           bad == 0 && total >= 1000, std::to_string(bad) + " discrepancies");
}

void criterion5() {
    bool ok = true;
    std::string detail;

    // exhaustive box: instantiations with NbPlaces <= 3 plus slack outside
    auto each_valuation = [](const std::set<std::string>& ids, auto&& fn) {
        std::vector<std::string> names(ids.begin(), ids.end());
        std::vector<Valuation> out{{}};
        for (const auto& n : names) {
            std::vector<Valuation> next;
            for (const auto& base : out) {
                if (n == "feu") {
                    for (const char* c : {"vert", "rouge"}) {
                        Valuation v = base;
                        v[n] = std::string(c);
                        next.push_back(v);
                    }
                } else {
                    long lo = n == "NbPlaces" ? 1 : -2;
                    long hi = n == "NbPlaces" ? 3 : 4;
                    for (long x = lo; x <= hi; ++x) {
                        Valuation v = base;
                        v[n] = x;
                        next.push_back(v);
                    }
                }
            }
            out = next;
        }
        for (const auto& v : out) fn(v);
    };

    auto audit = [&](const MachineModel& m, const std::vector<ProofObligation>& pos,
                     const char* tag) {
        Prover prover(m, bounded());
        for (const auto& po : pos) {
            bool sat_query = po.kind == PoKind::Disjoint || po.kind == PoKind::ReachExists ||
                             po.kind == PoKind::InitReach;
            if (sat_query) {
                SatResult r = prover.check_sat(po);
                if (r.status == SatStatus::Sat &&
                    !evaluate(Pred::conj(po.hypothesis, po.goal), *r.witness)) {
                    ok = false;
                    detail = std::string(tag) + " " + po.id + " bogus witness";
                }
                continue;
            }
            ProofResult r = prover.decide(po);
            if (r.verdict == Verdict::Valid) {
                std::set<std::string> ids;
                free_idents(po.hypothesis, ids);
                free_idents(po.goal, ids);
                each_valuation(ids, [&](const Valuation& v) {
                    if (evaluate(po.hypothesis, v) && !evaluate(po.goal, v)) {
                        ok = false;
                        detail = std::string(tag) + " " + po.id + " refuted at " + to_string(v);
                    }
                });
            } else if (r.verdict == Verdict::Invalid) {
                if (!r.counterexample || !evaluate(po.hypothesis, *r.counterexample) ||
                    evaluate(po.goal, *r.counterexample)) {
                    ok = false;
                    detail = std::string(tag) + " " + po.id + " bad counterexample";
                }
            }
        }
    };

    MachineModel flat = load("parking.mch");
    audit(flat, all_obligations(flat), "parking");

    MachineModel abs = load("parking.mch");
    LinkedPair pair = resolve_refinement(load("parking_r1.ref"), abs);
    MachineModel eff = pair.concrete;
    eff.invariant = Pred::conj(abs.invariant, pair.concrete.invariant);
    auto pos = all_obligations(eff);
    for (const auto& sp : eff.state_predicates)
        for (const auto& po : placement_obligations(sp, abs.state_predicates,
                                                    pair.gluing, machine_hypothesis(eff)))
            pos.push_back(po);
    audit(eff, pos, "parking_r1");

    report(5, "Valid verdicts withstand exhaustive audit; counterexamples re-evaluate", ok,
           detail);
}

void criterion6(const fs::path& dir) {
    CliResult broken = run_cli("generate " + data("parking_nocc1.mch") +
                               " --bound NbPlaces=1..3 --out " + (dir / "c6").string());
    bool cover_ok = broken.exit_code == 1 && broken.output.find("CoverFailed") != std::string::npos &&
                    broken.output.find("cc=1") != std::string::npos;

    CliResult conform = run_cli("conform " + data("parking.mch") + " --lts " +
                                data("parking_entrer_false.lts") + " --instantiate NbPlaces=1");
    bool conform_ok = conform.exit_code == 2 &&
                      conform.output.find("CHECK soundness FAIL") != std::string::npos;

    report(6, "fault injection: cover counterexample has cc=1 and conform exits 2",
           cover_ok && conform_ok,
           "cover exit " + std::to_string(broken.exit_code) + ", conform exit " +
               std::to_string(conform.exit_code));
}

void criterion7(const fs::path& dir) {
    bool ok = true;
    std::string detail;
    std::string conform_out[2];
    for (int run = 0; run < 2; ++run) {
        fs::path out = dir / ("c7_" + std::to_string(run));
        if (run_cli("generate " + data("parking.mch") + " --bound NbPlaces=1..3 --out " +
                    (out / "flat").string())
                .exit_code != 0)
            ok = false;
        if (run_cli("refine " + data("parking_r1.ref") + " --abstract " + data("parking.mch") +
                    " --bound NbPlaces=1..3 --out " + (out / "hier").string())
                .exit_code != 0)
            ok = false;
        CliResult c = run_cli("conform " + data("parking.mch") +
                              " --bound NbPlaces=1..3 --instantiate NbPlaces=2");
        if (c.exit_code != 0) ok = false;
        conform_out[run] = c.output;
    }
    if (conform_out[0] != conform_out[1]) {
        ok = false;
        detail = "conform output differs";
    }
    for (const char* rel :
         {"flat/parking.lts", "flat/parking.dot", "flat/parking.aut", "flat/parking.po.txt",
          "hier/parking_r1.lts", "hier/parking_r1.dot", "hier/parking_r1.aut",
          "hier/parking_r1.po.txt"}) {
        std::string a = slurp((dir / "c7_0" / rel).string());
        std::string b = slurp((dir / "c7_1" / rel).string());
        if (a.empty() || a != b) {
            ok = false;
            detail = std::string(rel) + " differs or is empty";
        }
    }
    report(7, "two consecutive runs are byte-identical", ok, detail);
}

} // namespace

int main() {
    fs::path dir = fs::temp_directory_path() / "genesys_acceptance";
    fs::remove_all(dir);
    fs::create_directories(dir);

    try {
        criterion1(dir);
        criterion2(dir);
        criterion3();
        criterion4();
        criterion5();
        criterion6(dir);
        criterion7(dir);
    } catch (const std::exception& e) {
        std::cout << "FAIL unexpected exception: " << e.what() << std::endl;
        ++failures;
    }

    fs::remove_all(dir);
    std::cout << (failures == 0 ? "ALL CRITERIA PASS" : "FAILURES: " + std::to_string(failures))
              << std::endl;
    return failures == 0 ? 0 : 1;
}
