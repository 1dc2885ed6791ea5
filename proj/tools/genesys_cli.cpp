#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "genesys/lts.hpp"
#include "genesys/oracle.hpp"

namespace fs = std::filesystem;
using namespace genesys;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitSpec = 1;
constexpr int kExitConform = 2;
constexpr int kExitIo = 3;

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot read " + path);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write " + path);
    out << content;
}

struct CommonOpts {
    std::vector<std::string> bounds;       // NAME=lo..hi
    std::vector<std::string> instantiate;  // NAME=v
    std::string out_dir = ".";
    std::vector<std::string> formats{"inter", "dot", "aut"};
    bool strict = false;
    bool override_cover = false;
    bool allow_multiple_initial = false;
};

std::pair<std::string, std::pair<long, long>> parse_bound(const std::string& s) {
    auto eq = s.find('=');
    auto dots = s.find("..");
    if (eq == std::string::npos || dots == std::string::npos || dots < eq)
        throw SpecError("BadFlag", "expected NAME=lo..hi, got " + s);
    std::string name = s.substr(0, eq);
    long lo = std::stol(s.substr(eq + 1, dots - eq - 1));
    long hi = std::stol(s.substr(dots + 2));
    return {name, {lo, hi}};
}

std::pair<std::string, long> parse_instantiation(const std::string& s) {
    auto eq = s.find('=');
    if (eq == std::string::npos) throw SpecError("BadFlag", "expected NAME=v, got " + s);
    return {s.substr(0, eq), std::stol(s.substr(eq + 1))};
}

ProverConfig make_config(const CommonOpts& o, const MachineModel& m) {
    ProverConfig cfg;
    for (const auto& b : o.bounds) {
        auto [name, range] = parse_bound(b);
        bool is_const = std::find(m.constants.begin(), m.constants.end(), name) != m.constants.end();
        if (is_const) {
            std::vector<long> vals;
            for (long v = range.first; v <= range.second; ++v) vals.push_back(v);
            cfg.constant_bounds[name] = vals;
        } else {
            cfg.variable_bounds[name] = range;
        }
    }
    for (const auto& i : o.instantiate) {
        auto [name, v] = parse_instantiation(i);
        if (!cfg.constant_bounds.count(name)) cfg.constant_bounds[name] = {v};
    }
    cfg.require_bounds = cfg.has_bounds();
    if (const char* env = std::getenv("GENESYS_TIME_BUDGET_MS"))
        cfg.time_budget = std::chrono::milliseconds(std::stol(env));
    return cfg;
}

int write_outputs(const SymbolicLts& lts, const BuildReport& report, const CommonOpts& o) {
    fs::create_directories(o.out_dir);
    std::string base = (fs::path(o.out_dir) / lts.machine_name).string();
    write_file(base + ".po.txt", to_string(report));
    for (const auto& f : o.formats) {
        if (f == "inter")
            write_file(base + ".lts", emit_intermediate(lts));
        else if (f == "dot")
            write_file(base + ".dot", emit_dot(lts));
        else if (f == "aut")
            write_file(base + ".aut", emit_aut(lts, o.allow_multiple_initial));
        else
            throw SpecError("BadFlag", "unknown format " + f);
    }
    if (o.strict) {
        bool any = false;
        for (const auto& t : lts.transitions)
            if (t.is_default) {
                if (!any) std::cerr << "strict: default transitions present:\n";
                any = true;
                std::cerr << "  " << t.src << " --" << t.event << "--> " << t.dst << "\n";
            }
        if (any) return kExitSpec;
    }
    return kExitOk;
}

int run_generate(const std::string& input, const CommonOpts& o) {
    MachineModel m = parse(read_file(input));
    ProverConfig cfg = make_config(o, m);
    BuildReport report;
    SymbolicLts lts = build(m, cfg, &report, o.override_cover);
    return write_outputs(lts, report, o);
}

int run_refine(const std::string& input, const std::string& abstract_path, const CommonOpts& o) {
    MachineModel conc = parse(read_file(input));
    MachineModel abs = parse(read_file(abstract_path));
    LinkedPair pair = resolve_refinement(conc, abs);
    ProverConfig cfg = make_config(o, pair.concrete);
    BuildReport abs_report;
    SymbolicLts abs_lts = build(abs, cfg, &abs_report, o.override_cover);
    BuildReport report;
    report.records = abs_report.records;
    SymbolicLts lts = build_refined(pair, abs_lts, cfg, &report, o.override_cover);
    return write_outputs(lts, report, o);
}

int run_conform(const std::string& input, const std::string& abstract_path,
                const std::string& lts_path, std::size_t max_states, const CommonOpts& o) {
    MachineModel m = parse(read_file(input));
    MachineModel machine_for_run = m;
    SymbolicLts lts;
    ProverConfig cfg;

    if (!abstract_path.empty()) {
        MachineModel abs = parse(read_file(abstract_path));
        LinkedPair pair = resolve_refinement(m, abs);
        machine_for_run = pair.concrete;
        machine_for_run.invariant = Pred::conj(abs.invariant, pair.concrete.invariant);
        cfg = make_config(o, machine_for_run);
        if (lts_path.empty()) {
            SymbolicLts abs_lts = build(abs, cfg, nullptr, o.override_cover);
            lts = build_refined(pair, abs_lts, cfg, nullptr, o.override_cover);
        }
    } else {
        cfg = make_config(o, m);
        if (lts_path.empty()) lts = build(m, cfg, nullptr, o.override_cover);
    }
    if (!lts_path.empty()) lts = parse_intermediate(read_file(lts_path), machine_for_run);

    Valuation constants;
    for (const auto& i : o.instantiate) {
        auto [name, v] = parse_instantiation(i);
        constants[name] = v;
    }
    ExplicitLts x = explore(machine_for_run, constants, max_states);
    ConformanceReport rep = conformance(x, lts, machine_for_run);
    std::cout << to_string(rep);
    return rep.ok() ? kExitOk : kExitConform;
}

int run_export_po(const std::string& input, const std::string& abstract_path,
                  const CommonOpts& o) {
    MachineModel m = parse(read_file(input));
    MachineModel effective = m;
    if (!abstract_path.empty()) {
        MachineModel abs = parse(read_file(abstract_path));
        LinkedPair pair = resolve_refinement(m, abs);
        effective = pair.concrete;
        effective.invariant = Pred::conj(abs.invariant, pair.concrete.invariant);
    }
    fs::create_directories(o.out_dir);
    auto pos = all_obligations(effective);
    for (const auto& po : pos) export_obligation(po, effective, o.out_dir);
    write_file((fs::path(o.out_dir) / (effective.name + ".po.obl")).string(),
               emit_obligations(pos));
    std::cout << "exported " << pos.size() << " obligations to " << o.out_dir << "\n";
    return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"symbolic labeled transition systems from event-style B machines"};
    app.require_subcommand(1);

    CommonOpts opts;
    std::string input, abstract_path, lts_path;
    std::size_t max_states = 100000;

    auto add_common = [&](CLI::App* sub, bool with_formats) {
        sub->add_option("input", input, "machine (.mch) or refinement (.ref) file")->required();
        sub->add_option("--bound", opts.bounds, "finite bound NAME=lo..hi for the prover");
        sub->add_option("--out", opts.out_dir, "output directory");
        sub->add_flag("--override-cover", opts.override_cover,
                      "continue even when the cover obligation is not proven");
        if (with_formats) {
            sub->add_option("--format", opts.formats, "output formats (inter,dot,aut)")
                ->delimiter(',');
            sub->add_flag("--strict", opts.strict, "fail when any transition is kept by default");
            sub->add_flag("--allow-multiple-initial", opts.allow_multiple_initial,
                          "permit AUT output with several initial states");
        }
    };

    auto* gen = app.add_subcommand("generate", "build the symbolic LTS of a machine");
    add_common(gen, true);

    auto* refine = app.add_subcommand("refine", "build the hierarchical LTS of a refinement");
    add_common(refine, true);
    refine->add_option("--abstract", abstract_path, "abstract machine file")->required();

    auto* conform = app.add_subcommand("conform", "check the symbolic LTS against exploration");
    add_common(conform, false);
    conform->add_option("--abstract", abstract_path, "abstract machine file (refinements)");
    conform->add_option("--instantiate", opts.instantiate, "constant instantiation NAME=v");
    conform->add_option("--lts", lts_path, "check this intermediate file instead of rebuilding");
    conform->add_option("--max-states", max_states, "exploration state limit");

    auto* expo = app.add_subcommand("export-po", "write proof obligations as SMT-LIB files");
    add_common(expo, false);
    expo->add_option("--abstract", abstract_path, "abstract machine file (refinements)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (gen->parsed()) return run_generate(input, opts);
        if (refine->parsed()) return run_refine(input, abstract_path, opts);
        if (conform->parsed())
            return run_conform(input, abstract_path, lts_path, max_states, opts);
        if (expo->parsed()) return run_export_po(input, abstract_path, opts);
    } catch (const IoError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitIo;
    } catch (const SpecError& e) {
        std::cerr << "error [" << e.kind() << "]";
        if (e.pos().line > 0) std::cerr << " at " << e.pos().line << ":" << e.pos().col;
        std::cerr << ": " << e.what() << "\n";
        return kExitSpec;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitSpec;
    }
    return kExitOk;
}
