#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "genesys/lts.hpp"
#include "genesys/oracle.hpp"

namespace py = pybind11;
using namespace genesys;

namespace {

ProverConfig config_from(const py::dict& bounds, const py::dict& instantiate) {
    ProverConfig cfg;
    for (auto item : bounds) {
        auto name = item.first.cast<std::string>();
        auto range = item.second.cast<std::pair<long, long>>();
        std::vector<long> vals;
        for (long v = range.first; v <= range.second; ++v) vals.push_back(v);
        cfg.constant_bounds[name] = vals;
        cfg.variable_bounds[name] = range;
    }
    for (auto item : instantiate)
        cfg.constant_bounds[item.first.cast<std::string>()] = {item.second.cast<long>()};
    cfg.require_bounds = cfg.has_bounds();
    return cfg;
}

Valuation valuation_from(const py::dict& d) {
    Valuation v;
    for (auto item : d) {
        if (py::isinstance<py::int_>(item.second))
            v[item.first.cast<std::string>()] = item.second.cast<long>();
        else
            v[item.first.cast<std::string>()] = item.second.cast<std::string>();
    }
    return v;
}

py::dict outputs_of(const SymbolicLts& lts, const BuildReport& report) {
    py::dict out;
    out["name"] = lts.machine_name;
    out["intermediate"] = emit_intermediate(lts);
    out["dot"] = emit_dot(lts);
    out["aut"] = emit_aut(lts, true);
    out["report"] = to_string(report);
    out["states"] = static_cast<long>(lts.states.size());
    out["transitions"] = static_cast<long>(lts.transitions.size());
    return out;
}

} // namespace

PYBIND11_MODULE(_genesys, mod) {
    mod.doc() = "symbolic LTS generation from event-style B machines";

    py::register_exception<SpecError>(mod, "SpecError");

    mod.def(
        "generate",
        [](const std::string& source, const py::dict& bounds) {
            MachineModel m = parse(source);
            BuildReport report;
            SymbolicLts lts = build(m, config_from(bounds, py::dict()), &report);
            return outputs_of(lts, report);
        },
        py::arg("source"), py::arg("bounds") = py::dict(),
        "Build the symbolic LTS of a machine; returns the emitted formats.");

    mod.def(
        "refine",
        [](const std::string& concrete_source, const std::string& abstract_source,
           const py::dict& bounds) {
            MachineModel conc = parse(concrete_source);
            MachineModel abs = parse(abstract_source);
            LinkedPair pair = resolve_refinement(conc, abs);
            ProverConfig cfg = config_from(bounds, py::dict());
            BuildReport report;
            SymbolicLts abs_lts = build(abs, cfg, &report);
            SymbolicLts lts = build_refined(pair, abs_lts, cfg, &report);
            return outputs_of(lts, report);
        },
        py::arg("concrete_source"), py::arg("abstract_source"), py::arg("bounds") = py::dict(),
        "Build the hierarchical LTS of a refinement.");

    mod.def(
        "explore",
        [](const std::string& source, const py::dict& constants, std::size_t max_states) {
            MachineModel m = parse(source);
            ExplicitLts x = explore(m, valuation_from(constants), max_states);
            py::list nodes, edges;
            for (const auto& n : x.nodes) {
                py::dict d;
                for (const auto& [k, v] : n) {
                    if (std::holds_alternative<long>(v))
                        d[py::str(k)] = std::get<long>(v);
                    else
                        d[py::str(k)] = std::get<std::string>(v);
                }
                nodes.append(d);
            }
            for (const auto& e : x.edges)
                edges.append(py::make_tuple(e.src, e.event, e.dst));
            return py::make_tuple(nodes, edges);
        },
        py::arg("source"), py::arg("constants"), py::arg("max_states") = 100000,
        "Breadth-first exploration of one finite instantiation.");

    mod.def(
        "conform",
        [](const std::string& source, const py::dict& instantiate, const py::dict& bounds) {
            MachineModel m = parse(source);
            ProverConfig cfg = config_from(bounds, instantiate);
            SymbolicLts lts = build(m, cfg);
            ExplicitLts x = explore(m, valuation_from(instantiate));
            ConformanceReport rep = conformance(x, lts, m);
            return py::make_tuple(rep.ok(), to_string(rep));
        },
        py::arg("source"), py::arg("instantiate"), py::arg("bounds") = py::dict(),
        "Check the symbolic LTS against an explicit exploration.");

    mod.def(
        "wp",
        [](const std::string& source, const std::string& event, const std::string& post) {
            MachineModel m = parse(source);
            for (const auto& e : m.events)
                if (e.name == event)
                    return to_string(wp(e.action, parse_predicate(post, m)));
            throw SpecError("UnknownEvent", "no event named " + event);
        },
        py::arg("source"), py::arg("event"), py::arg("post"),
        "Weakest precondition of an event's action for a postcondition.");

    mod.def(
        "export_po",
        [](const std::string& source) {
            MachineModel m = parse(source);
            return emit_obligations(all_obligations(m));
        },
        py::arg("source"), "Textual proof-obligation listing for a machine.");
}
