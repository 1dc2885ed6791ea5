#include "genesys/lts.hpp"

#include <algorithm>
#include <sstream>

#include "genesys/logic.hpp"

namespace genesys {

const StateNode* SymbolicLts::find_state(const std::string& name) const {
    for (const auto& s : states)
        if (s.name == name) return &s;
    return nullptr;
}

bool SymbolicLts::hierarchical() const {
    return std::any_of(states.begin(), states.end(),
                       [](const StateNode& s) { return s.parent.has_value(); });
}

std::vector<const StateNode*> SymbolicLts::leaf_states() const {
    std::vector<const StateNode*> out;
    bool hier = hierarchical();
    for (const auto& s : states)
        if (!hier || s.level == StateLevel::Concrete) out.push_back(&s);
    return out;
}

std::vector<const Transition*> SymbolicLts::leaf_transitions() const {
    std::vector<const Transition*> out;
    bool hier = hierarchical();
    std::set<std::string> leaves;
    for (const auto* s : leaf_states()) leaves.insert(s->name);
    for (const auto& t : transitions)
        if (!hier || leaves.count(t.src)) out.push_back(&t);
    return out;
}

std::string to_string(const BuildReport& r) {
    std::ostringstream os;
    for (const auto& rec : r.records) {
        os << "PO " << rec.id << " " << po_kind_text(rec.kind) << " " << rec.verdict << " "
           << rec.method;
        if (rec.witness) os << " " << to_string(*rec.witness);
        os << "\n";
    }
    for (const auto& w : r.warnings) os << "WARN " << w << "\n";
    return os.str();
}

// ---------------------------------------------------------------------------
// build
// ---------------------------------------------------------------------------

namespace {

void record(BuildReport* rep, const ProofObligation& po, const ProofResult& r) {
    if (!rep) return;
    rep->records.push_back({po.id, po.kind, verdict_text(r.verdict), proof_method_text(r.method),
                            r.counterexample});
}

void record_sat(BuildReport* rep, const ProofObligation& po, const SatResult& r) {
    if (!rep) return;
    const char* txt = r.status == SatStatus::Sat     ? "Sat"
                      : r.status == SatStatus::Unsat ? "Unsat"
                                                     : "Unknown";
    rep->records.push_back({po.id, po.kind, txt, proof_method_text(r.method), r.witness});
}

// Core generation over one machine level; `level` tags the produced states.
void build_level(const MachineModel& m, const Prover& prover, StateLevel level, SymbolicLts& lts,
                 BuildReport* report, bool override_cover) {
    PredPtr hyp = machine_hypothesis(m);

    ProofObligation cover = cover_obligation(m);
    ProofResult cover_res = prover.decide(cover);
    record(report, cover, cover_res);
    if (cover_res.verdict != Verdict::Valid && !override_cover) {
        std::string detail = cover_res.counterexample
                                 ? "counterexample " + to_string(*cover_res.counterexample)
                                 : std::string("verdict ") + verdict_text(cover_res.verdict);
        throw CoverFailed(detail);
    }

    for (const auto& po : disjointness_obligations(m)) {
        SatResult r = prover.check_sat(po);
        record_sat(report, po, r);
        if (r.status != SatStatus::Unsat && report)
            report->warnings.push_back("states " + po.state + " and " + po.target +
                                       " not proven disjoint");
    }

    for (const auto& sp : m.state_predicates) {
        StateNode node{sp.name, sp.pred, std::nullopt, level, false};
        node.empty_flag = prover.check_sat(Pred::conj(hyp, sp.pred)).status == SatStatus::Unsat;
        lts.states.push_back(std::move(node));
    }

    for (const auto& src : m.state_predicates) {
        for (const auto& ev : m.events) {
            auto [po_always, po_never] = enabledness_pair(src, ev, m);
            ProofResult always = prover.decide(po_always);
            ProofResult never = prover.decide(po_never);
            record(report, po_always, always);
            record(report, po_never, never);
            if (never.verdict == Verdict::Valid) continue; // no transition at all

            for (const auto& dst : m.state_predicates) {
                auto [po_exists, po_total] = reach_obligations(src, ev, dst, m);
                SatResult exists = prover.check_sat(po_exists);
                record_sat(report, po_exists, exists);
                if (exists.status == SatStatus::Unsat) continue;
                ProofResult total = prover.decide(po_total);
                record(report, po_total, total);

                Transition t;
                t.src = src.name;
                t.event = ev.name;
                t.dst = dst.name;
                t.reduced = always.verdict == Verdict::Valid && total.verdict == Verdict::Valid;
                t.is_default = always.verdict == Verdict::Unknown ||
                               never.verdict == Verdict::Unknown ||
                               exists.status == SatStatus::Unknown ||
                               total.verdict == Verdict::Unknown;
                t.condition = t.reduced
                                  ? Pred::truth()
                                  : simplify(Pred::conj(ev.guard, wp(ev.action, dst.pred)),
                                             Pred::conj(hyp, src.pred));
                if (report && t.is_default) report->has_default = true;
                lts.transitions.push_back(std::move(t));
            }
        }
    }

    for (const auto& po : init_obligations(m)) {
        SatResult r = prover.check_sat(po);
        record_sat(report, po, r);
        if (r.status == SatStatus::Unsat) continue;
        const StatePredicate* sp = nullptr;
        for (const auto& s : m.state_predicates)
            if (s.name == po.state) sp = &s;
        PredPtr cond = simplify(wp(m.initialisation, sp->pred), m.properties);
        lts.initial.push_back({po.state, cond});
        if (report && r.status == SatStatus::Unknown) report->has_default = true;
    }
}

} // namespace

SymbolicLts build(const MachineModel& m, const ProverConfig& cfg, BuildReport* report,
                  bool override_cover) {
    SymbolicLts lts;
    lts.machine_name = m.name;
    Prover prover(m, cfg);
    build_level(m, prover, StateLevel::Abstract, lts, report, override_cover);
    return lts;
}

SymbolicLts build_refined(const LinkedPair& pair, const SymbolicLts& abstract_lts,
                          const ProverConfig& cfg, BuildReport* report, bool override_cover) {
    // The abstract invariant still holds over the kept variables; fold it into
    // the hypothesis of every concrete obligation.
    MachineModel effective = pair.concrete;
    effective.invariant = Pred::conj(pair.abstract_model->invariant, pair.concrete.invariant);

    // Placement needs pairwise-disjoint abstract states.
    Prover abs_prover(*pair.abstract_model, cfg);
    for (const auto& po : disjointness_obligations(*pair.abstract_model))
        if (abs_prover.check_sat(po).status != SatStatus::Unsat)
            throw SpecError("DisjointnessRequired",
                            "abstract states " + po.state + " and " + po.target +
                                " not proven disjoint; hierarchy placement needs disjoint states");

    SymbolicLts lts;
    lts.machine_name = effective.name;

    // Abstract level is carried over verbatim.
    for (const auto& s : abstract_lts.states) lts.states.push_back(s);
    for (const auto& t : abstract_lts.transitions) lts.transitions.push_back(t);

    // Auto-assigned state names repeat across levels; qualify clashes.
    std::set<std::string> abs_names;
    for (const auto& s : abstract_lts.states) abs_names.insert(s.name);
    for (auto& sp : effective.state_predicates)
        while (abs_names.count(sp.name)) sp.name = effective.name + "_" + sp.name;

    std::size_t first_concrete = lts.states.size();
    Prover prover(effective, cfg);
    build_level(effective, prover, StateLevel::Concrete, lts, report, override_cover);

    // Parent placement: the unique abstract state entailed by the gluing.
    std::vector<StatePredicate> abstract_states;
    for (const auto& s : abstract_lts.states) abstract_states.push_back({s.name, s.predicate});
    for (std::size_t i = first_concrete; i < lts.states.size(); ++i) {
        StateNode& node = lts.states[i];
        std::optional<std::string> parent;
        for (const auto& po : placement_obligations({node.name, node.predicate}, abstract_states,
                                                    pair.gluing, machine_hypothesis(effective))) {
            ProofResult r = prover.decide(po);
            record(report, po, r);
            if (r.verdict == Verdict::Valid) {
                if (parent) throw AmbiguousParent(node.name, *parent, po.target);
                parent = po.target;
            }
        }
        if (!parent && !node.empty_flag) throw NoParent(node.name);
        node.parent = parent;
    }

    return lts;
}

// ---------------------------------------------------------------------------
// Intermediate format
// ---------------------------------------------------------------------------

std::string emit_intermediate(const SymbolicLts& l) {
    std::ostringstream os;
    os << "LTS " << l.machine_name << "\n";
    for (const auto& s : l.states) {
        os << "STATE " << s.name;
        if (s.parent) os << " PARENT " << *s.parent;
        os << " PRED " << to_string(s.predicate);
        if (s.empty_flag) os << " EMPTY";
        os << "\n";
    }
    for (const auto& i : l.initial)
        os << "INIT " << i.state << " COND " << to_string(i.condition) << "\n";
    for (const auto& t : l.transitions) {
        os << "TRANS " << t.src << " " << t.event << " COND " << to_string(t.condition);
        if (t.reduced) os << " REDUCED";
        if (t.is_default) os << " DEFAULT";
        os << " -> " << t.dst << "\n";
    }
    return os.str();
}

namespace {

std::string strip_suffix_flag(std::string& s, const std::string& flag) {
    if (s.size() >= flag.size() + 1 && s.compare(s.size() - flag.size() - 1, flag.size() + 1,
                                                 " " + flag) == 0) {
        s.erase(s.size() - flag.size() - 1);
        return flag;
    }
    return "";
}

} // namespace

SymbolicLts parse_intermediate(const std::string& text, const MachineModel& m) {
    SymbolicLts l;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    std::set<std::string> parents_seen;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        std::istringstream ls(line);
        std::string tag;
        ls >> tag;
        if (tag == "LTS") {
            ls >> l.machine_name;
        } else if (tag == "STATE") {
            StateNode s;
            ls >> s.name;
            std::string word;
            ls >> word;
            if (word == "PARENT") {
                std::string p;
                ls >> p;
                s.parent = p;
                parents_seen.insert(p);
                ls >> word;
            }
            if (word != "PRED") throw FormatError("expected PRED", {lineno, 1});
            std::string rest;
            std::getline(ls, rest);
            if (!rest.empty() && rest.front() == ' ') rest.erase(0, 1);
            if (!strip_suffix_flag(rest, "EMPTY").empty()) s.empty_flag = true;
            s.predicate = parse_predicate(rest, m);
            l.states.push_back(std::move(s));
        } else if (tag == "INIT") {
            InitialArrow a;
            ls >> a.state;
            std::string word;
            ls >> word;
            if (word != "COND") throw FormatError("expected COND", {lineno, 1});
            std::string rest;
            std::getline(ls, rest);
            if (!rest.empty() && rest.front() == ' ') rest.erase(0, 1);
            a.condition = parse_predicate(rest, m);
            l.initial.push_back(std::move(a));
        } else if (tag == "TRANS") {
            Transition t;
            std::string word;
            ls >> t.src >> t.event >> word;
            if (word != "COND") throw FormatError("expected COND", {lineno, 1});
            std::string rest;
            std::getline(ls, rest);
            if (!rest.empty() && rest.front() == ' ') rest.erase(0, 1);
            auto arrow = rest.rfind(" -> ");
            if (arrow == std::string::npos) throw FormatError("expected '->'", {lineno, 1});
            t.dst = rest.substr(arrow + 4);
            rest.erase(arrow);
            if (!strip_suffix_flag(rest, "DEFAULT").empty()) t.is_default = true;
            if (!strip_suffix_flag(rest, "REDUCED").empty()) t.reduced = true;
            t.condition = parse_predicate(rest, m);
            l.transitions.push_back(std::move(t));
        } else {
            throw FormatError("unknown record '" + tag + "'", {lineno, 1});
        }
    }
    for (auto& s : l.states)
        s.level = s.parent ? StateLevel::Concrete
                           : (parents_seen.count(s.name) ? StateLevel::Abstract
                                                         : StateLevel::Abstract);
    if (!parents_seen.empty()) {
        // states without parent that are not parents themselves stay abstract;
        // the leaf view keys on Concrete level
        for (auto& s : l.states)
            if (s.parent) s.level = StateLevel::Concrete;
    }
    for (const auto& t : l.transitions)
        if (!l.find_state(t.src) || !l.find_state(t.dst))
            throw FormatError("transition references unknown state " + t.src + " or " + t.dst);
    for (const auto& i : l.initial)
        if (!l.find_state(i.state)) throw FormatError("initial references unknown state " + i.state);
    return l;
}

bool equal(const SymbolicLts& a, const SymbolicLts& b) {
    if (a.machine_name != b.machine_name || a.states.size() != b.states.size() ||
        a.initial.size() != b.initial.size() || a.transitions.size() != b.transitions.size())
        return false;
    for (std::size_t i = 0; i < a.states.size(); ++i) {
        const auto &x = a.states[i], &y = b.states[i];
        if (x.name != y.name || x.parent != y.parent || x.empty_flag != y.empty_flag ||
            !equal(x.predicate, y.predicate))
            return false;
    }
    for (std::size_t i = 0; i < a.initial.size(); ++i)
        if (a.initial[i].state != b.initial[i].state ||
            !equal(a.initial[i].condition, b.initial[i].condition))
            return false;
    for (std::size_t i = 0; i < a.transitions.size(); ++i) {
        const auto &x = a.transitions[i], &y = b.transitions[i];
        if (x.src != y.src || x.event != y.event || x.dst != y.dst || x.reduced != y.reduced ||
            x.is_default != y.is_default || !equal(x.condition, y.condition))
            return false;
    }
    return true;
}

// ---------------------------------------------------------------------------
// DOT
// ---------------------------------------------------------------------------

namespace {

std::string dot_escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        if (c == '"' || c == '\\') out += '\\';
        out += c;
    }
    return out;
}

std::string edge_label(const Transition& t) {
    if (t.reduced) return t.event + " []";
    return t.event + " [" + to_string(t.condition) + "]";
}

} // namespace

std::string emit_dot(const SymbolicLts& l) {
    std::ostringstream os;
    os << "digraph \"" << dot_escape(l.machine_name) << "\" {\n";
    os << "  rankdir=LR;\n  compound=true;\n";
    os << "  node [shape=ellipse];\n";

    std::map<std::string, std::vector<const StateNode*>> children;
    std::vector<const StateNode*> top;
    for (const auto& s : l.states) {
        if (s.parent)
            children[*s.parent].push_back(&s);
        else
            top.push_back(&s);
    }

    auto node_line = [&](const StateNode& s, const std::string& indent) {
        os << indent << "\"" << dot_escape(s.name) << "\" [label=\"" << dot_escape(s.name) << "\\n"
           << dot_escape(to_string(s.predicate)) << "\"";
        if (s.empty_flag) os << ", style=filled, fillcolor=grey, fontcolor=white";
        os << "];\n";
    };

    // representative concrete node per cluster, for compound edges
    std::map<std::string, std::string> rep;
    for (const auto* s : top) {
        auto it = children.find(s->name);
        if (it == children.end()) {
            node_line(*s, "  ");
        } else {
            os << "  subgraph \"cluster_" << dot_escape(s->name) << "\" {\n";
            os << "    label=\"" << dot_escape(s->name) << "\\n"
               << dot_escape(to_string(s->predicate)) << "\";\n";
            for (const auto* c : it->second) node_line(*c, "    ");
            os << "  }\n";
            rep[s->name] = it->second.front()->name;
        }
    }

    for (std::size_t i = 0; i < l.initial.size(); ++i) {
        const auto& init = l.initial[i];
        std::string src = "__init" + std::to_string(i);
        os << "  \"" << src << "\" [shape=point, label=\"\"];\n";
        std::string dst = init.state;
        std::string attrs;
        if (rep.count(dst)) {
            attrs = ", lhead=\"cluster_" + dot_escape(dst) + "\"";
            dst = rep[dst];
        }
        os << "  \"" << src << "\" -> \"" << dot_escape(dst) << "\"";
        if (init.condition->kind != Pred::Kind::True)
            os << " [label=\"[" << dot_escape(to_string(init.condition)) << "]\"" << attrs << "]";
        else if (!attrs.empty())
            os << " [" << attrs.substr(2) << "]";
        os << ";\n";
    }

    for (const auto& t : l.transitions) {
        std::string src = t.src, dst = t.dst;
        std::string extra;
        if (rep.count(src)) {
            extra += ", ltail=\"cluster_" + dot_escape(src) + "\"";
            src = rep[src];
        }
        if (rep.count(dst)) {
            extra += ", lhead=\"cluster_" + dot_escape(dst) + "\"";
            dst = rep[dst];
        }
        os << "  \"" << dot_escape(src) << "\" -> \"" << dot_escape(dst) << "\" [label=\""
           << dot_escape(edge_label(t)) << "\"";
        if (t.is_default) os << ", style=dashed";
        os << extra << "];\n";
    }

    os << "}\n";
    return os.str();
}

// ---------------------------------------------------------------------------
// AUT (Aldebaran)
// ---------------------------------------------------------------------------

std::string emit_aut(const SymbolicLts& l, bool allow_multiple_initial) {
    auto leaves = l.leaf_states();
    auto trans = l.leaf_transitions();

    std::map<std::string, std::size_t> index;
    for (std::size_t i = 0; i < leaves.size(); ++i) index[leaves[i]->name] = i;

    std::vector<std::size_t> init_indices;
    for (const auto& i : l.initial)
        if (index.count(i.state)) init_indices.push_back(index.at(i.state));
    if (init_indices.size() > 1 && !allow_multiple_initial)
        throw MultipleInitial(static_cast<int>(init_indices.size()));

    std::size_t i0 = init_indices.empty() ? 0 : init_indices.front();
    std::ostringstream os;
    os << "des (" << i0 << ", " << trans.size() << ", " << leaves.size() << ")\n";
    for (const auto* t : trans)
        os << "(" << index.at(t->src) << ", \"" << edge_label(*t) << "\", " << index.at(t->dst)
           << ")\n";
    return os.str();
}

} // namespace genesys
