#include "genesys/oracle.hpp"

#include <deque>
#include <map>
#include <sstream>

#include "genesys/oblige.hpp"

namespace genesys {

ExplicitLts explore(const MachineModel& m, const Valuation& constants, std::size_t max_states) {
    for (const auto& c : m.constants)
        if (!constants.count(c)) throw IncompleteValuation(c);
    if (!evaluate(m.properties, constants))
        throw SpecError("BadInstantiation", "constants do not satisfy PROPERTIES");

    // initialisation must assign every variable, starting from the constants
    std::set<std::string> assigned = written_vars(m.initialisation);
    for (const auto& v : m.variables)
        if (!assigned.count(v))
            throw SpecError("PartialInitialisation",
                            "initialisation does not assign variable " + v);

    Valuation seed = constants;
    for (const auto& v : m.variables) {
        auto it = m.sorts.find(v);
        if (it != m.sorts.end() && it->second.kind == Sort::Kind::Enum)
            seed[v] = m.set_elements(it->second.set_name)->front();
        else
            seed[v] = 0L;
    }
    auto init = exec(m.initialisation, seed);
    if (!init) throw SpecError("BlockedInitialisation", "initialisation blocked");

    ExplicitLts x;
    std::map<std::string, std::size_t> index;
    auto intern = [&](const Valuation& v, const std::string& after) -> std::size_t {
        std::string key = to_string(v);
        auto it = index.find(key);
        if (it != index.end()) return it->second;
        if (x.nodes.size() >= max_states) throw StateLimitExceeded(max_states);
        if (!evaluate(m.invariant, v)) throw InvariantViolation(key, after);
        index[key] = x.nodes.size();
        x.nodes.push_back(v);
        return x.nodes.size() - 1;
    };

    std::deque<std::size_t> frontier;
    frontier.push_back(intern(*init, "INITIALISATION"));
    while (!frontier.empty()) {
        std::size_t cur = frontier.front();
        frontier.pop_front();
        for (const auto& ev : m.events) {
            Valuation v = x.nodes[cur]; // copy: nodes vector may grow below
            if (!evaluate(ev.guard, v)) continue;
            auto next = exec(ev.action, v);
            if (!next) continue;
            std::size_t before = x.nodes.size();
            std::size_t tgt = intern(*next, ev.name);
            x.edges.push_back({cur, ev.name, tgt});
            if (tgt == before) frontier.push_back(tgt);
        }
    }
    return x;
}

std::string to_string(const ConformanceReport& r) {
    std::ostringstream os;
    for (const auto& l : r.lines) {
        const char* st = l.status == CheckStatus::Pass   ? "PASS"
                         : l.status == CheckStatus::Fail ? "FAIL"
                                                         : "WARN";
        os << "CHECK " << l.kind << " " << st << " " << l.detail << "\n";
    }
    return os.str();
}

ConformanceReport conformance(const ExplicitLts& x, const SymbolicLts& s, const MachineModel& m) {
    ConformanceReport rep;
    auto leaves = s.leaf_states();
    auto trans = s.leaf_transitions();
    rep.witnessed.assign(trans.size(), false);

    // q : valuation -> unique symbolic state
    auto q = [&](const Valuation& v) -> const StateNode* {
        const StateNode* hit = nullptr;
        for (const auto* st : leaves) {
            if (evaluate(st->predicate, v)) {
                if (hit) throw MapNotUnique(to_string(v));
                hit = st;
            }
        }
        if (!hit) throw MapNotUnique(to_string(v));
        return hit;
    };

    std::vector<const StateNode*> node_state(x.nodes.size());
    for (std::size_t i = 0; i < x.nodes.size(); ++i) node_state[i] = q(x.nodes[i]);
    rep.lines.push_back({"state_map", CheckStatus::Pass,
                         std::to_string(x.nodes.size()) + " explicit states mapped uniquely"});

    // (a) soundness: every explicit edge has a true-conditioned symbolic image
    std::size_t violations = 0;
    for (const auto& e : x.edges) {
        const std::string& src = node_state[e.src]->name;
        const std::string& dst = node_state[e.dst]->name;
        bool found = false;
        for (std::size_t ti = 0; ti < trans.size(); ++ti) {
            const Transition* t = trans[ti];
            if (t->src == src && t->dst == dst && t->event == e.event &&
                evaluate(t->condition, x.nodes[e.src])) {
                rep.witnessed[ti] = true;
                found = true;
            }
        }
        if (!found) {
            ++violations;
            rep.sound = false;
            rep.lines.push_back({"soundness", CheckStatus::Fail,
                                 "edge " + to_string(x.nodes[e.src]) + " --" + e.event + "--> " +
                                     to_string(x.nodes[e.dst]) + " has no symbolic image (" + src +
                                     " -> " + dst + ")"});
        }
    }
    if (violations == 0)
        rep.lines.push_back({"soundness", CheckStatus::Pass,
                             std::to_string(x.edges.size()) + " explicit edges covered"});

    // (b) per-instantiation coverage (informational)
    for (std::size_t ti = 0; ti < trans.size(); ++ti)
        if (!rep.witnessed[ti])
            rep.lines.push_back({"coverage", CheckStatus::Warn,
                                 "transition " + trans[ti]->src + " --" + trans[ti]->event +
                                     "--> " + trans[ti]->dst +
                                     " not witnessed by this instantiation"});

    // (c) initial consistency
    if (!x.nodes.empty()) {
        const StateNode* q0 = node_state[0];
        bool ok = false;
        for (const auto& init : s.initial)
            if (init.state == q0->name && evaluate(init.condition, x.nodes[0])) ok = true;
        if (ok) {
            rep.lines.push_back({"initial", CheckStatus::Pass, "initial state is " + q0->name});
        } else {
            rep.sound = false;
            rep.lines.push_back(
                {"initial", CheckStatus::Fail,
                 "explicit initial valuation maps to non-initial state " + q0->name});
        }
    }

    // deadlocks are reported, not flagged
    std::vector<bool> has_out(x.nodes.size(), false);
    for (const auto& e : x.edges) has_out[e.src] = true;
    for (std::size_t i = 0; i < x.nodes.size(); ++i)
        if (!has_out[i])
            rep.lines.push_back(
                {"deadlock", CheckStatus::Warn, "no enabled event at " + to_string(x.nodes[i])});

    (void)m;
    return rep;
}

} // namespace genesys
