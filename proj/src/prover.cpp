#include "genesys/prover.hpp"

#include <algorithm>
#include <fstream>
#include <functional>
#include <sstream>

namespace genesys {

const char* verdict_text(Verdict v) {
    switch (v) {
    case Verdict::Valid: return "Valid";
    case Verdict::Invalid: return "Invalid";
    case Verdict::Unknown: return "Unknown";
    }
    return "?";
}

const char* proof_method_text(ProofMethod m) {
    switch (m) {
    case ProofMethod::Simplifier: return "simplifier";
    case ProofMethod::Enumeration: return "enumeration";
    case ProofMethod::External: return "external";
    }
    return "?";
}

namespace {

void conjuncts_of(const PredPtr& p, std::vector<PredPtr>& out) {
    if (!p) return;
    if (p->kind == Pred::Kind::And) {
        conjuncts_of(p->p1, out);
        conjuncts_of(p->p2, out);
    } else {
        out.push_back(p);
    }
}

std::optional<long> eval_const(const ExprPtr& e, const Valuation& partial) {
    try {
        return evaluate_int(e, partial);
    } catch (const SpecError&) {
        return std::nullopt;
    }
}

constexpr long kMaxDomain = 4096;

} // namespace

struct Prover::EnumState {
    std::chrono::steady_clock::time_point deadline;
    long steps = 0;
    bool exhaustive = true;
    bool timed_out = false;
    bool missing_domain = false;
    std::string missing_ident;

    bool tick() {
        if ((++steps & 1023) == 0 && std::chrono::steady_clock::now() > deadline) {
            timed_out = true;
            exhaustive = false;
            return false;
        }
        return true;
    }
};

// Finite candidate domain for one identifier, from its enum sort, the config,
// or constant interval constraints found among the hypothesis conjuncts.
std::optional<std::vector<Value>> Prover::domain_of(const std::string& ident, const PredPtr& hyp,
                                                    const Valuation& partial, bool use_cfg) const {
    auto sit = m_.sorts.find(ident);
    if (sit != m_.sorts.end() && sit->second.kind == Sort::Kind::Enum) {
        const auto* elems = m_.set_elements(sit->second.set_name);
        if (!elems) return std::nullopt;
        std::vector<Value> d;
        for (const auto& e : *elems) d.emplace_back(e);
        return d;
    }

    auto interval_values = [](long lo, long hi) -> std::optional<std::vector<Value>> {
        if (lo > hi) return std::vector<Value>{}; // contradictory constraints
        if (hi - lo + 1 > kMaxDomain) return std::nullopt;
        std::vector<Value> d;
        for (long v = lo; v <= hi; ++v) d.emplace_back(v);
        return d;
    };

    if (use_cfg) {
        if (auto it = cfg_.constant_bounds.find(ident); it != cfg_.constant_bounds.end()) {
            std::vector<Value> d;
            for (long v : it->second) d.emplace_back(v);
            return d;
        }
        if (auto it = cfg_.variable_bounds.find(ident); it != cfg_.variable_bounds.end())
            return interval_values(it->second.first, it->second.second);
    }

    // derive from hypothesis: x : lo..hi, x <= e, e <= x, x = e
    std::vector<PredPtr> cs;
    conjuncts_of(hyp, cs);
    std::optional<long> lo, hi;
    auto meet_lo = [&](long v) { lo = lo ? std::max(*lo, v) : v; };
    auto meet_hi = [&](long v) { hi = hi ? std::min(*hi, v) : v; };
    for (const auto& c : cs) {
        if (c->kind == Pred::Kind::InInterval && c->e1->kind == Expr::Kind::Ident &&
            c->e1->name == ident) {
            if (auto v = eval_const(c->e2, partial)) meet_lo(*v);
            if (auto v = eval_const(c->e3, partial)) meet_hi(*v);
        } else if (c->kind == Pred::Kind::InNat && c->e1->kind == Expr::Kind::Ident &&
                   c->e1->name == ident) {
            meet_lo(0);
        } else if (c->kind == Pred::Kind::Cmp) {
            bool left = c->e1->kind == Expr::Kind::Ident && c->e1->name == ident;
            bool right = c->e2->kind == Expr::Kind::Ident && c->e2->name == ident;
            if (left && !right) {
                auto v = eval_const(c->e2, partial);
                if (!v) continue;
                switch (c->op) {
                case CmpOp::Eq: meet_lo(*v); meet_hi(*v); break;
                case CmpOp::Le: meet_hi(*v); break;
                case CmpOp::Lt: meet_hi(*v - 1); break;
                case CmpOp::Ge: meet_lo(*v); break;
                case CmpOp::Gt: meet_lo(*v + 1); break;
                default: break;
                }
            } else if (right && !left) {
                auto v = eval_const(c->e1, partial);
                if (!v) continue;
                switch (c->op) {
                case CmpOp::Eq: meet_lo(*v); meet_hi(*v); break;
                case CmpOp::Le: meet_lo(*v); break;
                case CmpOp::Lt: meet_lo(*v + 1); break;
                case CmpOp::Ge: meet_hi(*v); break;
                case CmpOp::Gt: meet_hi(*v - 1); break;
                default: break;
                }
            }
        }
    }
    if (lo && hi) return interval_values(*lo, *hi);
    return std::nullopt;
}

// Depth-first enumeration over the identifiers in `pending`, resolving each
// identifier's domain lazily so interval endpoints may mention identifiers
// assigned earlier. `found` returns true to stop the search.
bool Prover::enumerate(const PredPtr& hyp, std::vector<std::string> pending, Valuation& partial,
                       EnumState& st, const std::function<bool(const Valuation&)>& found) const {
    if (pending.empty()) {
        if (!st.tick()) return true;
        return found(partial);
    }
    for (std::size_t i = 0; i < pending.size(); ++i) {
        auto dom = domain_of(pending[i], hyp, partial);
        if (!dom) continue;
        std::vector<std::string> rest = pending;
        rest.erase(rest.begin() + static_cast<long>(i));
        for (const auto& v : *dom) {
            partial[pending[i]] = v;
            if (enumerate(hyp, rest, partial, st, found)) {
                partial.erase(pending[i]);
                return true;
            }
            if (st.timed_out) {
                partial.erase(pending[i]);
                st.exhaustive = false;
                return false;
            }
        }
        partial.erase(pending[i]);
        return false;
    }
    st.exhaustive = false;
    st.missing_domain = true;
    st.missing_ident = pending.front();
    return false;
}

// Exhaustive case split over identifiers whose domain is forced by the
// hypothesis itself (enum sorts, constant intervals). Sound: each branch is
// discharged by equivalence-preserving simplification only.
bool Prover::case_split_valid(const ProofObligation& po) const {
    std::set<std::string> ids;
    free_idents(po.hypothesis, ids);
    free_idents(po.goal, ids);

    std::vector<std::pair<std::string, std::vector<Value>>> splits;
    std::size_t combos = 1;
    for (const auto& id : ids) {
        // config bounds are assumptions, not theorems; never use them here
        auto sit = m_.sorts.find(id);
        std::vector<Value> dom;
        if (sit != m_.sorts.end() && sit->second.kind == Sort::Kind::Enum) {
            const auto* elems = m_.set_elements(sit->second.set_name);
            if (!elems) continue;
            for (const auto& e : *elems) dom.emplace_back(e);
        } else {
            auto d = domain_of(id, po.hypothesis, {}, /*use_cfg=*/false);
            if (!d || d->size() > 8) continue;
            dom = *d;
        }
        if (dom.empty()) continue;
        combos *= dom.size();
        if (combos > 256) return false;
        splits.emplace_back(id, std::move(dom));
    }
    if (splits.empty()) return false;

    std::vector<std::size_t> idx(splits.size(), 0);
    for (;;) {
        PredPtr binding = Pred::truth();
        for (std::size_t k = 0; k < splits.size(); ++k) {
            const Value& v = splits[k].second[idx[k]];
            ExprPtr lit = std::holds_alternative<long>(v)
                              ? Expr::int_lit(std::get<long>(v))
                              : Expr::enum_lit(std::get<std::string>(v),
                                               m_.sorts.at(splits[k].first).set_name);
            binding = Pred::conj(binding, Pred::cmp(CmpOp::Eq, Expr::ident(splits[k].first), lit));
        }
        PredPtr hyp_b = simplify(po.hypothesis, binding);
        if (hyp_b->kind != Pred::Kind::False) {
            PredPtr ctx = Pred::conj(po.hypothesis, binding);
            if (simplify(po.goal, ctx)->kind != Pred::Kind::True) return false;
        }
        std::size_t k = 0;
        while (k < splits.size() && ++idx[k] == splits[k].second.size()) idx[k++] = 0;
        if (k == splits.size()) break;
    }
    return true;
}

ProofResult Prover::decide(const ProofObligation& po) const {
    // an unsatisfiable hypothesis entails anything
    if (simplify(po.hypothesis, Pred::truth())->kind == Pred::Kind::False)
        return {Verdict::Valid, std::nullopt, ProofMethod::Simplifier};
    if (simplify(po.goal, po.hypothesis)->kind == Pred::Kind::True)
        return {Verdict::Valid, std::nullopt, ProofMethod::Simplifier};

    if (case_split_valid(po))
        return {Verdict::Valid, std::nullopt, ProofMethod::Simplifier};

    // counterexample search
    std::set<std::string> ids;
    free_idents(po.hypothesis, ids);
    free_idents(po.goal, ids);
    EnumState st{std::chrono::steady_clock::now() + cfg_.time_budget};
    Valuation partial;
    std::optional<Valuation> cex;
    enumerate(po.hypothesis, {ids.begin(), ids.end()}, partial, st, [&](const Valuation& v) {
        if (evaluate(po.hypothesis, v) && !evaluate(po.goal, v)) {
            cex = v;
            return true;
        }
        return false;
    });
    if (cex) return {Verdict::Invalid, cex, ProofMethod::Enumeration};
    if (st.missing_domain && cfg_.require_bounds) throw MissingBound(st.missing_ident);
    return {Verdict::Unknown, std::nullopt, ProofMethod::Enumeration};
}

SatResult Prover::check_sat(const PredPtr& p) const {
    PredPtr s = simplify(p, Pred::truth());
    if (s->kind == Pred::Kind::False) return {SatStatus::Unsat, std::nullopt, ProofMethod::Simplifier};

    std::set<std::string> ids = free_idents(p);
    if (s->kind == Pred::Kind::True) {
        // any total valuation works
        Valuation w;
        for (const auto& id : ids) {
            auto sit = m_.sorts.find(id);
            if (sit != m_.sorts.end() && sit->second.kind == Sort::Kind::Enum)
                w[id] = m_.set_elements(sit->second.set_name)->front();
            else
                w[id] = 0L;
        }
        return {SatStatus::Sat, w, ProofMethod::Simplifier};
    }

    EnumState st{std::chrono::steady_clock::now() + cfg_.time_budget};
    Valuation partial;
    std::optional<Valuation> witness;
    enumerate(p, {ids.begin(), ids.end()}, partial, st, [&](const Valuation& v) {
        if (evaluate(p, v)) {
            witness = v;
            return true;
        }
        return false;
    });
    if (witness) return {SatStatus::Sat, witness, ProofMethod::Enumeration};
    if (st.missing_domain && cfg_.require_bounds) throw MissingBound(st.missing_ident);
    if (st.exhaustive) return {SatStatus::Unsat, std::nullopt, ProofMethod::Enumeration};
    return {SatStatus::Unknown, std::nullopt, ProofMethod::Enumeration};
}

SatResult Prover::check_sat(const ProofObligation& po) const {
    return check_sat(Pred::conj(po.hypothesis, po.goal));
}

// ---------------------------------------------------------------------------
// SMT-LIB export
// ---------------------------------------------------------------------------

namespace {

class SmtPrinter {
public:
    SmtPrinter(const MachineModel& m) : m_(m) {}

    long enum_index(const std::string& lit, const std::string& set) const {
        const auto* elems = m_.set_elements(set);
        for (std::size_t i = 0; i < elems->size(); ++i)
            if ((*elems)[i] == lit) return static_cast<long>(i);
        return -1;
    }

    std::string expr(const ExprPtr& e) const {
        switch (e->kind) {
        case Expr::Kind::IntLit:
            return e->value < 0 ? "(- " + std::to_string(-e->value) + ")"
                                : std::to_string(e->value);
        case Expr::Kind::Ident: return e->name;
        case Expr::Kind::EnumLit: return std::to_string(enum_index(e->name, e->set_name));
        case Expr::Kind::Add: return "(+ " + expr(e->lhs) + " " + expr(e->rhs) + ")";
        case Expr::Kind::Sub: return "(- " + expr(e->lhs) + " " + expr(e->rhs) + ")";
        }
        return "?";
    }

    std::string pred(const PredPtr& p) const {
        switch (p->kind) {
        case Pred::Kind::True: return "true";
        case Pred::Kind::False: return "false";
        case Pred::Kind::Cmp: {
            std::string a = expr(p->e1), b = expr(p->e2);
            switch (p->op) {
            case CmpOp::Eq: return "(= " + a + " " + b + ")";
            case CmpOp::Ne: return "(not (= " + a + " " + b + "))";
            case CmpOp::Lt: return "(< " + a + " " + b + ")";
            case CmpOp::Le: return "(<= " + a + " " + b + ")";
            case CmpOp::Gt: return "(> " + a + " " + b + ")";
            case CmpOp::Ge: return "(>= " + a + " " + b + ")";
            }
            return "?";
        }
        case Pred::Kind::InInterval:
            return "(and (<= " + expr(p->e2) + " " + expr(p->e1) + ") (<= " + expr(p->e1) + " " +
                   expr(p->e3) + "))";
        case Pred::Kind::InSet: {
            const auto* elems = m_.set_elements(p->set_name);
            std::string x = expr(p->e1);
            return "(and (<= 0 " + x + ") (<= " + x + " " +
                   std::to_string(elems->size() - 1) + "))";
        }
        case Pred::Kind::InNat: return "(<= 0 " + expr(p->e1) + ")";
        case Pred::Kind::And: return "(and " + pred(p->p1) + " " + pred(p->p2) + ")";
        case Pred::Kind::Or: return "(or " + pred(p->p1) + " " + pred(p->p2) + ")";
        case Pred::Kind::Not: return "(not " + pred(p->p1) + ")";
        case Pred::Kind::Implies: return "(=> " + pred(p->p1) + " " + pred(p->p2) + ")";
        }
        return "?";
    }

private:
    const MachineModel& m_;
};

} // namespace

std::string export_obligation(const ProofObligation& po, const MachineModel& m,
                              const std::string& dir) {
    SmtPrinter pr(m);
    std::ostringstream os;
    os << "; obligation " << po.id << " (" << po_kind_text(po.kind) << ")\n";
    os << "; unsat <=> the obligation is valid\n";
    os << "(set-logic QF_LIA)\n";

    std::set<std::string> ids;
    free_idents(po.hypothesis, ids);
    free_idents(po.goal, ids);
    for (const auto& id : ids) {
        auto sit = m.sorts.find(id);
        if (sit != m.sorts.end() && sit->second.kind == Sort::Kind::Enum) {
            const auto* elems = m.set_elements(sit->second.set_name);
            os << "; " << id << " : " << sit->second.set_name << " (";
            for (std::size_t i = 0; i < elems->size(); ++i)
                os << (i ? ", " : "") << (*elems)[i] << "=" << i;
            os << ")\n";
            os << "(declare-const " << id << " Int)\n";
            os << "(assert (and (<= 0 " << id << ") (<= " << id << " " << elems->size() - 1
               << ")))\n";
        } else {
            os << "(declare-const " << id << " Int)\n";
        }
    }

    if (po.hypothesis->kind != Pred::Kind::True)
        os << "(assert " << pr.pred(po.hypothesis) << ")\n";
    os << "(assert (not " << pr.pred(po.goal) << "))\n";
    os << "(check-sat)\n";

    std::string path = dir + "/" + po.id + ".smt2";
    std::ofstream out(path);
    if (!out) throw IoError("cannot write " + path);
    out << os.str();
    return path;
}

} // namespace genesys
