#include <vector>

#include "genesys/errors.hpp"
#include "genesys/logic.hpp"

namespace genesys {

namespace {

// Linear form over identifiers: sum(coef[x] * x) + cst, interpreted as >= 0
// when used as a fact or goal.
struct Lin {
    std::map<std::string, long> coef;
    long cst = 0;

    Lin& operator-=(const Lin& o) {
        for (const auto& [k, c] : o.coef) {
            coef[k] -= c;
            if (coef[k] == 0) coef.erase(k);
        }
        cst -= o.cst;
        return *this;
    }

    bool constant() const { return coef.empty(); }
};

std::optional<Lin> linearize(const ExprPtr& e) {
    switch (e->kind) {
    case Expr::Kind::IntLit: return Lin{{}, e->value};
    case Expr::Kind::Ident: return Lin{{{e->name, 1}}, 0};
    case Expr::Kind::EnumLit: return std::nullopt;
    case Expr::Kind::Add:
    case Expr::Kind::Sub: {
        auto a = linearize(e->lhs);
        auto b = linearize(e->rhs);
        if (!a || !b) return std::nullopt;
        if (e->kind == Expr::Kind::Sub) {
            Lin r = *a;
            r -= *b;
            return r;
        }
        Lin r = *a;
        for (const auto& [k, c] : b->coef) {
            r.coef[k] += c;
            if (r.coef[k] == 0) r.coef.erase(k);
        }
        r.cst += b->cst;
        return r;
    }
    }
    return std::nullopt;
}

// lhs - rhs as a linear form
std::optional<Lin> lin_diff(const ExprPtr& a, const ExprPtr& b) {
    auto la = linearize(a);
    auto lb = linearize(b);
    if (!la || !lb) return std::nullopt;
    Lin r = *la;
    r -= *lb;
    return r;
}

struct Facts {
    std::map<std::string, ExprPtr> bindings; // ident -> IntLit / EnumLit
    std::vector<Lin> lin;                    // each means "expr >= 0"
    std::vector<PredPtr> atoms;              // known-true atoms, structural
};

class Simplifier {
public:
    PredPtr run(const PredPtr& p, const PredPtr& context) {
        Facts f;
        gather(context, f);
        return simp(p, f);
    }

private:
    // ---- fact gathering --------------------------------------------------

    void gather(const PredPtr& p, Facts& f) {
        std::vector<PredPtr> pending;
        collect(p, f, pending);
        bool changed = true;
        while (changed && !pending.empty()) {
            changed = false;
            std::vector<PredPtr> still;
            for (const auto& imp : pending) {
                if (entails_true(imp->p1, f)) {
                    collect(imp->p2, f, still);
                    changed = true;
                } else {
                    still.push_back(imp);
                }
            }
            pending.swap(still);
        }
    }

    void collect(const PredPtr& p, Facts& f, std::vector<PredPtr>& pending) {
        if (!p) return;
        switch (p->kind) {
        case Pred::Kind::True:
        case Pred::Kind::False: return;
        case Pred::Kind::And:
            collect(p->p1, f, pending);
            collect(p->p2, f, pending);
            return;
        case Pred::Kind::Implies: pending.push_back(p); return;
        case Pred::Kind::Or: return; // disjunctive knowledge not tracked
        case Pred::Kind::Not:
            if (p->p1->kind == Pred::Kind::Cmp)
                add_atom(Pred::cmp(negate_op(p->p1->op), p->p1->e1, p->p1->e2), f);
            return;
        default: add_atom(p, f); return;
        }
    }

    void add_atom(const PredPtr& a, Facts& f) {
        f.atoms.push_back(a);
        switch (a->kind) {
        case Pred::Kind::Cmp: {
            if (a->op == CmpOp::Eq) {
                auto bind = [&](const ExprPtr& x, const ExprPtr& v) {
                    if (x->kind == Expr::Kind::Ident &&
                        (v->kind == Expr::Kind::IntLit || v->kind == Expr::Kind::EnumLit))
                        f.bindings.emplace(x->name, v);
                };
                bind(a->e1, a->e2);
                bind(a->e2, a->e1);
            }
            auto d = lin_diff(a->e1, a->e2); // e1 - e2
            if (!d) return;
            Lin neg;
            neg -= *d;
            switch (a->op) {
            case CmpOp::Eq:
                f.lin.push_back(*d);
                f.lin.push_back(neg);
                break;
            case CmpOp::Ge: f.lin.push_back(*d); break;
            case CmpOp::Le: f.lin.push_back(neg); break;
            case CmpOp::Gt: {
                Lin g = *d;
                g.cst -= 1;
                f.lin.push_back(g);
                break;
            }
            case CmpOp::Lt: {
                Lin g = neg;
                g.cst -= 1;
                f.lin.push_back(g);
                break;
            }
            case CmpOp::Ne: break; // handled structurally
            }
            return;
        }
        case Pred::Kind::InInterval: {
            if (auto d = lin_diff(a->e1, a->e2)) f.lin.push_back(*d); // e1 - lo >= 0
            if (auto d = lin_diff(a->e3, a->e1)) f.lin.push_back(*d); // hi - e1 >= 0
            return;
        }
        case Pred::Kind::InNat:
            if (auto l = linearize(a->e1)) f.lin.push_back(*l);
            return;
        default: return;
        }
    }

    // ---- entailment ------------------------------------------------------

    bool entails_lin(const Lin& goal, const Facts& f) const {
        if (goal.constant()) return goal.cst >= 0;
        for (const auto& k : f.lin) {
            Lin d = goal;
            d -= k;
            if (d.constant() && d.cst >= 0) return true;
        }
        for (std::size_t i = 0; i < f.lin.size(); ++i)
            for (std::size_t j = i + 1; j < f.lin.size(); ++j) {
                Lin d = goal;
                d -= f.lin[i];
                d -= f.lin[j];
                if (d.constant() && d.cst >= 0) return true;
            }
        return false;
    }

    bool entails_cmp(CmpOp op, const ExprPtr& a, const ExprPtr& b, const Facts& f) const {
        auto d = lin_diff(a, b);
        if (!d) return false;
        Lin neg;
        neg -= *d;
        switch (op) {
        case CmpOp::Eq: return entails_lin(*d, f) && entails_lin(neg, f);
        case CmpOp::Ge: return entails_lin(*d, f);
        case CmpOp::Le: return entails_lin(neg, f);
        case CmpOp::Gt: {
            Lin g = *d;
            g.cst -= 1;
            return entails_lin(g, f);
        }
        case CmpOp::Lt: {
            Lin g = neg;
            g.cst -= 1;
            return entails_lin(g, f);
        }
        case CmpOp::Ne: {
            Lin lt = neg, gt = *d;
            lt.cst -= 1;
            gt.cst -= 1;
            return entails_lin(lt, f) || entails_lin(gt, f);
        }
        }
        return false;
    }

    // Fold an atom to a constant using literal bindings, when ground.
    std::optional<bool> ground_fold(const PredPtr& a, const Facts& f) const {
        PredPtr s = substitute(a, f.bindings);
        if (!free_idents(s).empty()) return std::nullopt;
        try {
            return evaluate(s, {});
        } catch (const SpecError&) {
            return std::nullopt;
        }
    }

    bool entails_true(const PredPtr& p, const Facts& f) const {
        switch (p->kind) {
        case Pred::Kind::True: return true;
        case Pred::Kind::False: return false;
        case Pred::Kind::And: return entails_true(p->p1, f) && entails_true(p->p2, f);
        case Pred::Kind::Or: return entails_true(p->p1, f) || entails_true(p->p2, f);
        case Pred::Kind::Not: return entails_false(p->p1, f);
        case Pred::Kind::Implies:
            return entails_false(p->p1, f) || entails_true(p->p2, f);
        default: break;
        }
        if (auto g = ground_fold(p, f)) return *g;
        for (const auto& a : f.atoms)
            if (equal(a, p)) return true;
        switch (p->kind) {
        case Pred::Kind::Cmp: return entails_cmp(p->op, p->e1, p->e2, f);
        case Pred::Kind::InInterval:
            return entails_cmp(CmpOp::Ge, p->e1, p->e2, f) &&
                   entails_cmp(CmpOp::Le, p->e1, p->e3, f);
        case Pred::Kind::InNat:
            return entails_cmp(CmpOp::Ge, p->e1, Expr::int_lit(0), f);
        case Pred::Kind::InSet: return true; // tautological for well-sorted input
        default: return false;
        }
    }

    bool entails_false(const PredPtr& p, const Facts& f) const {
        switch (p->kind) {
        case Pred::Kind::True: return false;
        case Pred::Kind::False: return true;
        case Pred::Kind::And: return entails_false(p->p1, f) || entails_false(p->p2, f);
        case Pred::Kind::Or: return entails_false(p->p1, f) && entails_false(p->p2, f);
        case Pred::Kind::Not: return entails_true(p->p1, f);
        case Pred::Kind::Implies:
            return entails_true(p->p1, f) && entails_false(p->p2, f);
        default: break;
        }
        if (auto g = ground_fold(p, f)) return !*g;
        switch (p->kind) {
        case Pred::Kind::Cmp:
            if (entails_cmp(negate_op(p->op), p->e1, p->e2, f)) return true;
            for (const auto& a : f.atoms)
                if (a->kind == Pred::Kind::Cmp && a->op == negate_op(p->op) &&
                    equal(a->e1, p->e1) && equal(a->e2, p->e2))
                    return true;
            return false;
        case Pred::Kind::InInterval:
            return entails_cmp(CmpOp::Lt, p->e1, p->e2, f) ||
                   entails_cmp(CmpOp::Gt, p->e1, p->e3, f);
        case Pred::Kind::InNat:
            return entails_cmp(CmpOp::Lt, p->e1, Expr::int_lit(0), f);
        default: return false;
        }
    }

    // ---- recursive simplification ---------------------------------------

    PredPtr finish_atom(const PredPtr& a, const Facts& f) const {
        if (a->kind == Pred::Kind::InSet) return Pred::truth();
        if (auto g = ground_fold(a, f)) return *g ? Pred::truth() : Pred::falsity();
        if (entails_true(a, f)) return Pred::truth();
        if (entails_false(a, f)) return Pred::falsity();
        if (a->kind == Pred::Kind::Cmp) {
            // sharpen inequalities against interval knowledge
            if (a->op == CmpOp::Ne) {
                if (entails_cmp(CmpOp::Le, a->e1, a->e2, f))
                    return finish_atom(Pred::cmp(CmpOp::Lt, a->e1, a->e2), f);
                if (entails_cmp(CmpOp::Ge, a->e1, a->e2, f))
                    return finish_atom(Pred::cmp(CmpOp::Gt, a->e1, a->e2), f);
            } else if (a->op == CmpOp::Ge) {
                if (entails_cmp(CmpOp::Le, a->e1, a->e2, f))
                    return finish_atom(Pred::cmp(CmpOp::Eq, a->e1, a->e2), f);
            } else if (a->op == CmpOp::Le) {
                if (entails_cmp(CmpOp::Ge, a->e1, a->e2, f))
                    return finish_atom(Pred::cmp(CmpOp::Eq, a->e1, a->e2), f);
            }
        }
        return a;
    }

    PredPtr simp(const PredPtr& p, const Facts& f) {
        switch (p->kind) {
        case Pred::Kind::True:
        case Pred::Kind::False: return p;
        case Pred::Kind::And: {
            PredPtr a = simp(p->p1, f);
            if (a->kind == Pred::Kind::False) return Pred::falsity();
            Facts f2 = f;
            gather(a, f2);
            PredPtr b = simp(p->p2, f2);
            return Pred::conj(a, b);
        }
        case Pred::Kind::Or: {
            PredPtr a = simp(p->p1, f);
            if (a->kind == Pred::Kind::True) return Pred::truth();
            PredPtr b = simp(p->p2, f);
            return Pred::disj(a, b);
        }
        case Pred::Kind::Not: {
            PredPtr x = simp(p->p1, f);
            if (x->kind == Pred::Kind::True) return Pred::falsity();
            if (x->kind == Pred::Kind::False) return Pred::truth();
            if (x->kind == Pred::Kind::Cmp)
                return finish_atom(Pred::cmp(negate_op(x->op), x->e1, x->e2), f);
            if (x->kind == Pred::Kind::Not) return x->p1;
            return Pred::negation(x);
        }
        case Pred::Kind::Implies: {
            PredPtr a = simp(p->p1, f);
            if (a->kind == Pred::Kind::False) return Pred::truth();
            if (a->kind == Pred::Kind::True) return simp(p->p2, f);
            Facts f2 = f;
            gather(a, f2);
            PredPtr b = simp(p->p2, f2);
            if (b->kind == Pred::Kind::True) return Pred::truth();
            if (b->kind == Pred::Kind::False) return simp(Pred::negation(a), f);
            return Pred::implies(a, b);
        }
        default: return finish_atom(p, f);
        }
    }
};

} // namespace

PredPtr simplify(const PredPtr& p, const PredPtr& context) {
    return Simplifier().run(p, context);
}

} // namespace genesys
