#include "genesys/logic.hpp"

#include <sstream>

#include "genesys/errors.hpp"

namespace genesys {

std::string to_string(const Value& v) {
    if (std::holds_alternative<long>(v)) return std::to_string(std::get<long>(v));
    return std::get<std::string>(v);
}

std::string to_string(const Valuation& v) {
    std::ostringstream os;
    os << "{";
    bool first = true;
    for (const auto& [k, val] : v) {
        if (!first) os << ", ";
        first = false;
        os << k << "=" << to_string(val);
    }
    os << "}";
    return os.str();
}

// ---------------------------------------------------------------------------
// Substitution
// ---------------------------------------------------------------------------

ExprPtr substitute(const ExprPtr& e, const std::map<std::string, ExprPtr>& bindings) {
    if (!e) return e;
    switch (e->kind) {
    case Expr::Kind::IntLit:
    case Expr::Kind::EnumLit: return e;
    case Expr::Kind::Ident: {
        auto it = bindings.find(e->name);
        return it != bindings.end() ? it->second : e;
    }
    case Expr::Kind::Add: return Expr::add(substitute(e->lhs, bindings), substitute(e->rhs, bindings));
    case Expr::Kind::Sub: return Expr::sub(substitute(e->lhs, bindings), substitute(e->rhs, bindings));
    }
    return e;
}

PredPtr substitute(const PredPtr& p, const std::map<std::string, ExprPtr>& bindings) {
    if (!p) return p;
    switch (p->kind) {
    case Pred::Kind::True:
    case Pred::Kind::False: return p;
    case Pred::Kind::Cmp:
        return Pred::cmp(p->op, substitute(p->e1, bindings), substitute(p->e2, bindings));
    case Pred::Kind::InInterval:
        return Pred::in_interval(substitute(p->e1, bindings), substitute(p->e2, bindings),
                                 substitute(p->e3, bindings));
    case Pred::Kind::InSet: return Pred::in_set(substitute(p->e1, bindings), p->set_name);
    case Pred::Kind::InNat: return Pred::in_nat(substitute(p->e1, bindings));
    case Pred::Kind::And: {
        auto q = std::make_shared<Pred>();
        q->kind = Pred::Kind::And;
        q->p1 = substitute(p->p1, bindings);
        q->p2 = substitute(p->p2, bindings);
        return q;
    }
    case Pred::Kind::Or: {
        auto q = std::make_shared<Pred>();
        q->kind = Pred::Kind::Or;
        q->p1 = substitute(p->p1, bindings);
        q->p2 = substitute(p->p2, bindings);
        return q;
    }
    case Pred::Kind::Not: {
        auto q = std::make_shared<Pred>();
        q->kind = Pred::Kind::Not;
        q->p1 = substitute(p->p1, bindings);
        return q;
    }
    case Pred::Kind::Implies: {
        auto q = std::make_shared<Pred>();
        q->kind = Pred::Kind::Implies;
        q->p1 = substitute(p->p1, bindings);
        q->p2 = substitute(p->p2, bindings);
        return q;
    }
    }
    return p;
}

// ---------------------------------------------------------------------------
// Weakest precondition
// ---------------------------------------------------------------------------

namespace {

// Collect the simultaneous bindings of a parallel block made of plain
// assignments (possibly nested parallels). Returns false when a branch is
// not an assignment.
bool collect_assignments(const SubstPtr& s, std::map<std::string, ExprPtr>& out) {
    switch (s->kind) {
    case Subst::Kind::Skip: return true;
    case Subst::Kind::Assign:
        out[s->var] = s->expr;
        return true;
    case Subst::Kind::Parallel:
        for (const auto& b : s->branches)
            if (!collect_assignments(b, out)) return false;
        return true;
    default: return false;
    }
}

} // namespace

PredPtr wp(const SubstPtr& s, const PredPtr& post) {
    if (!s) throw UnsupportedSubstitution("null substitution");
    switch (s->kind) {
    case Subst::Kind::Skip: return post;
    case Subst::Kind::Assign: return substitute(post, {{s->var, s->expr}});
    case Subst::Kind::Parallel: {
        std::map<std::string, ExprPtr> bindings;
        if (collect_assignments(s, bindings)) return substitute(post, bindings);
        // Branches with IF inside: sequential wp composition, sound because
        // parallel branches neither write nor read each other's targets.
        PredPtr acc = post;
        for (auto it = s->branches.rbegin(); it != s->branches.rend(); ++it) acc = wp(*it, acc);
        return acc;
    }
    case Subst::Kind::IfThen:
        return Pred::conj(Pred::implies(s->cond, wp(s->then_branch, post)),
                          Pred::implies(Pred::negation(s->cond), post));
    case Subst::Kind::IfThenElse:
        return Pred::conj(Pred::implies(s->cond, wp(s->then_branch, post)),
                          Pred::implies(Pred::negation(s->cond), wp(s->else_branch, post)));
    case Subst::Kind::Select: return Pred::implies(s->cond, wp(s->then_branch, post));
    }
    throw UnsupportedSubstitution("unknown substitution node");
}

// ---------------------------------------------------------------------------
// Evaluation / execution
// ---------------------------------------------------------------------------

Value evaluate_value(const ExprPtr& e, const Valuation& v) {
    switch (e->kind) {
    case Expr::Kind::IntLit: return e->value;
    case Expr::Kind::EnumLit: return e->name;
    case Expr::Kind::Ident: {
        auto it = v.find(e->name);
        if (it == v.end()) throw IncompleteValuation(e->name);
        return it->second;
    }
    case Expr::Kind::Add: return evaluate_int(e->lhs, v) + evaluate_int(e->rhs, v);
    case Expr::Kind::Sub: return evaluate_int(e->lhs, v) - evaluate_int(e->rhs, v);
    }
    throw IncompleteValuation("?");
}

long evaluate_int(const ExprPtr& e, const Valuation& v) {
    Value val = evaluate_value(e, v);
    if (!std::holds_alternative<long>(val))
        throw SortMismatch("expected integer value, got " + std::get<std::string>(val));
    return std::get<long>(val);
}

bool evaluate(const PredPtr& p, const Valuation& v) {
    switch (p->kind) {
    case Pred::Kind::True: return true;
    case Pred::Kind::False: return false;
    case Pred::Kind::Cmp: {
        Value a = evaluate_value(p->e1, v);
        Value b = evaluate_value(p->e2, v);
        if (std::holds_alternative<long>(a) != std::holds_alternative<long>(b))
            throw SortMismatch("comparison between integer and enum values");
        if (std::holds_alternative<std::string>(a)) {
            bool eq = std::get<std::string>(a) == std::get<std::string>(b);
            if (p->op == CmpOp::Eq) return eq;
            if (p->op == CmpOp::Ne) return !eq;
            throw SortMismatch("ordered comparison between enum values");
        }
        long x = std::get<long>(a), y = std::get<long>(b);
        switch (p->op) {
        case CmpOp::Eq: return x == y;
        case CmpOp::Ne: return x != y;
        case CmpOp::Lt: return x < y;
        case CmpOp::Le: return x <= y;
        case CmpOp::Gt: return x > y;
        case CmpOp::Ge: return x >= y;
        }
        return false;
    }
    case Pred::Kind::InInterval: {
        long x = evaluate_int(p->e1, v);
        return evaluate_int(p->e2, v) <= x && x <= evaluate_int(p->e3, v);
    }
    case Pred::Kind::InSet: {
        Value a = evaluate_value(p->e1, v);
        return std::holds_alternative<std::string>(a);
    }
    case Pred::Kind::InNat: return evaluate_int(p->e1, v) >= 0;
    case Pred::Kind::And: return evaluate(p->p1, v) && evaluate(p->p2, v);
    case Pred::Kind::Or: return evaluate(p->p1, v) || evaluate(p->p2, v);
    case Pred::Kind::Not: return !evaluate(p->p1, v);
    case Pred::Kind::Implies: return !evaluate(p->p1, v) || evaluate(p->p2, v);
    }
    return false;
}

std::optional<Valuation> exec(const SubstPtr& s, const Valuation& v) {
    switch (s->kind) {
    case Subst::Kind::Skip: return v;
    case Subst::Kind::Assign: {
        Valuation out = v;
        if (!out.count(s->var)) throw IncompleteValuation(s->var);
        out[s->var] = evaluate_value(s->expr, v);
        return out;
    }
    case Subst::Kind::Parallel: {
        // Each branch reads the pre-state; writes are merged.
        Valuation out = v;
        for (const auto& b : s->branches) {
            auto r = exec(b, v);
            if (!r) return std::nullopt;
            for (const auto& w : written_vars(b)) out[w] = r->at(w);
        }
        return out;
    }
    case Subst::Kind::IfThen:
        return evaluate(s->cond, v) ? exec(s->then_branch, v) : std::optional<Valuation>(v);
    case Subst::Kind::IfThenElse:
        return evaluate(s->cond, v) ? exec(s->then_branch, v) : exec(s->else_branch, v);
    case Subst::Kind::Select:
        if (!evaluate(s->cond, v)) return std::nullopt;
        return exec(s->then_branch, v);
    }
    throw UnsupportedSubstitution("unknown substitution node");
}

} // namespace genesys
