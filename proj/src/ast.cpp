#include "genesys/ast.hpp"

#include <sstream>

namespace genesys {

// ---------------------------------------------------------------------------
// Constructors
// ---------------------------------------------------------------------------

ExprPtr Expr::int_lit(long v) {
    auto e = std::make_shared<Expr>();
    e->kind = Kind::IntLit;
    e->value = v;
    return e;
}

ExprPtr Expr::ident(std::string name) {
    auto e = std::make_shared<Expr>();
    e->kind = Kind::Ident;
    e->name = std::move(name);
    return e;
}

ExprPtr Expr::enum_lit(std::string name, std::string set) {
    auto e = std::make_shared<Expr>();
    e->kind = Kind::EnumLit;
    e->name = std::move(name);
    e->set_name = std::move(set);
    return e;
}

ExprPtr Expr::add(ExprPtr a, ExprPtr b) {
    auto e = std::make_shared<Expr>();
    e->kind = Kind::Add;
    e->lhs = std::move(a);
    e->rhs = std::move(b);
    return e;
}

ExprPtr Expr::sub(ExprPtr a, ExprPtr b) {
    auto e = std::make_shared<Expr>();
    e->kind = Kind::Sub;
    e->lhs = std::move(a);
    e->rhs = std::move(b);
    return e;
}

CmpOp negate_op(CmpOp op) {
    switch (op) {
    case CmpOp::Eq: return CmpOp::Ne;
    case CmpOp::Ne: return CmpOp::Eq;
    case CmpOp::Lt: return CmpOp::Ge;
    case CmpOp::Le: return CmpOp::Gt;
    case CmpOp::Gt: return CmpOp::Le;
    case CmpOp::Ge: return CmpOp::Lt;
    }
    return CmpOp::Eq;
}

const char* cmp_op_text(CmpOp op) {
    switch (op) {
    case CmpOp::Eq: return "=";
    case CmpOp::Ne: return "/=";
    case CmpOp::Lt: return "<";
    case CmpOp::Le: return "<=";
    case CmpOp::Gt: return ">";
    case CmpOp::Ge: return ">=";
    }
    return "=";
}

PredPtr Pred::truth() {
    static PredPtr t = [] {
        auto p = std::make_shared<Pred>();
        p->kind = Kind::True;
        return p;
    }();
    return t;
}

PredPtr Pred::falsity() {
    static PredPtr f = [] {
        auto p = std::make_shared<Pred>();
        p->kind = Kind::False;
        return p;
    }();
    return f;
}

PredPtr Pred::cmp(CmpOp op, ExprPtr a, ExprPtr b) {
    auto p = std::make_shared<Pred>();
    p->kind = Kind::Cmp;
    p->op = op;
    p->e1 = std::move(a);
    p->e2 = std::move(b);
    return p;
}

PredPtr Pred::in_interval(ExprPtr e, ExprPtr lo, ExprPtr hi) {
    auto p = std::make_shared<Pred>();
    p->kind = Kind::InInterval;
    p->e1 = std::move(e);
    p->e2 = std::move(lo);
    p->e3 = std::move(hi);
    return p;
}

PredPtr Pred::in_set(ExprPtr e, std::string set) {
    auto p = std::make_shared<Pred>();
    p->kind = Kind::InSet;
    p->e1 = std::move(e);
    p->set_name = std::move(set);
    return p;
}

PredPtr Pred::in_nat(ExprPtr e) {
    auto p = std::make_shared<Pred>();
    p->kind = Kind::InNat;
    p->e1 = std::move(e);
    return p;
}

PredPtr Pred::conj(PredPtr a, PredPtr b) {
    if (a->kind == Kind::True) return b;
    if (b->kind == Kind::True) return a;
    if (a->kind == Kind::False || b->kind == Kind::False) return falsity();
    auto p = std::make_shared<Pred>();
    p->kind = Kind::And;
    p->p1 = std::move(a);
    p->p2 = std::move(b);
    return p;
}

PredPtr Pred::disj(PredPtr a, PredPtr b) {
    if (a->kind == Kind::False) return b;
    if (b->kind == Kind::False) return a;
    if (a->kind == Kind::True || b->kind == Kind::True) return truth();
    auto p = std::make_shared<Pred>();
    p->kind = Kind::Or;
    p->p1 = std::move(a);
    p->p2 = std::move(b);
    return p;
}

PredPtr Pred::negation(PredPtr p) {
    if (p->kind == Kind::True) return falsity();
    if (p->kind == Kind::False) return truth();
    auto q = std::make_shared<Pred>();
    q->kind = Kind::Not;
    q->p1 = std::move(p);
    return q;
}

PredPtr Pred::implies(PredPtr a, PredPtr b) {
    auto p = std::make_shared<Pred>();
    p->kind = Kind::Implies;
    p->p1 = std::move(a);
    p->p2 = std::move(b);
    return p;
}

PredPtr Pred::conj_all(const std::vector<PredPtr>& ps) {
    PredPtr acc = truth();
    for (const auto& p : ps) acc = conj(acc, p);
    return acc;
}

SubstPtr Subst::skip() {
    auto s = std::make_shared<Subst>();
    s->kind = Kind::Skip;
    return s;
}

SubstPtr Subst::assign(std::string var, ExprPtr e) {
    auto s = std::make_shared<Subst>();
    s->kind = Kind::Assign;
    s->var = std::move(var);
    s->expr = std::move(e);
    return s;
}

SubstPtr Subst::parallel(std::vector<SubstPtr> branches) {
    auto s = std::make_shared<Subst>();
    s->kind = Kind::Parallel;
    s->branches = std::move(branches);
    return s;
}

SubstPtr Subst::if_then(PredPtr c, SubstPtr body) {
    auto s = std::make_shared<Subst>();
    s->kind = Kind::IfThen;
    s->cond = std::move(c);
    s->then_branch = std::move(body);
    return s;
}

SubstPtr Subst::if_then_else(PredPtr c, SubstPtr t, SubstPtr e) {
    auto s = std::make_shared<Subst>();
    s->kind = Kind::IfThenElse;
    s->cond = std::move(c);
    s->then_branch = std::move(t);
    s->else_branch = std::move(e);
    return s;
}

SubstPtr Subst::select(PredPtr guard, SubstPtr body) {
    auto s = std::make_shared<Subst>();
    s->kind = Kind::Select;
    s->cond = std::move(guard);
    s->then_branch = std::move(body);
    return s;
}

// ---------------------------------------------------------------------------
// Structural identity
// ---------------------------------------------------------------------------

bool equal(const ExprPtr& a, const ExprPtr& b) {
    if (a == b) return true;
    if (!a || !b) return false;
    if (a->kind != b->kind) return false;
    switch (a->kind) {
    case Expr::Kind::IntLit: return a->value == b->value;
    case Expr::Kind::Ident: return a->name == b->name;
    case Expr::Kind::EnumLit: return a->name == b->name && a->set_name == b->set_name;
    case Expr::Kind::Add:
    case Expr::Kind::Sub: return equal(a->lhs, b->lhs) && equal(a->rhs, b->rhs);
    }
    return false;
}

bool equal(const PredPtr& a, const PredPtr& b) {
    if (a == b) return true;
    if (!a || !b) return false;
    if (a->kind != b->kind) return false;
    switch (a->kind) {
    case Pred::Kind::True:
    case Pred::Kind::False: return true;
    case Pred::Kind::Cmp: return a->op == b->op && equal(a->e1, b->e1) && equal(a->e2, b->e2);
    case Pred::Kind::InInterval:
        return equal(a->e1, b->e1) && equal(a->e2, b->e2) && equal(a->e3, b->e3);
    case Pred::Kind::InSet: return equal(a->e1, b->e1) && a->set_name == b->set_name;
    case Pred::Kind::InNat: return equal(a->e1, b->e1);
    case Pred::Kind::And:
    case Pred::Kind::Or:
    case Pred::Kind::Implies: return equal(a->p1, b->p1) && equal(a->p2, b->p2);
    case Pred::Kind::Not: return equal(a->p1, b->p1);
    }
    return false;
}

bool equal(const SubstPtr& a, const SubstPtr& b) {
    if (a == b) return true;
    if (!a || !b) return false;
    if (a->kind != b->kind) return false;
    switch (a->kind) {
    case Subst::Kind::Skip: return true;
    case Subst::Kind::Assign: return a->var == b->var && equal(a->expr, b->expr);
    case Subst::Kind::Parallel: {
        if (a->branches.size() != b->branches.size()) return false;
        for (std::size_t i = 0; i < a->branches.size(); ++i)
            if (!equal(a->branches[i], b->branches[i])) return false;
        return true;
    }
    case Subst::Kind::IfThen:
        return equal(a->cond, b->cond) && equal(a->then_branch, b->then_branch);
    case Subst::Kind::IfThenElse:
        return equal(a->cond, b->cond) && equal(a->then_branch, b->then_branch) &&
               equal(a->else_branch, b->else_branch);
    case Subst::Kind::Select:
        return equal(a->cond, b->cond) && equal(a->then_branch, b->then_branch);
    }
    return false;
}

// ---------------------------------------------------------------------------
// Free identifiers
// ---------------------------------------------------------------------------

void free_idents(const ExprPtr& e, std::set<std::string>& out) {
    if (!e) return;
    switch (e->kind) {
    case Expr::Kind::Ident: out.insert(e->name); break;
    case Expr::Kind::Add:
    case Expr::Kind::Sub:
        free_idents(e->lhs, out);
        free_idents(e->rhs, out);
        break;
    default: break;
    }
}

void free_idents(const PredPtr& p, std::set<std::string>& out) {
    if (!p) return;
    free_idents(p->e1, out);
    free_idents(p->e2, out);
    free_idents(p->e3, out);
    free_idents(p->p1, out);
    free_idents(p->p2, out);
}

void free_idents(const SubstPtr& s, std::set<std::string>& out) {
    if (!s) return;
    switch (s->kind) {
    case Subst::Kind::Skip: break;
    case Subst::Kind::Assign: free_idents(s->expr, out); break;
    case Subst::Kind::Parallel:
        for (const auto& b : s->branches) free_idents(b, out);
        break;
    case Subst::Kind::IfThen:
    case Subst::Kind::Select:
        free_idents(s->cond, out);
        free_idents(s->then_branch, out);
        break;
    case Subst::Kind::IfThenElse:
        free_idents(s->cond, out);
        free_idents(s->then_branch, out);
        free_idents(s->else_branch, out);
        break;
    }
}

std::set<std::string> free_idents(const PredPtr& p) {
    std::set<std::string> out;
    free_idents(p, out);
    return out;
}

std::set<std::string> written_vars(const SubstPtr& s) {
    std::set<std::string> out;
    if (!s) return out;
    switch (s->kind) {
    case Subst::Kind::Skip: break;
    case Subst::Kind::Assign: out.insert(s->var); break;
    case Subst::Kind::Parallel:
        for (const auto& b : s->branches) out.merge(written_vars(b));
        break;
    case Subst::Kind::IfThen:
    case Subst::Kind::Select: out = written_vars(s->then_branch); break;
    case Subst::Kind::IfThenElse:
        out = written_vars(s->then_branch);
        out.merge(written_vars(s->else_branch));
        break;
    }
    return out;
}

// ---------------------------------------------------------------------------
// Printing. Predicate precedence, loosest first: => , or , & , atoms.
// ---------------------------------------------------------------------------

namespace {

void print_expr(std::ostream& os, const ExprPtr& e, bool paren_sum) {
    switch (e->kind) {
    case Expr::Kind::IntLit: os << e->value; break;
    case Expr::Kind::Ident:
    case Expr::Kind::EnumLit: os << e->name; break;
    case Expr::Kind::Add:
    case Expr::Kind::Sub:
        if (paren_sum) os << "(";
        print_expr(os, e->lhs, false);
        os << (e->kind == Expr::Kind::Add ? "+" : "-");
        // right operand of +/- needs parens when itself a sum (left assoc)
        print_expr(os, e->rhs, e->rhs->kind == Expr::Kind::Add || e->rhs->kind == Expr::Kind::Sub);
        if (paren_sum) os << ")";
        break;
    }
}

int pred_level(const Pred& p) {
    switch (p.kind) {
    case Pred::Kind::Implies: return 0;
    case Pred::Kind::Or: return 1;
    case Pred::Kind::And: return 2;
    default: return 3;
    }
}

void print_pred(std::ostream& os, const PredPtr& p, int min_level) {
    int lvl = pred_level(*p);
    bool paren = lvl < min_level;
    if (paren) os << "(";
    switch (p->kind) {
    case Pred::Kind::True: os << "TRUE"; break;
    case Pred::Kind::False: os << "FALSE"; break;
    case Pred::Kind::Cmp:
        print_expr(os, p->e1, false);
        os << cmp_op_text(p->op);
        print_expr(os, p->e2, false);
        break;
    case Pred::Kind::InInterval:
        print_expr(os, p->e1, false);
        os << ":";
        print_expr(os, p->e2, p->e2->kind == Expr::Kind::Add || p->e2->kind == Expr::Kind::Sub);
        os << "..";
        print_expr(os, p->e3, p->e3->kind == Expr::Kind::Add || p->e3->kind == Expr::Kind::Sub);
        break;
    case Pred::Kind::InSet:
        print_expr(os, p->e1, false);
        os << ":" << p->set_name;
        break;
    case Pred::Kind::InNat:
        print_expr(os, p->e1, false);
        os << ":NAT";
        break;
    case Pred::Kind::And:
        print_pred(os, p->p1, 2);
        os << " & ";
        print_pred(os, p->p2, 3); // left assoc
        break;
    case Pred::Kind::Or:
        print_pred(os, p->p1, 1);
        os << " or ";
        print_pred(os, p->p2, 2);
        break;
    case Pred::Kind::Not:
        os << "not(";
        print_pred(os, p->p1, 0);
        os << ")";
        break;
    case Pred::Kind::Implies:
        print_pred(os, p->p1, 1); // => is right assoc, lhs must bind tighter
        os << " => ";
        print_pred(os, p->p2, 0);
        break;
    }
    if (paren) os << ")";
}

void print_subst(std::ostream& os, const SubstPtr& s, bool paren_par) {
    switch (s->kind) {
    case Subst::Kind::Skip: os << "skip"; break;
    case Subst::Kind::Assign:
        os << s->var << " := ";
        print_expr(os, s->expr, false);
        break;
    case Subst::Kind::Parallel: {
        if (paren_par) os << "(";
        bool first = true;
        for (const auto& b : s->branches) {
            if (!first) os << " || ";
            first = false;
            print_subst(os, b, b->kind == Subst::Kind::Parallel);
        }
        if (paren_par) os << ")";
        break;
    }
    case Subst::Kind::IfThen:
        os << "IF ";
        print_pred(os, s->cond, 0);
        os << " THEN ";
        print_subst(os, s->then_branch, false);
        os << " END";
        break;
    case Subst::Kind::IfThenElse:
        os << "IF ";
        print_pred(os, s->cond, 0);
        os << " THEN ";
        print_subst(os, s->then_branch, false);
        os << " ELSE ";
        print_subst(os, s->else_branch, false);
        os << " END";
        break;
    case Subst::Kind::Select:
        os << "SELECT ";
        print_pred(os, s->cond, 0);
        os << " THEN ";
        print_subst(os, s->then_branch, false);
        os << " END";
        break;
    }
}

} // namespace

std::string to_string(const ExprPtr& e) {
    std::ostringstream os;
    print_expr(os, e, false);
    return os.str();
}

std::string to_string(const PredPtr& p) {
    std::ostringstream os;
    print_pred(os, p, 0);
    return os.str();
}

std::string to_string(const SubstPtr& s) {
    std::ostringstream os;
    print_subst(os, s, false);
    return os.str();
}

} // namespace genesys
