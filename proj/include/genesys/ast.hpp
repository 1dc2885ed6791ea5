#ifndef GENESYS_AST_HPP
#define GENESYS_AST_HPP

#include <map>
#include <memory>
#include <set>
#include <string>
#include <vector>

namespace genesys {

// ---------------------------------------------------------------------------
// Sorts
// ---------------------------------------------------------------------------

struct Sort {
    enum class Kind { Int, Enum };
    Kind kind = Kind::Int;
    std::string set_name; // valid when kind == Enum

    static Sort integer() { return {Kind::Int, {}}; }
    static Sort enumerated(std::string set) { return {Kind::Enum, std::move(set)}; }

    bool operator==(const Sort& o) const { return kind == o.kind && set_name == o.set_name; }
    bool operator!=(const Sort& o) const { return !(*this == o); }
};

// ---------------------------------------------------------------------------
// Expressions: int literals, identifiers, enum literals, +, -
// ---------------------------------------------------------------------------

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

struct Expr {
    enum class Kind { IntLit, Ident, EnumLit, Add, Sub };

    Kind kind;
    long value = 0;        // IntLit
    std::string name;      // Ident / EnumLit
    std::string set_name;  // EnumLit: owning set
    ExprPtr lhs, rhs;      // Add / Sub

    static ExprPtr int_lit(long v);
    static ExprPtr ident(std::string name);
    static ExprPtr enum_lit(std::string name, std::string set);
    static ExprPtr add(ExprPtr a, ExprPtr b);
    static ExprPtr sub(ExprPtr a, ExprPtr b);
};

// ---------------------------------------------------------------------------
// Predicates (quantifier-free)
// ---------------------------------------------------------------------------

enum class CmpOp { Eq, Ne, Lt, Le, Gt, Ge };

CmpOp negate_op(CmpOp op);
const char* cmp_op_text(CmpOp op);

struct Pred;
using PredPtr = std::shared_ptr<const Pred>;

struct Pred {
    enum class Kind {
        True,
        False,
        Cmp,        // e1 op e2
        InInterval, // e1 : lo .. hi
        InSet,      // e1 : set_name (enumerated set)
        InNat,      // e1 : NAT
        And,
        Or,
        Not,
        Implies
    };

    Kind kind;
    CmpOp op = CmpOp::Eq;
    ExprPtr e1, e2, e3; // Cmp: e1 op e2; InInterval: e1 in e2..e3; InSet/InNat: e1
    std::string set_name;
    PredPtr p1, p2; // And/Or/Implies: p1,p2; Not: p1

    static PredPtr truth();
    static PredPtr falsity();
    static PredPtr cmp(CmpOp op, ExprPtr a, ExprPtr b);
    static PredPtr in_interval(ExprPtr e, ExprPtr lo, ExprPtr hi);
    static PredPtr in_set(ExprPtr e, std::string set);
    static PredPtr in_nat(ExprPtr e);
    static PredPtr conj(PredPtr a, PredPtr b); // folds constants
    static PredPtr disj(PredPtr a, PredPtr b);
    static PredPtr negation(PredPtr p);
    static PredPtr implies(PredPtr a, PredPtr b);
    static PredPtr conj_all(const std::vector<PredPtr>& ps);
};

// ---------------------------------------------------------------------------
// Generalized substitutions
// ---------------------------------------------------------------------------

struct Subst;
using SubstPtr = std::shared_ptr<const Subst>;

struct Subst {
    enum class Kind { Skip, Assign, Parallel, IfThen, IfThenElse, Select };

    Kind kind;
    std::string var; // Assign target
    ExprPtr expr;    // Assign rhs
    std::vector<SubstPtr> branches; // Parallel
    PredPtr cond;                   // IfThen/IfThenElse condition, Select guard
    SubstPtr then_branch, else_branch;

    static SubstPtr skip();
    static SubstPtr assign(std::string var, ExprPtr e);
    static SubstPtr parallel(std::vector<SubstPtr> branches);
    static SubstPtr if_then(PredPtr c, SubstPtr s);
    static SubstPtr if_then_else(PredPtr c, SubstPtr s, SubstPtr t);
    static SubstPtr select(PredPtr guard, SubstPtr body);
};

// ---------------------------------------------------------------------------
// Structural identity, free identifiers, printing
// ---------------------------------------------------------------------------

bool equal(const ExprPtr& a, const ExprPtr& b);
bool equal(const PredPtr& a, const PredPtr& b);
bool equal(const SubstPtr& a, const SubstPtr& b);

void free_idents(const ExprPtr& e, std::set<std::string>& out);
void free_idents(const PredPtr& p, std::set<std::string>& out);
void free_idents(const SubstPtr& s, std::set<std::string>& out);
std::set<std::string> free_idents(const PredPtr& p);

// Identifiers assigned anywhere inside s.
std::set<std::string> written_vars(const SubstPtr& s);

// ASCII rendering in the same concrete syntax the parser accepts.
std::string to_string(const ExprPtr& e);
std::string to_string(const PredPtr& p);
std::string to_string(const SubstPtr& s);

} // namespace genesys

#endif
