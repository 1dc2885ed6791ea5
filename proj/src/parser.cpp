#include "genesys/machine.hpp"

#include <algorithm>
#include <cctype>
#include <optional>
#include <sstream>

namespace genesys {

namespace {

// ---------------------------------------------------------------------------
// Lexer
// ---------------------------------------------------------------------------

enum class Tok {
    Ident,
    Int,
    Sym, // text holds the symbol
    Eof
};

struct Token {
    Tok kind;
    std::string text;
    long value = 0;
    SourcePos pos;
};

class Lexer {
public:
    explicit Lexer(const std::string& src) : src_(src) {}

    std::vector<Token> run() {
        std::vector<Token> out;
        for (;;) {
            skip_space();
            SourcePos pos{line_, col_};
            if (i_ >= src_.size()) {
                out.push_back({Tok::Eof, "", 0, pos});
                break;
            }
            char c = src_[i_];
            if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
                std::string id;
                while (i_ < src_.size() &&
                       (std::isalnum(static_cast<unsigned char>(src_[i_])) || src_[i_] == '_'))
                    id += advance();
                out.push_back({Tok::Ident, id, 0, pos});
            } else if (std::isdigit(static_cast<unsigned char>(c))) {
                std::string num;
                while (i_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[i_])))
                    num += advance();
                out.push_back({Tok::Int, num, std::stol(num), pos});
            } else {
                out.push_back({Tok::Sym, symbol(pos), 0, pos});
            }
        }
        return out;
    }

private:
    char advance() {
        char c = src_[i_++];
        if (c == '\n') {
            ++line_;
            col_ = 1;
        } else {
            ++col_;
        }
        return c;
    }

    bool match2(const char* two) {
        if (i_ + 1 < src_.size() && src_[i_] == two[0] && src_[i_ + 1] == two[1]) {
            advance();
            advance();
            return true;
        }
        return false;
    }

    std::string symbol(SourcePos pos) {
        static const char* two_char[] = {"=>", "/=", "<=", ">=", ":=", "..", "||"};
        for (const char* t : two_char)
            if (match2(t)) return t;
        char c = src_[i_];
        static const std::string one_char = "&=<>:+-(),;@{}";
        if (one_char.find(c) != std::string::npos) {
            advance();
            return std::string(1, c);
        }
        throw SyntaxError("a valid token, got '" + std::string(1, c) + "'", pos);
    }

    void skip_space() {
        for (;;) {
            while (i_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[i_]))) advance();
            if (i_ + 1 < src_.size() && src_[i_] == '/' && src_[i_ + 1] == '*') {
                SourcePos start{line_, col_};
                advance();
                advance();
                while (i_ + 1 < src_.size() && !(src_[i_] == '*' && src_[i_ + 1] == '/')) advance();
                if (i_ + 1 >= src_.size()) throw SyntaxError("closing */", start);
                advance();
                advance();
                continue;
            }
            break;
        }
    }

    const std::string& src_;
    std::size_t i_ = 0;
    int line_ = 1;
    int col_ = 1;
};

bool is_keyword(const std::string& s) {
    static const std::set<std::string> kw = {
        "MACHINE",    "REFINEMENT",     "REFINES", "SETS",   "CONSTANTS", "PROPERTIES",
        "VARIABLES",  "INVARIANT",      "ASSERTIONS", "INITIALISATION", "OPERATIONS",
        "END",        "SELECT",         "THEN",    "IF",     "ELSE",      "TRUE",
        "FALSE",      "NAT",            "skip",    "or",     "not"};
    return kw.count(s) > 0;
}

// ---------------------------------------------------------------------------
// Symbol context shared by the machine parser and parse_predicate
// ---------------------------------------------------------------------------

struct Symbols {
    std::set<std::string> declared; // variables + constants
    std::map<std::string, std::string> enum_literals;
    std::set<std::string> set_names;
    bool collect_externals = false;        // refinements defer resolution
    std::set<std::string>* externals = nullptr;
};

// ---------------------------------------------------------------------------
// Parser
// ---------------------------------------------------------------------------

class Parser {
public:
    Parser(std::vector<Token> toks, Symbols syms) : toks_(std::move(toks)), syms_(std::move(syms)) {}

    const Token& peek(std::size_t k = 0) const {
        std::size_t i = std::min(pos_ + k, toks_.size() - 1);
        return toks_[i];
    }

    Token next() { return toks_[std::min(pos_++, toks_.size() - 1)]; }

    bool at_ident(const std::string& word) const {
        return peek().kind == Tok::Ident && peek().text == word;
    }

    bool at_sym(const std::string& s) const {
        return peek().kind == Tok::Sym && peek().text == s;
    }

    bool accept_sym(const std::string& s) {
        if (at_sym(s)) {
            next();
            return true;
        }
        return false;
    }

    bool accept_word(const std::string& w) {
        if (at_ident(w)) {
            next();
            return true;
        }
        return false;
    }

    void expect_sym(const std::string& s) {
        if (!accept_sym(s)) throw SyntaxError("'" + s + "'", peek().pos);
    }

    void expect_word(const std::string& w) {
        if (!accept_word(w)) throw SyntaxError("'" + w + "'", peek().pos);
    }

    std::string expect_name() {
        if (peek().kind != Tok::Ident || is_keyword(peek().text))
            throw SyntaxError("an identifier", peek().pos);
        return next().text;
    }

    // --- expressions -----------------------------------------------------

    ExprPtr parse_expr() {
        ExprPtr e = parse_term();
        for (;;) {
            if (accept_sym("+"))
                e = Expr::add(e, parse_term());
            else if (at_sym("-") && !at_sym("..")) {
                // stop before ".." handled by two-char lexing; plain '-' is sub
                next();
                e = Expr::sub(e, parse_term());
            } else
                break;
        }
        return e;
    }

    ExprPtr parse_term() {
        const Token& t = peek();
        if (t.kind == Tok::Int) return Expr::int_lit(next().value);
        if (t.kind == Tok::Sym && t.text == "-") {
            next();
            if (peek().kind == Tok::Int) return Expr::int_lit(-next().value);
            return Expr::sub(Expr::int_lit(0), parse_term());
        }
        if (t.kind == Tok::Sym && t.text == "(") {
            next();
            ExprPtr e = parse_expr();
            expect_sym(")");
            return e;
        }
        if (t.kind == Tok::Ident && !is_keyword(t.text)) {
            Token tok = next();
            return resolve_ident(tok.text, tok.pos);
        }
        throw SyntaxError("an expression", t.pos);
    }

    ExprPtr resolve_ident(const std::string& name, SourcePos pos) {
        auto it = syms_.enum_literals.find(name);
        if (it != syms_.enum_literals.end()) return Expr::enum_lit(name, it->second);
        if (syms_.declared.count(name)) return Expr::ident(name);
        if (syms_.collect_externals) {
            syms_.externals->insert(name);
            return Expr::ident(name);
        }
        throw UnboundIdentifier(name, pos);
    }

    // --- predicates ------------------------------------------------------

    PredPtr parse_pred() { return parse_implies(); }

    PredPtr parse_implies() {
        PredPtr lhs = parse_or();
        if (accept_sym("=>")) return Pred::implies(lhs, parse_implies());
        return lhs;
    }

    PredPtr parse_or() {
        PredPtr p = parse_and();
        while (accept_word("or")) {
            auto q = std::make_shared<Pred>();
            q->kind = Pred::Kind::Or;
            q->p1 = p;
            q->p2 = parse_and();
            p = q;
        }
        return p;
    }

    PredPtr parse_and() {
        PredPtr p = parse_atom();
        while (accept_sym("&")) {
            auto q = std::make_shared<Pred>();
            q->kind = Pred::Kind::And;
            q->p1 = p;
            q->p2 = parse_atom();
            p = q;
        }
        return p;
    }

    // A parenthesis may open either a nested predicate or an expression;
    // disambiguated by re-scanning from the saved token position.
    PredPtr parse_atom() {
        if (accept_word("TRUE")) return Pred::truth();
        if (accept_word("FALSE")) return Pred::falsity();
        if (accept_word("not")) {
            expect_sym("(");
            PredPtr p = parse_pred();
            expect_sym(")");
            return Pred::negation(p);
        }
        if (at_sym("(")) {
            std::size_t save = pos_;
            next();
            try {
                PredPtr p = parse_pred();
                expect_sym(")");
                // reject "(expr)" parsed as nothing; a predicate inside parens
                // is complete only if the next token is not a comparison
                if (peek().kind == Tok::Sym) {
                    const std::string& s = peek().text;
                    if (s == "=" || s == "/=" || s == "<" || s == "<=" || s == ">" || s == ">=" ||
                        s == ":" || s == "+" || s == "-") {
                        pos_ = save;
                        return parse_comparison();
                    }
                }
                return p;
            } catch (const SpecError&) {
                pos_ = save;
                return parse_comparison();
            }
        }
        return parse_comparison();
    }

    PredPtr parse_comparison() {
        ExprPtr lhs = parse_expr();
        if (accept_sym(":")) {
            if (accept_word("NAT")) return Pred::in_nat(lhs);
            if (peek().kind == Tok::Ident && syms_.set_names.count(peek().text))
                return Pred::in_set(lhs, next().text);
            ExprPtr lo = parse_expr();
            expect_sym("..");
            ExprPtr hi = parse_expr();
            return Pred::in_interval(lhs, lo, hi);
        }
        CmpOp op;
        if (accept_sym("=")) op = CmpOp::Eq;
        else if (accept_sym("/=")) op = CmpOp::Ne;
        else if (accept_sym("<=")) op = CmpOp::Le;
        else if (accept_sym(">=")) op = CmpOp::Ge;
        else if (accept_sym("<")) op = CmpOp::Lt;
        else if (accept_sym(">")) op = CmpOp::Gt;
        else throw SyntaxError("a comparison operator or ':'", peek().pos);
        return Pred::cmp(op, lhs, parse_expr());
    }

    // --- substitutions ---------------------------------------------------

    SubstPtr parse_subst() {
        std::vector<SubstPtr> branches;
        branches.push_back(parse_simple_subst());
        while (accept_sym("||")) branches.push_back(parse_simple_subst());
        if (branches.size() == 1) return branches[0];
        return Subst::parallel(std::move(branches));
    }

    SubstPtr parse_simple_subst() {
        if (accept_word("skip")) return Subst::skip();
        if (accept_word("IF")) {
            PredPtr c = parse_pred();
            expect_word("THEN");
            SubstPtr t = parse_subst();
            if (accept_word("ELSE")) {
                SubstPtr e = parse_subst();
                expect_word("END");
                return Subst::if_then_else(c, t, e);
            }
            expect_word("END");
            return Subst::if_then(c, t);
        }
        if (at_sym("(")) {
            next();
            SubstPtr s = parse_subst();
            expect_sym(")");
            return s;
        }
        Token tok = peek();
        std::string var = expect_name();
        if (!syms_.declared.count(var)) throw UnboundIdentifier(var, tok.pos);
        expect_sym(":=");
        return Subst::assign(var, parse_expr());
    }

    std::size_t pos_ = 0;
    std::vector<Token> toks_;
    Symbols syms_;
};

// ---------------------------------------------------------------------------
// Well-formedness checks
// ---------------------------------------------------------------------------

void check_parallel(const SubstPtr& s, const std::string& event, SourcePos pos) {
    if (!s) return;
    switch (s->kind) {
    case Subst::Kind::Parallel: {
        std::vector<std::set<std::string>> writes;
        std::vector<std::set<std::string>> reads;
        for (const auto& b : s->branches) {
            check_parallel(b, event, pos);
            writes.push_back(written_vars(b));
            std::set<std::string> r;
            free_idents(b, r);
            reads.push_back(std::move(r));
        }
        for (std::size_t i = 0; i < writes.size(); ++i)
            for (std::size_t j = i + 1; j < writes.size(); ++j) {
                for (const auto& v : writes[i])
                    if (writes[j].count(v)) throw ParallelWriteConflict(v, event, pos);
                for (const auto& v : writes[i])
                    if (reads[j].count(v))
                        throw SpecError("ParallelCrossRead",
                                        "parallel branch reads variable " + v +
                                            " written by a sibling branch in " + event,
                                        pos);
                for (const auto& v : writes[j])
                    if (reads[i].count(v))
                        throw SpecError("ParallelCrossRead",
                                        "parallel branch reads variable " + v +
                                            " written by a sibling branch in " + event,
                                        pos);
            }
        break;
    }
    case Subst::Kind::IfThen: check_parallel(s->then_branch, event, pos); break;
    case Subst::Kind::IfThenElse:
        check_parallel(s->then_branch, event, pos);
        check_parallel(s->else_branch, event, pos);
        break;
    case Subst::Kind::Select: check_parallel(s->then_branch, event, pos); break;
    default: break;
    }
}

bool contains_select(const SubstPtr& s) {
    if (!s) return false;
    if (s->kind == Subst::Kind::Select) return true;
    for (const auto& b : s->branches)
        if (contains_select(b)) return true;
    return contains_select(s->then_branch) || contains_select(s->else_branch);
}

// ---------------------------------------------------------------------------
// Sort inference: unify identifier sorts across all formulas of the model.
// ---------------------------------------------------------------------------

class SortInference {
public:
    explicit SortInference(MachineModel& m) : m_(m) {}

    void run() {
        changed_ = true;
        while (changed_) {
            changed_ = false;
            visit(m_.properties);
            visit(m_.invariant);
            for (auto& sp : m_.state_predicates) visit(sp.pred);
            visit_subst(m_.initialisation);
            for (auto& e : m_.events) {
                visit(e.guard);
                visit_subst(e.action);
            }
        }
        // untouched identifiers default to integer
        for (auto& [name, sort] : pending_)
            if (!m_.sorts.count(name)) m_.sorts[name] = Sort::integer();
    }

    void declare(const std::string& name) { pending_[name] = true; }

private:
    std::optional<Sort> sort_of(const ExprPtr& e) {
        switch (e->kind) {
        case Expr::Kind::IntLit: return Sort::integer();
        case Expr::Kind::EnumLit: return Sort::enumerated(e->set_name);
        case Expr::Kind::Ident: {
            auto it = m_.sorts.find(e->name);
            if (it != m_.sorts.end()) return it->second;
            return std::nullopt;
        }
        case Expr::Kind::Add:
        case Expr::Kind::Sub:
            force(e->lhs, Sort::integer());
            force(e->rhs, Sort::integer());
            return Sort::integer();
        }
        return std::nullopt;
    }

    void force(const ExprPtr& e, const Sort& s) {
        if (e->kind == Expr::Kind::Ident) {
            auto it = m_.sorts.find(e->name);
            if (it == m_.sorts.end()) {
                m_.sorts[e->name] = s;
                changed_ = true;
            } else if (it->second != s) {
                throw SortMismatch("identifier " + e->name + " used with two different sorts");
            }
            return;
        }
        auto have = sort_of(e);
        if (have && *have != s)
            throw SortMismatch("expression " + genesys::to_string(e) + " has wrong sort");
    }

    void unify(const ExprPtr& a, const ExprPtr& b) {
        auto sa = sort_of(a);
        auto sb = sort_of(b);
        if (sa && sb) {
            if (*sa != *sb)
                throw SortMismatch("comparison between different sorts: " + genesys::to_string(a) +
                                   " vs " + genesys::to_string(b));
        } else if (sa) {
            force(b, *sa);
        } else if (sb) {
            force(a, *sb);
        }
    }

    void visit(const PredPtr& p) {
        if (!p) return;
        switch (p->kind) {
        case Pred::Kind::Cmp:
            if (p->op != CmpOp::Eq && p->op != CmpOp::Ne) {
                force(p->e1, Sort::integer());
                force(p->e2, Sort::integer());
            }
            unify(p->e1, p->e2);
            break;
        case Pred::Kind::InInterval:
            force(p->e1, Sort::integer());
            force(p->e2, Sort::integer());
            force(p->e3, Sort::integer());
            break;
        case Pred::Kind::InSet: force(p->e1, Sort::enumerated(p->set_name)); break;
        case Pred::Kind::InNat: force(p->e1, Sort::integer()); break;
        default:
            visit(p->p1);
            visit(p->p2);
            break;
        }
    }

    void visit_subst(const SubstPtr& s) {
        if (!s) return;
        switch (s->kind) {
        case Subst::Kind::Assign: {
            auto it = m_.sorts.find(s->var);
            if (it != m_.sorts.end()) {
                force(s->expr, it->second);
            } else {
                auto se = sort_of(s->expr);
                if (se) {
                    m_.sorts[s->var] = *se;
                    changed_ = true;
                }
            }
            break;
        }
        case Subst::Kind::Parallel:
            for (const auto& b : s->branches) visit_subst(b);
            break;
        default:
            visit(s->cond);
            visit_subst(s->then_branch);
            visit_subst(s->else_branch);
            break;
        }
    }

    MachineModel& m_;
    std::map<std::string, bool> pending_;
    bool changed_ = false;
};

Symbols symbols_of(const MachineModel& m) {
    Symbols syms;
    for (const auto& v : m.variables) syms.declared.insert(v);
    for (const auto& c : m.constants) syms.declared.insert(c);
    for (const auto& e : m.external_idents) syms.declared.insert(e);
    syms.enum_literals = m.enum_literals;
    for (const auto& s : m.sets) syms.set_names.insert(s.first);
    return syms;
}

} // namespace

bool MachineModel::has_set(const std::string& s) const {
    return std::any_of(sets.begin(), sets.end(), [&](const auto& p) { return p.first == s; });
}

const std::vector<std::string>* MachineModel::set_elements(const std::string& s) const {
    for (const auto& p : sets)
        if (p.first == s) return &p.second;
    return nullptr;
}

// ---------------------------------------------------------------------------
// parse
// ---------------------------------------------------------------------------

MachineModel parse(const std::string& source) {
    std::vector<Token> toks = Lexer(source).run();

    MachineModel m;
    m.properties = Pred::truth();

    Symbols syms;
    std::set<std::string> externals;

    // header
    Parser header(toks, syms);
    if (header.accept_word("MACHINE")) {
        m.kind = MachineKind::Machine;
    } else if (header.accept_word("REFINEMENT")) {
        m.kind = MachineKind::Refinement;
    } else {
        throw SyntaxError("'MACHINE' or 'REFINEMENT'", header.peek().pos);
    }
    m.name = header.expect_name();
    if (header.accept_word("REFINES")) {
        if (m.kind != MachineKind::Refinement)
            throw SyntaxError("no REFINES clause in a MACHINE", header.peek().pos);
        m.refines = header.expect_name();
    } else if (m.kind == MachineKind::Refinement) {
        throw SyntaxError("'REFINES'", header.peek().pos);
    }

    auto check_fresh = [&](const std::string& name, SourcePos pos) {
        if (syms.declared.count(name) || syms.enum_literals.count(name) ||
            syms.set_names.count(name))
            throw DuplicateIdentifier(name, pos);
    };

    // SETS
    if (header.accept_word("SETS")) {
        do {
            SourcePos pos = header.peek().pos;
            std::string set_name = header.expect_name();
            check_fresh(set_name, pos);
            header.expect_sym("=");
            header.expect_sym("{");
            std::vector<std::string> elems;
            do {
                SourcePos epos = header.peek().pos;
                std::string el = header.expect_name();
                check_fresh(el, epos);
                syms.enum_literals[el] = set_name;
                elems.push_back(el);
            } while (header.accept_sym(","));
            header.expect_sym("}");
            syms.set_names.insert(set_name);
            m.sets.emplace_back(set_name, elems);
        } while (header.accept_sym(";") && !header.at_ident("CONSTANTS") &&
                 !header.at_ident("PROPERTIES") && !header.at_ident("VARIABLES"));
    }

    if (header.accept_word("CONSTANTS")) {
        do {
            SourcePos pos = header.peek().pos;
            std::string c = header.expect_name();
            check_fresh(c, pos);
            syms.declared.insert(c);
            m.constants.push_back(c);
        } while (header.accept_sym(","));
    }

    // From here on predicates appear; a refinement may reference abstract
    // identifiers that are only resolvable after linking.
    syms.collect_externals = (m.kind == MachineKind::Refinement);
    syms.externals = &externals;

    // Continue with a parser that carries the populated symbol table. Token
    // position is shared by reconstructing from the header's offset.
    Parser p(toks, syms);
    p.pos_ = header.pos_;

    if (p.accept_word("PROPERTIES")) m.properties = p.parse_pred();

    p.expect_word("VARIABLES");
    do {
        SourcePos pos = p.peek().pos;
        std::string v = p.expect_name();
        check_fresh(v, pos);
        syms.declared.insert(v);
        p.syms_.declared.insert(v);
        m.variables.push_back(v);
    } while (p.accept_sym(","));

    p.expect_word("INVARIANT");
    m.invariant = p.parse_pred();

    if (!p.accept_word("ASSERTIONS")) throw MissingAssertions();
    int state_idx = 0;
    do {
        std::string label;
        if (p.peek().kind == Tok::Ident && !is_keyword(p.peek().text) &&
            p.peek(1).kind == Tok::Sym && p.peek(1).text == "@") {
            label = p.next().text;
            p.next(); // '@'
        }
        PredPtr sp;
        if (!label.empty() || (p.peek().kind == Tok::Sym && p.peek().text == "(")) {
            p.expect_sym("(");
            sp = p.parse_pred();
            p.expect_sym(")");
        } else {
            // bare disjunct: conjunction level, `or` separates states
            sp = p.parse_and();
        }
        std::string name = label.empty() ? "S" + std::to_string(state_idx) : label;
        for (const auto& existing : m.state_predicates)
            if (existing.name == name) throw DuplicateIdentifier(name);
        m.state_predicates.push_back({name, sp});
        ++state_idx;
    } while (p.accept_word("or"));

    p.expect_word("INITIALISATION");
    m.initialisation = p.parse_subst();
    check_parallel(m.initialisation, "INITIALISATION", {});

    p.expect_word("OPERATIONS");
    do {
        Event ev;
        ev.pos = p.peek().pos;
        ev.name = p.expect_name();
        p.expect_sym("=");
        p.expect_word("SELECT");
        ev.guard = p.parse_pred();
        p.expect_word("THEN");
        ev.action = p.parse_subst();
        p.expect_word("END");
        if (contains_select(ev.action))
            throw SyntaxError("no nested SELECT inside an event action", ev.pos);
        check_parallel(ev.action, ev.name, ev.pos);
        for (const auto& other : m.events)
            if (other.name == ev.name) throw DuplicateIdentifier(ev.name, ev.pos);
        m.events.push_back(std::move(ev));
    } while (p.accept_sym(";"));

    p.expect_word("END");
    if (p.peek().kind != Tok::Eof) throw SyntaxError("end of input after END", p.peek().pos);

    m.enum_literals = syms.enum_literals;
    m.external_idents.assign(externals.begin(), externals.end());

    SortInference inf(m);
    for (const auto& v : m.variables) inf.declare(v);
    for (const auto& c : m.constants) inf.declare(c);
    for (const auto& e : m.external_idents) inf.declare(e);
    inf.run();

    return m;
}

// ---------------------------------------------------------------------------
// parse_predicate against an existing model's symbols
// ---------------------------------------------------------------------------

PredPtr parse_predicate(const std::string& text, const MachineModel& m) {
    Parser p(Lexer(text).run(), symbols_of(m));
    PredPtr result = p.parse_pred();
    if (p.peek().kind != Tok::Eof)
        throw SyntaxError("end of predicate", p.peek().pos);
    return result;
}

// ---------------------------------------------------------------------------
// resolve_refinement
// ---------------------------------------------------------------------------

namespace {

ExprPtr relabel_expr(const ExprPtr& e, const std::map<std::string, std::string>& enum_lits);

PredPtr relabel_pred(const PredPtr& p, const std::map<std::string, std::string>& enum_lits) {
    if (!p) return p;
    auto q = std::make_shared<Pred>(*p);
    q->e1 = relabel_expr(p->e1, enum_lits);
    q->e2 = relabel_expr(p->e2, enum_lits);
    q->e3 = relabel_expr(p->e3, enum_lits);
    q->p1 = relabel_pred(p->p1, enum_lits);
    q->p2 = relabel_pred(p->p2, enum_lits);
    return q;
}

ExprPtr relabel_expr(const ExprPtr& e, const std::map<std::string, std::string>& enum_lits) {
    if (!e) return e;
    if (e->kind == Expr::Kind::Ident) {
        auto it = enum_lits.find(e->name);
        if (it != enum_lits.end()) return Expr::enum_lit(e->name, it->second);
        return e;
    }
    if (e->kind == Expr::Kind::Add || e->kind == Expr::Kind::Sub) {
        auto q = std::make_shared<Expr>(*e);
        q->lhs = relabel_expr(e->lhs, enum_lits);
        q->rhs = relabel_expr(e->rhs, enum_lits);
        return q;
    }
    return e;
}

SubstPtr relabel_subst(const SubstPtr& s, const std::map<std::string, std::string>& enum_lits) {
    if (!s) return s;
    auto q = std::make_shared<Subst>(*s);
    q->expr = relabel_expr(s->expr, enum_lits);
    q->cond = relabel_pred(s->cond, enum_lits);
    q->then_branch = relabel_subst(s->then_branch, enum_lits);
    q->else_branch = relabel_subst(s->else_branch, enum_lits);
    q->branches.clear();
    for (const auto& b : s->branches) q->branches.push_back(relabel_subst(b, enum_lits));
    return q;
}

} // namespace

LinkedPair resolve_refinement(const MachineModel& concrete, const MachineModel& abstract_model) {
    if (concrete.kind != MachineKind::Refinement)
        throw SpecError("NotARefinement", concrete.name + " is not a REFINEMENT");
    if (!concrete.refines || *concrete.refines != abstract_model.name)
        throw NameMismatch(concrete.refines.value_or("<none>"), abstract_model.name);

    std::set<std::string> abs_events, conc_events;
    for (const auto& e : abstract_model.events) abs_events.insert(e.name);
    for (const auto& e : concrete.events) conc_events.insert(e.name);
    if (abs_events != conc_events) {
        std::string detail;
        for (const auto& e : conc_events)
            if (!abs_events.count(e)) detail += "+" + e + " ";
        for (const auto& e : abs_events)
            if (!conc_events.count(e)) detail += "-" + e + " ";
        throw EventSetMismatch(detail);
    }

    LinkedPair pair{&abstract_model, concrete, concrete.invariant};
    MachineModel& c = pair.concrete;

    // Resolve identifiers the refinement borrowed from the abstract level.
    std::set<std::string> conc_vars(c.variables.begin(), c.variables.end());
    std::map<std::string, std::string> borrowed_enum_lits;
    std::vector<std::string> still_external;
    for (const auto& name : c.external_idents) {
        if (std::find(abstract_model.constants.begin(), abstract_model.constants.end(), name) !=
            abstract_model.constants.end()) {
            c.constants.push_back(name);
            auto it = abstract_model.sorts.find(name);
            if (it != abstract_model.sorts.end()) {
                auto own = c.sorts.find(name);
                if (own != c.sorts.end() && own->second != it->second)
                    throw SortMismatch("constant " + name + " has different sorts across levels");
                c.sorts[name] = it->second;
            }
        } else if (abstract_model.enum_literals.count(name)) {
            borrowed_enum_lits[name] = abstract_model.enum_literals.at(name);
        } else {
            still_external.push_back(name);
        }
    }
    if (!still_external.empty()) throw UnboundIdentifier(still_external.front(), {});

    // Abstract variables must be kept (variable-superset refinement only).
    for (const auto& v : abstract_model.variables)
        if (!conc_vars.count(v))
            throw SpecError("DroppedVariable",
                            "refinement drops abstract variable " + v +
                                "; only variable-superset refinements are supported");

    if (!borrowed_enum_lits.empty()) {
        c.properties = relabel_pred(c.properties, borrowed_enum_lits);
        c.invariant = relabel_pred(c.invariant, borrowed_enum_lits);
        for (auto& sp : c.state_predicates) sp.pred = relabel_pred(sp.pred, borrowed_enum_lits);
        c.initialisation = relabel_subst(c.initialisation, borrowed_enum_lits);
        for (auto& e : c.events) {
            e.guard = relabel_pred(e.guard, borrowed_enum_lits);
            e.action = relabel_subst(e.action, borrowed_enum_lits);
        }
        pair.gluing = c.invariant;
        for (auto& [lit, set] : borrowed_enum_lits) c.enum_literals[lit] = set;
    }

    // Merge abstract sets and properties into the concrete view.
    for (const auto& s : abstract_model.sets)
        if (!c.has_set(s.first)) c.sets.push_back(s);
    for (const auto& [lit, set] : abstract_model.enum_literals)
        c.enum_literals.emplace(lit, set);
    c.properties = Pred::conj(abstract_model.properties, c.properties);
    for (const auto& [name, sort] : abstract_model.sorts) c.sorts.emplace(name, sort);
    c.external_idents.clear();

    return pair;
}

// ---------------------------------------------------------------------------
// Machine pretty-printer (round-trips through parse)
// ---------------------------------------------------------------------------

std::string to_string(const MachineModel& m) {
    std::ostringstream os;
    os << (m.kind == MachineKind::Machine ? "MACHINE" : "REFINEMENT") << " " << m.name << "\n";
    if (m.refines) os << "REFINES " << *m.refines << "\n";
    if (!m.sets.empty()) {
        os << "SETS\n";
        for (std::size_t i = 0; i < m.sets.size(); ++i) {
            os << "  " << m.sets[i].first << " = {";
            for (std::size_t j = 0; j < m.sets[i].second.size(); ++j)
                os << (j ? ", " : "") << m.sets[i].second[j];
            os << "}" << (i + 1 < m.sets.size() ? ";" : "") << "\n";
        }
    }
    if (!m.constants.empty()) {
        os << "CONSTANTS ";
        for (std::size_t i = 0; i < m.constants.size(); ++i)
            os << (i ? ", " : "") << m.constants[i];
        os << "\n";
    }
    if (m.properties && m.properties->kind != Pred::Kind::True)
        os << "PROPERTIES " << to_string(m.properties) << "\n";
    os << "VARIABLES ";
    for (std::size_t i = 0; i < m.variables.size(); ++i) os << (i ? ", " : "") << m.variables[i];
    os << "\n";
    os << "INVARIANT " << to_string(m.invariant) << "\n";
    os << "ASSERTIONS\n";
    for (std::size_t i = 0; i < m.state_predicates.size(); ++i) {
        const auto& sp = m.state_predicates[i];
        os << "  " << (i ? "or " : "") << sp.name << "@(" << to_string(sp.pred) << ")\n";
    }
    os << "INITIALISATION " << to_string(m.initialisation) << "\n";
    os << "OPERATIONS\n";
    for (std::size_t i = 0; i < m.events.size(); ++i) {
        const auto& e = m.events[i];
        os << "  " << e.name << " = SELECT " << to_string(e.guard) << " THEN "
           << to_string(e.action) << " END" << (i + 1 < m.events.size() ? ";" : "") << "\n";
    }
    os << "END\n";
    return os.str();
}

} // namespace genesys
