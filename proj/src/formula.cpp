#include "g2ws/formula.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>
#include <unordered_map>

namespace g2ws {

FormulaPtr make_node(Conn c, std::string n, FormulaPtr l, FormulaPtr r) {
    return FormulaPtr(new Formula(c, std::move(n), std::move(l), std::move(r)));
}

FormulaPtr Formula::falsum() {
    static const FormulaPtr f = make_node(Conn::Falsum, "", nullptr, nullptr);
    return f;
}
FormulaPtr Formula::verum() {
    static const FormulaPtr f = make_node(Conn::Verum, "", nullptr, nullptr);
    return f;
}
FormulaPtr Formula::atom(std::string name) { return make_node(Conn::Atom, std::move(name), nullptr, nullptr); }
FormulaPtr Formula::constant(std::string name) { return make_node(Conn::Const, std::move(name), nullptr, nullptr); }
FormulaPtr Formula::neg(FormulaPtr f) { return make_node(Conn::Not, "", std::move(f), nullptr); }
FormulaPtr Formula::box(FormulaPtr f) { return make_node(Conn::Box, "", std::move(f), nullptr); }
FormulaPtr Formula::pr(FormulaPtr f) { return make_node(Conn::Pr, "", std::move(f), nullptr); }
FormulaPtr Formula::conj(FormulaPtr a, FormulaPtr b) { return make_node(Conn::And, "", std::move(a), std::move(b)); }
FormulaPtr Formula::disj(FormulaPtr a, FormulaPtr b) { return make_node(Conn::Or, "", std::move(a), std::move(b)); }
FormulaPtr Formula::imp(FormulaPtr a, FormulaPtr b) { return make_node(Conn::Imp, "", std::move(a), std::move(b)); }
FormulaPtr Formula::iff(FormulaPtr a, FormulaPtr b) { return make_node(Conn::Iff, "", std::move(a), std::move(b)); }

int compare(const FormulaPtr& a, const FormulaPtr& b) {
    if (a.get() == b.get()) return 0;
    if (a->conn != b->conn) return a->conn < b->conn ? -1 : 1;
    if (int c = a->name.compare(b->name); c != 0) return c < 0 ? -1 : 1;
    const bool la = a->lhs != nullptr, lb = b->lhs != nullptr;
    if (la != lb) return la < lb ? -1 : 1;
    if (la)
        if (int c = compare(a->lhs, b->lhs); c != 0) return c;
    const bool ra = a->rhs != nullptr, rb = b->rhs != nullptr;
    if (ra != rb) return ra < rb ? -1 : 1;
    if (ra)
        if (int c = compare(a->rhs, b->rhs); c != 0) return c;
    return 0;
}

bool equal(const FormulaPtr& a, const FormulaPtr& b) { return compare(a, b) == 0; }

// ---------------------------------------------------------------- lexer

namespace {

enum class Tok { Iff, Imp, Or, And, Not, Box, Hash, POpen, LParen, RParen, Bot, Top, Ident, End };

struct Token {
    Tok kind;
    std::string text;
    std::size_t offset;
};

struct Lexer {
    std::string_view src;
    std::size_t pos = 0;

    Token next() {
        while (pos < src.size() && std::isspace(static_cast<unsigned char>(src[pos]))) ++pos;
        const std::size_t at = pos;
        if (pos >= src.size()) return {Tok::End, "", at};
        const char c = src[pos];
        if (c == '<') {
            if (src.substr(pos, 3) == "<->") {
                pos += 3;
                return {Tok::Iff, "<->", at};
            }
            throw ParseError(at, "unknown token '<'");
        }
        if (c == '-') {
            if (src.substr(pos, 2) == "->") {
                pos += 2;
                return {Tok::Imp, "->", at};
            }
            throw ParseError(at, "unknown token '-'");
        }
        if (c == '[') {
            if (src.substr(pos, 2) == "[]") {
                pos += 2;
                return {Tok::Box, "[]", at};
            }
            throw ParseError(at, "unknown token '['");
        }
        if (c == '|') { ++pos; return {Tok::Or, "|", at}; }
        if (c == '&') { ++pos; return {Tok::And, "&", at}; }
        if (c == '~') { ++pos; return {Tok::Not, "~", at}; }
        if (c == '#') { ++pos; return {Tok::Hash, "#", at}; }
        if (c == '(') { ++pos; return {Tok::LParen, "(", at}; }
        if (c == ')') { ++pos; return {Tok::RParen, ")", at}; }
        if (c == 'P') { ++pos; return {Tok::POpen, "P", at}; }
        if (std::islower(static_cast<unsigned char>(c))) {
            std::size_t end = pos + 1;
            while (end < src.size() &&
                   (std::islower(static_cast<unsigned char>(src[end])) ||
                    std::isdigit(static_cast<unsigned char>(src[end])) || src[end] == '_'))
                ++end;
            std::string word(src.substr(pos, end - pos));
            pos = end;
            if (word == "bot") return {Tok::Bot, word, at};
            if (word == "top") return {Tok::Top, word, at};
            return {Tok::Ident, word, at};
        }
        throw ParseError(at, std::string("unknown token '") + c + "'");
    }
};

struct Parser {
    Lexer lex;
    Token cur;

    explicit Parser(std::string_view s) : lex{s} { cur = lex.next(); }

    void advance() { cur = lex.next(); }

    void expect(Tok k, const char* what) {
        if (cur.kind != k) throw ParseError(cur.offset, std::string("expected ") + what);
        advance();
    }

    FormulaPtr formula() {
        FormulaPtr f = imp();
        while (cur.kind == Tok::Iff) {
            advance();
            f = Formula::iff(f, imp());
        }
        return f;
    }

    FormulaPtr imp() {
        FormulaPtr l = disj();
        if (cur.kind == Tok::Imp) {
            advance();
            return Formula::imp(l, imp());
        }
        return l;
    }

    FormulaPtr disj() {
        FormulaPtr f = conj();
        while (cur.kind == Tok::Or) {
            advance();
            f = Formula::disj(f, conj());
        }
        return f;
    }

    FormulaPtr conj() {
        FormulaPtr f = unary();
        while (cur.kind == Tok::And) {
            advance();
            f = Formula::conj(f, unary());
        }
        return f;
    }

    FormulaPtr unary() {
        if (cur.kind == Tok::Not) {
            advance();
            return Formula::neg(unary());
        }
        if (cur.kind == Tok::Box) {
            advance();
            return Formula::box(unary());
        }
        return prim();
    }

    FormulaPtr prim() {
        switch (cur.kind) {
            case Tok::Bot: advance(); return Formula::falsum();
            case Tok::Top: advance(); return Formula::verum();
            case Tok::Ident: {
                std::string n = cur.text;
                advance();
                return Formula::atom(std::move(n));
            }
            case Tok::Hash: {
                advance();
                if (cur.kind != Tok::Ident) throw ParseError(cur.offset, "expected constant name after '#'");
                std::string n = cur.text;
                advance();
                return Formula::constant(std::move(n));
            }
            case Tok::POpen: {
                advance();
                expect(Tok::LParen, "'(' after P");
                FormulaPtr f = formula();
                expect(Tok::RParen, "')'");
                return Formula::pr(std::move(f));
            }
            case Tok::LParen: {
                advance();
                FormulaPtr f = formula();
                expect(Tok::RParen, "')'");
                return f;
            }
            default: throw ParseError(cur.offset, "expected a formula");
        }
    }
};

}  // namespace

FormulaPtr parse_formula(std::string_view text) {
    Parser p(text);
    FormulaPtr f = p.formula();
    if (p.cur.kind != Tok::End) throw ParseError(p.cur.offset, "trailing input");
    return f;
}

// ---------------------------------------------------------------- printer

namespace {

// Binding levels: iff 1, imp 2, or 3, and 4, unary 5, prim 6.
int level_of(const FormulaPtr& f) {
    switch (f->conn) {
        case Conn::Iff: return 1;
        case Conn::Imp: return 2;
        case Conn::Or: return 3;
        case Conn::And: return 4;
        case Conn::Not:
        case Conn::Box: return 5;
        default: return 6;
    }
}

void render(const FormulaPtr& f, int min_level, std::string& out) {
    const int lv = level_of(f);
    const bool paren = lv < min_level;
    if (paren) out += '(';
    switch (f->conn) {
        case Conn::Falsum: out += "bot"; break;
        case Conn::Verum: out += "top"; break;
        case Conn::Atom: out += f->name; break;
        case Conn::Const:
            out += '#';
            out += f->name;
            break;
        case Conn::Not:
            out += '~';
            render(f->lhs, 5, out);
            break;
        case Conn::Box:
            out += "[]";
            render(f->lhs, 5, out);
            break;
        case Conn::Pr:
            out += "P(";
            render(f->lhs, 1, out);
            out += ')';
            break;
        case Conn::And:
            render(f->lhs, 4, out);
            out += " & ";
            render(f->rhs, 5, out);
            break;
        case Conn::Or:
            render(f->lhs, 3, out);
            out += " | ";
            render(f->rhs, 4, out);
            break;
        case Conn::Imp:
            render(f->lhs, 3, out);
            out += " -> ";
            render(f->rhs, 2, out);
            break;
        case Conn::Iff:
            render(f->lhs, 1, out);
            out += " <-> ";
            render(f->rhs, 2, out);
            break;
    }
    if (paren) out += ')';
}

}  // namespace

std::string print_formula(const FormulaPtr& f) {
    std::string out;
    render(f, 1, out);
    return out;
}

// ---------------------------------------------------------------- structure

namespace {

bool modalized_rec(const std::string& c, const FormulaPtr& f, bool under_box) {
    if (!f) return true;
    switch (f->conn) {
        case Conn::Const:
            return f->name != c || under_box;
        case Conn::Box:
        case Conn::Pr:
            return modalized_rec(c, f->lhs, true);
        default:
            return modalized_rec(c, f->lhs, under_box) && modalized_rec(c, f->rhs, under_box);
    }
}

void collect_constants(const FormulaPtr& f, std::vector<std::string>& out) {
    if (!f) return;
    if (f->conn == Conn::Const) {
        if (std::find(out.begin(), out.end(), f->name) == out.end()) out.push_back(f->name);
        return;
    }
    collect_constants(f->lhs, out);
    collect_constants(f->rhs, out);
}

}  // namespace

bool is_modalized(const std::string& c, const FormulaPtr& f) { return modalized_rec(c, f, false); }

std::vector<std::string> constants_of(const FormulaPtr& f) {
    std::vector<std::string> out;
    collect_constants(f, out);
    return out;
}

void FixedPointEnv::define(const std::string& name, FormulaPtr def) {
    if (name == kTau) throw EnvError("the reserved constant 'tau' cannot be defined");
    if (lookup(name)) throw EnvError("constant '" + name + "' is already defined");
    for (const std::string& c : constants_of(def)) {
        if (c == name || c == kTau || lookup(c)) continue;
        throw EnvError("definition of '" + name + "' references undeclared constant '" + c + "'");
    }
    if (!is_modalized(name, def))
        throw EnvError("constant '" + name + "' occurs unboxed in its own definition");
    defs_.emplace_back(name, std::move(def));
}

const FormulaPtr* FixedPointEnv::lookup(const std::string& name) const {
    for (const auto& [n, d] : defs_)
        if (n == name) return &d;
    return nullptr;
}

bool FixedPointEnv::is_declared(const std::string& name) const {
    return name == kTau || lookup(name) != nullptr;
}

bool is_sigma_box(const FormulaPtr& f, const FixedPointEnv& env) {
    switch (f->conn) {
        case Conn::Falsum:
        case Conn::Verum:
        case Conn::Box:
            return true;
        case Conn::And:
        case Conn::Or:
            return is_sigma_box(f->lhs, env) && is_sigma_box(f->rhs, env);
        case Conn::Const: {
            if (f->name == FixedPointEnv::kTau) return false;
            const FormulaPtr* def = env.lookup(f->name);
            if (!def) throw LogicError("unresolved constant '#" + f->name + "'");
            return is_sigma_box(*def, env);
        }
        case Conn::Imp:
            return f->lhs->conn == Conn::Const && f->lhs->name == FixedPointEnv::kTau &&
                   is_sigma_box(f->rhs, env);
        default:
            return false;
    }
}

// ---------------------------------------------------------------- tautology

namespace {

constexpr int kMaxOpaqueAtoms = 24;

void collect_opaque(const FormulaPtr& f, std::vector<std::string>& order,
                    std::unordered_map<std::string, int>& index) {
    switch (f->conn) {
        case Conn::Falsum:
        case Conn::Verum:
            return;
        case Conn::Atom:
        case Conn::Const:
        case Conn::Box:
        case Conn::Pr: {
            std::string key = print_formula(f);
            if (index.emplace(key, static_cast<int>(order.size())).second) order.push_back(key);
            return;
        }
        default:
            collect_opaque(f->lhs, order, index);
            if (f->rhs) collect_opaque(f->rhs, order, index);
    }
}

bool eval_opaque(const FormulaPtr& f, const std::unordered_map<std::string, int>& index,
                 unsigned long mask) {
    switch (f->conn) {
        case Conn::Falsum: return false;
        case Conn::Verum: return true;
        case Conn::Not: return !eval_opaque(f->lhs, index, mask);
        case Conn::And: return eval_opaque(f->lhs, index, mask) && eval_opaque(f->rhs, index, mask);
        case Conn::Or: return eval_opaque(f->lhs, index, mask) || eval_opaque(f->rhs, index, mask);
        case Conn::Imp: return !eval_opaque(f->lhs, index, mask) || eval_opaque(f->rhs, index, mask);
        case Conn::Iff: return eval_opaque(f->lhs, index, mask) == eval_opaque(f->rhs, index, mask);
        default: {
            auto it = index.find(print_formula(f));
            return (mask >> it->second) & 1u;
        }
    }
}

}  // namespace

bool taut_check(const FormulaPtr& f) {
    std::vector<std::string> order;
    std::unordered_map<std::string, int> index;
    collect_opaque(f, order, index);
    if (order.size() > kMaxOpaqueAtoms)
        throw LogicError("tautology check limited to " + std::to_string(kMaxOpaqueAtoms) +
                         " opaque atoms");
    const unsigned long total = 1ul << order.size();
    for (unsigned long mask = 0; mask < total; ++mask)
        if (!eval_opaque(f, index, mask)) return false;
    return true;
}

bool prop_consequence(const std::vector<FormulaPtr>& premises, const FormulaPtr& goal) {
    FormulaPtr chain = goal;
    for (auto it = premises.rbegin(); it != premises.rend(); ++it) chain = Formula::imp(*it, chain);
    return taut_check(chain);
}

}  // namespace g2ws
