#include "g2ws/arith.hpp"

#include "g2ws/formula.hpp"  // ParseError

#include <algorithm>
#include <cctype>
#include <functional>
#include <set>
#include <sstream>

namespace g2ws {

TermPtr ArithTerm::zero() {
    static const TermPtr z = TermPtr(new ArithTerm{TermKind::Zero, "", nullptr, nullptr});
    return z;
}
TermPtr ArithTerm::variable(std::string name) {
    return TermPtr(new ArithTerm{TermKind::Var, std::move(name), nullptr, nullptr});
}
TermPtr ArithTerm::succ(TermPtr t) {
    return TermPtr(new ArithTerm{TermKind::Succ, "", std::move(t), nullptr});
}
TermPtr ArithTerm::plus(TermPtr a, TermPtr b) {
    return TermPtr(new ArithTerm{TermKind::Plus, "", std::move(a), std::move(b)});
}
TermPtr ArithTerm::times(TermPtr a, TermPtr b) {
    return TermPtr(new ArithTerm{TermKind::Times, "", std::move(a), std::move(b)});
}

QFPtr QFFormula::eq(TermPtr a, TermPtr b) {
    return QFPtr(new QFFormula{QFKind::Eq, std::move(a), std::move(b), nullptr, nullptr});
}
QFPtr QFFormula::le(TermPtr a, TermPtr b) {
    return QFPtr(new QFFormula{QFKind::Le, std::move(a), std::move(b), nullptr, nullptr});
}
QFPtr QFFormula::qnot(QFPtr f) {
    return QFPtr(new QFFormula{QFKind::Not, nullptr, nullptr, std::move(f), nullptr});
}
QFPtr QFFormula::qand(QFPtr a, QFPtr b) {
    return QFPtr(new QFFormula{QFKind::And, nullptr, nullptr, std::move(a), std::move(b)});
}
QFPtr QFFormula::qor(QFPtr a, QFPtr b) {
    return QFPtr(new QFFormula{QFKind::Or, nullptr, nullptr, std::move(a), std::move(b)});
}

NFPtr NFFormula::eq(TermPtr a, TermPtr b) {
    return NFPtr(new NFFormula{NFKind::Eq, std::move(a), std::move(b), nullptr, nullptr, ""});
}
NFPtr NFFormula::nand(NFPtr a, NFPtr b) {
    return NFPtr(new NFFormula{NFKind::And, nullptr, nullptr, std::move(a), std::move(b), ""});
}
NFPtr NFFormula::nor(NFPtr a, NFPtr b) {
    return NFPtr(new NFFormula{NFKind::Or, nullptr, nullptr, std::move(a), std::move(b), ""});
}
NFPtr NFFormula::exists(std::string v, NFPtr body) {
    return NFPtr(new NFFormula{NFKind::Exists, nullptr, nullptr, std::move(body), nullptr, std::move(v)});
}

int term_degree(const TermPtr& t) {
    switch (t->kind) {
        case TermKind::Zero: return 1;
        case TermKind::Var: return 0;
        case TermKind::Succ: return 1 + term_degree(t->lhs);
        case TermKind::Plus:
        case TermKind::Times: return 1 + term_degree(t->lhs) + term_degree(t->rhs);
    }
    return 0;
}

bool is_simple(const TermPtr& t) { return term_degree(t) <= 1; }

namespace {

void vars_of_term(const TermPtr& t, std::vector<std::string>& out) {
    if (!t) return;
    if (t->kind == TermKind::Var) {
        if (std::find(out.begin(), out.end(), t->var) == out.end()) out.push_back(t->var);
        return;
    }
    vars_of_term(t->lhs, out);
    vars_of_term(t->rhs, out);
}

void vars_of_qf(const QFPtr& f, std::vector<std::string>& out) {
    if (!f) return;
    vars_of_term(f->t0, out);
    vars_of_term(f->t1, out);
    vars_of_qf(f->f0, out);
    vars_of_qf(f->f1, out);
}

// Deterministic fresh names y1, y2, ... skipping anything already used.
class FreshNamer {
public:
    explicit FreshNamer(std::vector<std::string> used) : used_(used.begin(), used.end()) {}
    std::string next() {
        while (true) {
            std::string cand = "y" + std::to_string(++counter_);
            if (used_.insert(cand).second) return cand;
        }
    }

private:
    std::set<std::string> used_;
    int counter_ = 0;
};

std::vector<std::string> used_names(const QFPtr& source, const NFPtr& nf) {
    std::vector<std::string> used;
    vars_of_qf(source, used);
    // bound names already present in the intermediate formula
    std::function<void(const NFPtr&)> walk = [&](const NFPtr& f) {
        if (!f) return;
        if (f->kind == NFKind::Exists &&
            std::find(used.begin(), used.end(), f->bound) == used.end())
            used.push_back(f->bound);
        vars_of_term(f->t0, used);
        vars_of_term(f->t1, used);
        walk(f->f0);
        walk(f->f1);
    };
    walk(nf);
    return used;
}

NFPtr eliminate_rec(const QFPtr& f, bool positive, FreshNamer& names) {
    switch (f->kind) {
        case QFKind::Not:
            return eliminate_rec(f->f0, !positive, names);
        case QFKind::And: {
            NFPtr a = eliminate_rec(f->f0, positive, names);
            NFPtr b = eliminate_rec(f->f1, positive, names);
            return positive ? NFFormula::nand(a, b) : NFFormula::nor(a, b);
        }
        case QFKind::Or: {
            NFPtr a = eliminate_rec(f->f0, positive, names);
            NFPtr b = eliminate_rec(f->f1, positive, names);
            return positive ? NFFormula::nor(a, b) : NFFormula::nand(a, b);
        }
        case QFKind::Eq: {
            if (positive) return NFFormula::eq(f->t0, f->t1);
            // t0 != t1  ~>  t0 !<= t1 | t1 !<= t0
            const std::string z1 = names.next();
            NFPtr left = NFFormula::exists(
                z1, NFFormula::eq(ArithTerm::plus(f->t1, ArithTerm::succ(ArithTerm::variable(z1))),
                                  f->t0));
            const std::string z2 = names.next();
            NFPtr right = NFFormula::exists(
                z2, NFFormula::eq(ArithTerm::plus(f->t0, ArithTerm::succ(ArithTerm::variable(z2))),
                                  f->t1));
            return NFFormula::nor(left, right);
        }
        case QFKind::Le: {
            if (positive) {
                const std::string z = names.next();
                return NFFormula::exists(
                    z, NFFormula::eq(ArithTerm::plus(f->t0, ArithTerm::variable(z)), f->t1));
            }
            const std::string z = names.next();
            return NFFormula::exists(
                z, NFFormula::eq(ArithTerm::plus(f->t1, ArithTerm::succ(ArithTerm::variable(z))),
                                 f->t0));
        }
    }
    throw ArithError("unreachable");
}

// Rewrites one term to a simple one, pushing defining equations for nested
// arguments. Equations may themselves need further flattening; innermost
// arguments are handled first, left to right.
TermPtr flatten_term(const TermPtr& t, FreshNamer& names,
                     std::vector<std::pair<std::string, TermPtr>>& defs) {
    if (is_simple(t)) return t;
    auto lift = [&](const TermPtr& child) -> TermPtr {
        if (child->kind == TermKind::Var) return child;
        const TermPtr inner = flatten_term(child, names, defs);
        const std::string v = names.next();
        defs.emplace_back(v, inner);
        return ArithTerm::variable(v);
    };
    switch (t->kind) {
        case TermKind::Succ: return ArithTerm::succ(lift(t->lhs));
        case TermKind::Plus: {
            TermPtr a = lift(t->lhs);
            TermPtr b = lift(t->rhs);
            return ArithTerm::plus(std::move(a), std::move(b));
        }
        case TermKind::Times: {
            TermPtr a = lift(t->lhs);
            TermPtr b = lift(t->rhs);
            return ArithTerm::times(std::move(a), std::move(b));
        }
        default: return t;  // Zero and Var are simple
    }
}

NFPtr flatten_rec(const NFPtr& f, FreshNamer& names) {
    switch (f->kind) {
        case NFKind::Eq: {
            std::vector<std::pair<std::string, TermPtr>> defs;
            TermPtr a = flatten_term(f->t0, names, defs);
            TermPtr b = flatten_term(f->t1, names, defs);
            NFPtr body = NFFormula::eq(std::move(a), std::move(b));
            for (auto it = defs.rbegin(); it != defs.rend(); ++it)
                body = NFFormula::nand(NFFormula::eq(ArithTerm::variable(it->first), it->second),
                                       body);
            for (auto it = defs.rbegin(); it != defs.rend(); ++it)
                body = NFFormula::exists(it->first, body);
            return body;
        }
        case NFKind::And: return NFFormula::nand(flatten_rec(f->f0, names), flatten_rec(f->f1, names));
        case NFKind::Or: return NFFormula::nor(flatten_rec(f->f0, names), flatten_rec(f->f1, names));
        case NFKind::Exists: return NFFormula::exists(f->bound, flatten_rec(f->f0, names));
    }
    throw ArithError("unreachable");
}

}  // namespace

std::vector<std::string> free_vars_term(const TermPtr& t) {
    std::vector<std::string> out;
    vars_of_term(t, out);
    return out;
}

std::vector<std::string> free_vars(const QFPtr& f) {
    std::vector<std::string> out;
    vars_of_qf(f, out);
    return out;
}

NFPtr eliminate_comparisons(const QFPtr& f) {
    FreshNamer names(free_vars(f));
    return eliminate_rec(f, true, names);
}

NFPtr flatten_terms(const NFPtr& f, const QFPtr& source) {
    FreshNamer names(used_names(source, f));
    return flatten_rec(f, names);
}

// ---------------------------------------------------------------- pipeline

namespace {

struct MatrixTree {
    // leaf rows hold one or two entries (plain or split equality)
    std::vector<std::vector<MatrixEntry>> rows;
};

void collect_prefix(const NFPtr& f, std::vector<std::string>& prefix) {
    if (!f) return;
    if (f->kind == NFKind::Exists) prefix.push_back(f->bound);
    collect_prefix(f->f0, prefix);
    collect_prefix(f->f1, prefix);
}

MatrixTree build_rows(const NFPtr& f, const std::set<std::string>& vars, FreshNamer& names,
                      std::vector<std::string>& prefix) {
    switch (f->kind) {
        case NFKind::Exists:
            return build_rows(f->f0, vars, names, prefix);
        case NFKind::Eq: {
            MatrixTree t;
            if (f->t0->kind == TermKind::Var && vars.count(f->t0->var)) {
                t.rows.push_back({{f->t0->var, f->t1}});
            } else {
                const std::string z = names.next();
                prefix.push_back(z);
                t.rows.push_back({{z, f->t0}, {z, f->t1}});
            }
            return t;
        }
        case NFKind::Or: {
            MatrixTree a = build_rows(f->f0, vars, names, prefix);
            MatrixTree b = build_rows(f->f1, vars, names, prefix);
            for (auto& r : b.rows) a.rows.push_back(std::move(r));
            return a;
        }
        case NFKind::And: {
            MatrixTree a = build_rows(f->f0, vars, names, prefix);
            MatrixTree b = build_rows(f->f1, vars, names, prefix);
            MatrixTree out;
            for (const auto& ra : a.rows)
                for (const auto& rb : b.rows) {
                    std::vector<MatrixEntry> row = ra;
                    row.insert(row.end(), rb.begin(), rb.end());
                    out.rows.push_back(std::move(row));
                }
            return out;
        }
    }
    throw ArithError("unreachable");
}

}  // namespace

ExistentialDNF to_existential_dnf(const QFPtr& f) {
    ExistentialDNF out;
    out.free_vars = free_vars(f);

    FreshNamer names(out.free_vars);
    NFPtr stage1 = eliminate_rec(f, true, names);
    NFPtr stage2 = flatten_rec(stage1, names);

    out.prefix.clear();
    collect_prefix(stage2, out.prefix);

    std::set<std::string> vars(out.free_vars.begin(), out.free_vars.end());
    vars.insert(out.prefix.begin(), out.prefix.end());
    MatrixTree tree = build_rows(stage2, vars, names, out.prefix);
    out.rows = std::move(tree.rows);

    std::size_t width = 0;
    for (const auto& row : out.rows) width = std::max(width, row.size());
    for (auto& row : out.rows)
        while (row.size() < width) row.push_back(row.back());

    out.validate();
    return out;
}

void ExistentialDNF::validate() const {
    std::set<std::string> names(free_vars.begin(), free_vars.end());
    if (names.size() != free_vars.size()) throw ArithError("duplicate free variable");
    for (const std::string& y : prefix)
        if (!names.insert(y).second) throw ArithError("prefix variable '" + y + "' is not fresh");
    if (rows.empty()) throw ArithError("matrix has no rows");
    const std::size_t width = rows.front().size();
    if (width == 0) throw ArithError("matrix row is empty");
    for (const auto& row : rows) {
        if (row.size() != width) throw ArithError("matrix rows differ in length");
        for (const MatrixEntry& e : row) {
            if (!names.count(e.z)) throw ArithError("matrix variable '" + e.z + "' is unknown");
            if (!is_simple(e.t)) throw ArithError("matrix term is not simple: " + print_term(e.t));
            for (const std::string& v : free_vars_term(e.t))
                if (!names.count(v)) throw ArithError("term variable '" + v + "' is unknown");
        }
    }
}

std::string ExistentialDNF::to_string() const {
    std::ostringstream outs;
    if (!prefix.empty()) {
        outs << "exists";
        for (const std::string& y : prefix) outs << ' ' << y;
        outs << " . ";
    }
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (i) outs << " | ";
        outs << '(';
        for (std::size_t j = 0; j < rows[i].size(); ++j) {
            if (j) outs << " & ";
            outs << rows[i][j].z << " = " << print_term(rows[i][j].t);
        }
        outs << ')';
    }
    return outs.str();
}

// ---------------------------------------------------------------- semantics

std::uint64_t eval_term(const TermPtr& t, const Assignment& a) {
    switch (t->kind) {
        case TermKind::Zero: return 0;
        case TermKind::Var: {
            auto it = a.find(t->var);
            if (it == a.end()) throw ArithError("unbound variable '" + t->var + "'");
            return it->second;
        }
        case TermKind::Succ: return eval_term(t->lhs, a) + 1;
        case TermKind::Plus: return eval_term(t->lhs, a) + eval_term(t->rhs, a);
        case TermKind::Times: return eval_term(t->lhs, a) * eval_term(t->rhs, a);
    }
    throw ArithError("unreachable");
}

bool eval_qf(const QFPtr& f, const Assignment& a) {
    switch (f->kind) {
        case QFKind::Eq: return eval_term(f->t0, a) == eval_term(f->t1, a);
        case QFKind::Le: return eval_term(f->t0, a) <= eval_term(f->t1, a);
        case QFKind::Not: return !eval_qf(f->f0, a);
        case QFKind::And: return eval_qf(f->f0, a) && eval_qf(f->f1, a);
        case QFKind::Or: return eval_qf(f->f0, a) || eval_qf(f->f1, a);
    }
    throw ArithError("unreachable");
}

namespace {

void subterm_values(const TermPtr& t, const Assignment& a, std::uint64_t& best) {
    best = std::max(best, eval_term(t, a));
    if (t->lhs) subterm_values(t->lhs, a, best);
    if (t->rhs) subterm_values(t->rhs, a, best);
}

std::uint64_t max_subterm_value(const QFPtr& f, const Assignment& a) {
    std::uint64_t best = 0;
    if (f->t0) subterm_values(f->t0, a, best);
    if (f->t1) subterm_values(f->t1, a, best);
    if (f->f0) best = std::max(best, max_subterm_value(f->f0, a));
    if (f->f1) best = std::max(best, max_subterm_value(f->f1, a));
    return best;
}

// Solvability of one matrix row with unknowns searched in [0, W]. Determined
// chains are propagated; residual unknowns are searched directly.
bool row_satisfiable(const std::vector<MatrixEntry>& row, const Assignment& frees,
                     std::uint64_t W) {
    Assignment known = frees;

    auto value_of = [&](const TermPtr& t) -> std::optional<std::uint64_t> {
        for (const std::string& v : free_vars_term(t))
            if (!known.count(v)) return std::nullopt;
        return eval_term(t, known);
    };

    auto assign = [&](const std::string& v, std::uint64_t val) -> bool {
        if (val > W) return false;
        known[v] = val;
        return true;
    };

    bool progress = true;
    while (progress) {
        progress = false;
        for (const MatrixEntry& e : row) {
            const bool z_known = known.count(e.z) > 0;
            const auto tv = value_of(e.t);
            if (z_known && tv) {
                if (known[e.z] != *tv) return false;
                continue;
            }
            if (!z_known && tv) {
                if (!assign(e.z, *tv)) return false;
                progress = true;
                continue;
            }
            if (!z_known) continue;  // two or more unknowns on the whole equation
            const std::uint64_t zv = known[e.z];
            // invert simple shapes with a single unknown on the right
            const TermPtr& t = e.t;
            auto single_unknown = [&](const TermPtr& u) {
                return u->kind == TermKind::Var && !known.count(u->var);
            };
            if (t->kind == TermKind::Var && single_unknown(t)) {
                if (!assign(t->var, zv)) return false;
                progress = true;
            } else if (t->kind == TermKind::Succ && single_unknown(t->lhs)) {
                if (zv == 0) return false;
                if (!assign(t->lhs->var, zv - 1)) return false;
                progress = true;
            } else if (t->kind == TermKind::Plus) {
                const auto lv = value_of(t->lhs), rv = value_of(t->rhs);
                if (lv && !rv && single_unknown(t->rhs)) {
                    if (zv < *lv) return false;
                    if (!assign(t->rhs->var, zv - *lv)) return false;
                    progress = true;
                } else if (rv && !lv && single_unknown(t->lhs)) {
                    if (zv < *rv) return false;
                    if (!assign(t->lhs->var, zv - *rv)) return false;
                    progress = true;
                }
            } else if (t->kind == TermKind::Times) {
                const auto lv = value_of(t->lhs), rv = value_of(t->rhs);
                auto invert = [&](std::uint64_t c, const TermPtr& u) -> int {
                    // z = c * u: -1 fail, 0 no info, 1 assigned
                    if (c == 0) return zv == 0 ? 0 : -1;
                    if (zv % c != 0) return -1;
                    return assign(u->var, zv / c) ? 1 : -1;
                };
                if (lv && !rv && single_unknown(t->rhs)) {
                    const int r = invert(*lv, t->rhs);
                    if (r < 0) return false;
                    if (r > 0) progress = true;
                } else if (rv && !lv && single_unknown(t->lhs)) {
                    const int r = invert(*rv, t->lhs);
                    if (r < 0) return false;
                    if (r > 0) progress = true;
                }
            }
        }
    }

    std::vector<std::string> residual;
    for (const MatrixEntry& e : row) {
        if (!known.count(e.z) &&
            std::find(residual.begin(), residual.end(), e.z) == residual.end())
            residual.push_back(e.z);
        for (const std::string& v : free_vars_term(e.t))
            if (!known.count(v) && std::find(residual.begin(), residual.end(), v) == residual.end())
                residual.push_back(v);
    }
    if (residual.empty()) {
        for (const MatrixEntry& e : row)
            if (eval_term(ArithTerm::variable(e.z), known) != eval_term(e.t, known)) return false;
        return true;
    }
    if (residual.size() > 4)
        throw ArithError("residual search space too large (" + std::to_string(residual.size()) +
                         " unconstrained variables)");
    std::vector<std::uint64_t> vals(residual.size(), 0);
    while (true) {
        Assignment full = known;
        for (std::size_t i = 0; i < residual.size(); ++i) full[residual[i]] = vals[i];
        bool ok = true;
        for (const MatrixEntry& e : row)
            if (full[e.z] != eval_term(e.t, full)) {
                ok = false;
                break;
            }
        if (ok) return true;
        bool overflowed = true;
        for (std::size_t pos = residual.size(); pos-- > 0;) {
            if (++vals[pos] <= W) {
                overflowed = false;
                break;
            }
            vals[pos] = 0;
        }
        if (overflowed) return false;
    }
}

bool dnf_satisfiable(const ExistentialDNF& g, const Assignment& frees, std::uint64_t W) {
    for (const auto& row : g.rows)
        if (row_satisfiable(row, frees, W)) return true;
    return false;
}

bool equiv_impl(const QFPtr& f, const ExistentialDNF& g, std::uint64_t B, std::uint64_t w_scale) {
    std::vector<std::string> fv = free_vars(f);
    {
        std::set<std::string> a(fv.begin(), fv.end()), b(g.free_vars.begin(), g.free_vars.end());
        if (a != b) throw ArithError("free variables differ between formula and matrix");
    }
    std::vector<std::uint64_t> vals(fv.size(), 0);
    while (true) {
        Assignment a;
        for (std::size_t i = 0; i < fv.size(); ++i) a[fv[i]] = vals[i];
        const std::uint64_t W = (max_subterm_value(f, a) + B + 2) * w_scale;
        if (eval_qf(f, a) != dnf_satisfiable(g, a, W)) return false;
        std::size_t pos = fv.size();
        bool done = fv.empty();
        while (pos-- > 0) {
            if (++vals[pos] <= B) break;
            vals[pos] = 0;
            if (pos == 0) done = true;
        }
        if (done) return true;
    }
}

}  // namespace

bool bounded_equiv(const QFPtr& f, const ExistentialDNF& g, std::uint64_t B) {
    return equiv_impl(f, g, B, 1);
}

bool bounded_equiv_scaled(const QFPtr& f, const ExistentialDNF& g, std::uint64_t B,
                          std::uint64_t w_scale) {
    return equiv_impl(f, g, B, w_scale);
}

// ---------------------------------------------------------------- parsing

namespace {

struct ALexer {
    std::string_view src;
    std::size_t pos = 0;

    void skip() {
        while (pos < src.size() && std::isspace(static_cast<unsigned char>(src[pos]))) ++pos;
    }
    char peek() {
        skip();
        return pos < src.size() ? src[pos] : '\0';
    }
    bool eat(char c) {
        if (peek() == c) {
            ++pos;
            return true;
        }
        return false;
    }
    bool eat2(const char* two) {
        skip();
        if (src.substr(pos, 2) == two) {
            pos += 2;
            return true;
        }
        return false;
    }
    std::string ident() {
        skip();
        if (pos >= src.size() || !std::islower(static_cast<unsigned char>(src[pos]))) return "";
        std::size_t end = pos + 1;
        while (end < src.size() &&
               (std::islower(static_cast<unsigned char>(src[end])) ||
                std::isdigit(static_cast<unsigned char>(src[end])) || src[end] == '_'))
            ++end;
        std::string w(src.substr(pos, end - pos));
        pos = end;
        return w;
    }
};

struct AParser {
    ALexer lex;

    [[noreturn]] void fail(const std::string& why) {
        throw ParseError(lex.pos, why);
    }

    TermPtr term() { return add(); }

    TermPtr add() {
        TermPtr t = mul();
        while (true) {
            lex.skip();
            if (lex.peek() == '+') {
                lex.eat('+');
                t = ArithTerm::plus(t, mul());
            } else {
                return t;
            }
        }
    }

    TermPtr mul() {
        TermPtr t = tprim();
        while (lex.peek() == '*') {
            lex.eat('*');
            t = ArithTerm::times(t, tprim());
        }
        return t;
    }

    TermPtr tprim() {
        const char c = lex.peek();
        if (c == '0') {
            lex.eat('0');
            return ArithTerm::zero();
        }
        if (c == '(') {
            lex.eat('(');
            TermPtr t = term();
            if (!lex.eat(')')) fail("expected ')'");
            return t;
        }
        std::string id = lex.ident();
        if (id.empty()) fail("expected a term");
        if (id == "s" && lex.peek() == '(') {
            lex.eat('(');
            TermPtr t = term();
            if (!lex.eat(')')) fail("expected ')'");
            return ArithTerm::succ(t);
        }
        return ArithTerm::variable(id);
    }

    QFPtr formula() {
        QFPtr f = conj();
        while (lex.peek() == '|') {
            lex.eat('|');
            f = QFFormula::qor(f, conj());
        }
        return f;
    }

    QFPtr conj() {
        QFPtr f = unary();
        while (lex.peek() == '&') {
            lex.eat('&');
            f = QFFormula::qand(f, unary());
        }
        return f;
    }

    QFPtr unary() {
        if (lex.peek() == '~') {
            lex.eat('~');
            return QFFormula::qnot(unary());
        }
        return atom_or_group();
    }

    QFPtr atom_or_group() {
        const std::size_t save = lex.pos;
        // attempt an atom first; backtrack to a parenthesized formula
        try {
            TermPtr a = term();
            if (lex.eat2("<=")) return QFFormula::le(a, term());
            if (lex.eat('=')) return QFFormula::eq(a, term());
            fail("expected '=' or '<='");
        } catch (const ParseError&) {
            lex.pos = save;
            if (lex.eat('(')) {
                QFPtr f = formula();
                if (!lex.eat(')')) fail("expected ')'");
                return f;
            }
            throw;
        }
    }
};

void render_term(const TermPtr& t, int min_level, std::string& out) {
    // add 1, mul 2, prim 3
    const int lv = t->kind == TermKind::Plus ? 1 : t->kind == TermKind::Times ? 2 : 3;
    const bool paren = lv < min_level;
    if (paren) out += '(';
    switch (t->kind) {
        case TermKind::Zero: out += '0'; break;
        case TermKind::Var: out += t->var; break;
        case TermKind::Succ:
            out += "s(";
            render_term(t->lhs, 1, out);
            out += ')';
            break;
        case TermKind::Plus:
            render_term(t->lhs, 1, out);
            out += " + ";
            render_term(t->rhs, 2, out);
            break;
        case TermKind::Times:
            render_term(t->lhs, 2, out);
            out += " * ";
            render_term(t->rhs, 3, out);
            break;
    }
    if (paren) out += ')';
}

void render_qf(const QFPtr& f, int min_level, std::string& out) {
    // or 1, and 2, not/atom 3
    const int lv = f->kind == QFKind::Or ? 1 : f->kind == QFKind::And ? 2 : 3;
    const bool paren = lv < min_level;
    if (paren) out += '(';
    switch (f->kind) {
        case QFKind::Eq:
            render_term(f->t0, 1, out);
            out += " = ";
            render_term(f->t1, 1, out);
            break;
        case QFKind::Le:
            render_term(f->t0, 1, out);
            out += " <= ";
            render_term(f->t1, 1, out);
            break;
        case QFKind::Not:
            out += '~';
            if (f->f0->kind == QFKind::Eq || f->f0->kind == QFKind::Le) {
                out += '(';
                render_qf(f->f0, 1, out);
                out += ')';
            } else {
                render_qf(f->f0, 3, out);
            }
            break;
        case QFKind::And:
            render_qf(f->f0, 2, out);
            out += " & ";
            render_qf(f->f1, 3, out);
            break;
        case QFKind::Or:
            render_qf(f->f0, 1, out);
            out += " | ";
            render_qf(f->f1, 2, out);
            break;
    }
    if (paren) out += ')';
}

}  // namespace

QFPtr parse_qf(std::string_view text) {
    AParser p{ALexer{text, 0}};
    QFPtr f = p.formula();
    p.lex.skip();
    if (p.lex.pos != text.size()) throw ParseError(p.lex.pos, "trailing input");
    return f;
}

std::string print_term(const TermPtr& t) {
    std::string out;
    render_term(t, 1, out);
    return out;
}

std::string print_qf(const QFPtr& f) {
    std::string out;
    render_qf(f, 1, out);
    return out;
}

}  // namespace g2ws
