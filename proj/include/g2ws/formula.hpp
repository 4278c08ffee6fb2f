#pragma once

// Modal object language: formulas with fixed-point constants, parsing,
// printing, tautology decision over opaque box/constant atoms.

#include <map>
#include <memory>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace g2ws {

struct ParseError : std::runtime_error {
    std::size_t offset;
    ParseError(std::size_t off, const std::string& msg)
        : std::runtime_error(msg + " (at byte " + std::to_string(off) + ")"), offset(off) {}
};

struct EnvError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Unresolved constants, opaque-atom overflow and similar semantic misuse.
struct LogicError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class Conn {
    Falsum,
    Verum,
    Atom,
    Const,
    Not,
    And,
    Or,
    Imp,
    Iff,
    Box,
    Pr,  // object-language provability former P(.), used by the saturation universe
};

class Formula;
using FormulaPtr = std::shared_ptr<const Formula>;

// Immutable tree node. Unary connectives use `lhs` only.
class Formula {
public:
    Conn conn;
    std::string name;  // Atom / Const identifier
    FormulaPtr lhs, rhs;

    static FormulaPtr falsum();
    static FormulaPtr verum();
    static FormulaPtr atom(std::string name);
    static FormulaPtr constant(std::string name);
    static FormulaPtr neg(FormulaPtr f);
    static FormulaPtr box(FormulaPtr f);
    static FormulaPtr pr(FormulaPtr f);
    static FormulaPtr conj(FormulaPtr a, FormulaPtr b);
    static FormulaPtr disj(FormulaPtr a, FormulaPtr b);
    static FormulaPtr imp(FormulaPtr a, FormulaPtr b);
    static FormulaPtr iff(FormulaPtr a, FormulaPtr b);

private:
    Formula(Conn c, std::string n, FormulaPtr l, FormulaPtr r)
        : conn(c), name(std::move(n)), lhs(std::move(l)), rhs(std::move(r)) {}
    friend FormulaPtr make_node(Conn, std::string, FormulaPtr, FormulaPtr);
};

bool equal(const FormulaPtr& a, const FormulaPtr& b);
// Total order (lexicographic over structure); used for canonical containers.
int compare(const FormulaPtr& a, const FormulaPtr& b);

// Grammar (ASCII):
//   formula := iff ; iff := imp {"<->" imp} ; imp := or ["->" imp] ;
//   or := and {"|" and} ; and := un {"&" un} ;
//   un := "~" un | "[]" un | prim ;
//   prim := "bot" | "top" | IDENT | "#" IDENT | "P" "(" formula ")" | "(" formula ")"
// IDENT = [a-z][a-z0-9_]*. "#tau" is the reserved subtheory constant.
FormulaPtr parse_formula(std::string_view text);

// Minimal-parentheses rendering; parse_formula(print_formula(f)) == f.
std::string print_formula(const FormulaPtr& f);

// True iff every occurrence of constant `c` in `f` lies under at least one box.
bool is_modalized(const std::string& c, const FormulaPtr& f);

// Ordered constant definitions. The reserved constant "tau" is always declared
// and never defined; each non-tau constant must be modalized in its own
// definition and may reference only itself, tau, and previously defined names.
class FixedPointEnv {
public:
    static constexpr const char* kTau = "tau";

    void define(const std::string& name, FormulaPtr def);
    const FormulaPtr* lookup(const std::string& name) const;
    bool is_declared(const std::string& name) const;
    const std::vector<std::pair<std::string, FormulaPtr>>& definitions() const { return defs_; }
    bool empty() const { return defs_.empty(); }

private:
    std::vector<std::pair<std::string, FormulaPtr>> defs_;
};

// The Sigma-box class: least class containing bot, top, every boxed formula,
// every defined constant whose definition is in the class, closed under & and |,
// and containing "#tau -> s" whenever s is in the class (conditionals over the
// reserved subtheory constant stay in the class).
bool is_sigma_box(const FormulaPtr& f, const FixedPointEnv& env);

// Classical tautology with each maximal boxed subformula, P-formula and
// constant treated as an opaque atom; decided by exhaustive valuation.
bool taut_check(const FormulaPtr& f);

// goal follows propositionally (opaque-atom semantics) from the premises.
bool prop_consequence(const std::vector<FormulaPtr>& premises, const FormulaPtr& goal);

// All distinct constant names occurring in f.
std::vector<std::string> constants_of(const FormulaPtr& f);

}  // namespace g2ws
