#pragma once

// Quantifier-free arithmetic over {0, s, +, *, <=} and the normal-form
// pipeline into an existential disjunctive form with simple terms.

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace g2ws {

struct ArithError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class TermKind { Zero, Var, Succ, Plus, Times };

struct ArithTerm;
using TermPtr = std::shared_ptr<const ArithTerm>;

struct ArithTerm {
    TermKind kind;
    std::string var;
    TermPtr lhs, rhs;

    static TermPtr zero();
    static TermPtr variable(std::string name);
    static TermPtr succ(TermPtr t);
    static TermPtr plus(TermPtr a, TermPtr b);
    static TermPtr times(TermPtr a, TermPtr b);
};

enum class QFKind { Eq, Le, Not, And, Or };

struct QFFormula;
using QFPtr = std::shared_ptr<const QFFormula>;

struct QFFormula {
    QFKind kind;
    TermPtr t0, t1;   // atoms
    QFPtr f0, f1;     // connectives

    static QFPtr eq(TermPtr a, TermPtr b);
    static QFPtr le(TermPtr a, TermPtr b);
    static QFPtr qnot(QFPtr f);
    static QFPtr qand(QFPtr a, QFPtr b);
    static QFPtr qor(QFPtr a, QFPtr b);
};

// Intermediate shape after comparison elimination: equalities under and/or
// with existential markers.
enum class NFKind { Eq, And, Or, Exists };

struct NFFormula;
using NFPtr = std::shared_ptr<const NFFormula>;

struct NFFormula {
    NFKind kind;
    TermPtr t0, t1;     // Eq
    NFPtr f0, f1;       // And / Or
    std::string bound;  // Exists

    static NFPtr eq(TermPtr a, TermPtr b);
    static NFPtr nand(NFPtr a, NFPtr b);
    static NFPtr nor(NFPtr a, NFPtr b);
    static NFPtr exists(std::string v, NFPtr body);
};

// Matrix entry: z = t with t simple and z drawn from the free or prefix variables.
struct MatrixEntry {
    std::string z;
    TermPtr t;
};

struct ExistentialDNF {
    std::vector<std::string> free_vars;    // first-occurrence order of the source formula
    std::vector<std::string> prefix;       // fresh existential variables, in introduction order
    std::vector<std::vector<MatrixEntry>> rows;  // equal lengths

    // checks the shape invariants; throws ArithError when violated
    void validate() const;
    std::string to_string() const;
};

int term_degree(const TermPtr& t);
bool is_simple(const TermPtr& t);

std::vector<std::string> free_vars_term(const TermPtr& t);
std::vector<std::string> free_vars(const QFPtr& f);

// Comparison elimination over the negation normal form: != becomes a
// disjunction of strict failures, <= and its negation become existential
// equalities. Only equalities remain under and/or/exists.
NFPtr eliminate_comparisons(const QFPtr& f);

// Replaces nested function arguments by fresh defining variables until every
// term is simple. Fresh names come from a deterministic counter y1, y2, ...
// skipping names used in the input.
NFPtr flatten_terms(const NFPtr& f, const QFPtr& source);

ExistentialDNF to_existential_dnf(const QFPtr& f);

using Assignment = std::map<std::string, std::uint64_t>;

std::uint64_t eval_term(const TermPtr& t, const Assignment& a);
bool eval_qf(const QFPtr& f, const Assignment& a);

// Exhaustive agreement check over free assignments into [0,B]; prefix
// variables range over [0, W] with W = max subterm value of f under the
// assignment + B + 2. Equations are solved by propagation; any residual
// unconstrained prefix variables are searched directly.
bool bounded_equiv(const QFPtr& f, const ExistentialDNF& g, std::uint64_t B);
// Same check with the prefix range scaled by `w_scale` (bound-adequacy probes).
bool bounded_equiv_scaled(const QFPtr& f, const ExistentialDNF& g, std::uint64_t B,
                          std::uint64_t w_scale);

// Grammar: terms  t := add ; add := mul {"+" mul} ; mul := prim {"*" prim} ;
//          prim := "0" | IDENT | "s" "(" t ")" | "(" t ")"
// atoms t = t | t <= t; connectives ~ & | with the usual precedence.
QFPtr parse_qf(std::string_view text);
std::string print_term(const TermPtr& t);
std::string print_qf(const QFPtr& f);

}  // namespace g2ws
