#pragma once

// Desk-scale simulator of the stratified closure construction X_{m,k} over a
// finite toy proof table, with the induced bounded provability predicate and
// an audit against an independent cut-free closure.

#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "g2ws/formula.hpp"

namespace g2ws {

struct ToyError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Total injective encoding of the extended formula universe. Leaves (bot, top,
// atoms, constants) take odd codes by declaration order; composite nodes pair
// a constructor tag with child codes and double to even codes. Codes that
// overflow saturate to the maximum and never enter any bounded universe.
class GodelNumbering {
public:
    GodelNumbering();
    std::uint64_t code(const FormulaPtr& f) const;  // declares unseen leaves
    static constexpr std::uint64_t kOverflow = UINT64_MAX;

private:
    // leaf key -> position; positions 0 and 1 are bot and top
    mutable std::vector<std::string> leaf_order_;
    mutable std::map<std::string, std::size_t> leaf_index_;
};

class ToyTheory {
public:
    // xi must be an atom; it may not be proved and may not occur on either
    // side of a proved biconditional.
    ToyTheory(std::vector<std::pair<std::uint64_t, FormulaPtr>> proofs, FormulaPtr xi);

    const std::vector<std::pair<std::uint64_t, FormulaPtr>>& proofs() const { return proofs_; }
    const FormulaPtr& xi() const { return xi_; }
    const GodelNumbering& numbering() const { return gn_; }

private:
    std::vector<std::pair<std::uint64_t, FormulaPtr>> proofs_;  // code -> formula, codes distinct
    FormulaPtr xi_;
    GodelNumbering gn_;
};

// Formula set keyed canonically by printed form.
using FormulaSet = std::map<std::string, FormulaPtr>;

struct SaturationState {
    std::uint64_t m = 0;
    std::vector<FormulaSet> strata;  // X_{m,0} .. X_{m,k*}
    std::size_t fixpoint_index = 0;  // k*

    const FormulaSet& limit() const { return strata.back(); }
};

// X_{m,0}: formulas with code < m that carry a table proof with code <= m.
FormulaSet stratum0(std::uint64_t m, const ToyTheory& th);

// One closure step: carry-over, biconditional transfer (literal orientation,
// proof code <= m), conjunctions, P-images; everything cut to codes < m.
FormulaSet step(std::uint64_t m, const FormulaSet& x, const ToyTheory& th);

SaturationState saturate(std::uint64_t m, const ToyTheory& th);

// True iff f lies in some X_m with m <= bound while xi does not.
bool pr_dagger(const FormulaPtr& f, const ToyTheory& th, std::uint64_t bound);

struct AuditReport {
    std::uint64_t bound = 0;
    std::size_t checked = 0;
    std::vector<std::string> violations;  // members of some X_m outside the cut-free closure
    bool clean() const { return violations.empty(); }
};

// Verifies every member of every X_m (m <= bound) against an independent
// cut-free derivability oracle (no code bounds, depth-limited).
AuditReport soundness_audit(const ToyTheory& th, std::uint64_t bound);

// Toy theory file: lines 'proof <p> : <formula>' and 'xi : <formula>'.
ToyTheory parse_toy_theory(const std::string& text);

}  // namespace g2ws
