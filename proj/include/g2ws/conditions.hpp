#pragma once

// Derivability conditions: axiom schemata (C, K, D3^n_m, S1C, S1Cm) and rule
// flags (E, M, Ros) consumed by the proof kernel. D1 (necessitation) is always
// available and is not a flag.

#include <set>
#include <string>
#include <vector>

#include "g2ws/formula.hpp"

namespace g2ws {

struct ConditionError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class TagKind { E, M, C, K, Ros, S1C, S1Cm, D3 };

struct ConditionTag {
    TagKind kind;
    int n = 0, m = 0;  // D3 only

    static ConditionTag parse(const std::string& text);  // e.g. "C", "D3(2,3)", "D3"
    std::string to_string() const;
    bool operator==(const ConditionTag&) const = default;
};

struct ConditionSet {
    bool e = false, m = false, c = false, k = false, ros = false, s1c = false, s1cm = false;
    std::set<std::pair<int, int>> d3;

    bool has(const ConditionTag& t) const;
    ConditionSet with(const ConditionTag& t) const;
    ConditionSet without(const ConditionTag& t) const;
    bool includes(const ConditionSet& other) const;
    std::vector<ConditionTag> tags() const;  // canonical order
    std::string to_string() const;           // canonical, comma separated
    bool operator==(const ConditionSet&) const = default;
};

// Comma-separated tags from {E,M,C,K,Ros,S1C,S1Cm,D3(n,m)}; "D3" means D3(1,2).
// Requires n >= 1 and m >= 0 for every D3 pair.
ConditionSet parse_condition_set(const std::string& text);

// Instantiated axiom formula for an axiom-schema tag:
//   C [a,b]      ([]a & []b) -> [](a & b)
//   K [a,b]      [](a -> b) -> ([]a -> []b)
//   D3(n,m) [a]  []^n a -> []^m a
//   S1C [s]      s -> []s             (s must pass is_sigma_box)
//   S1Cm [s]     s -> [](#tau -> s)   (s must pass is_sigma_box)
FormulaPtr axiom_instance(const ConditionTag& tag, const std::vector<FormulaPtr>& args,
                          const FixedPointEnv& env);

struct Proof;

// Known subsumptions: {K => M, K => C, M => E, S1C => D3(1,2), S1C => S1Cm}.
// Returns a proof of the weak tag's instance at the probe formulas, checkable
// under `strong`. Rule tags (M, E) yield proofs from the needed side theorem
// as a named hypothesis.
Proof subsumes(const ConditionSet& strong, const ConditionTag& weak,
               const std::vector<FormulaPtr>& probe, const FixedPointEnv& env);

FormulaPtr box_iter(FormulaPtr f, int times);

}  // namespace g2ws
