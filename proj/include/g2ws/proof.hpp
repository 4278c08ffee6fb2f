#pragma once

// Hilbert-style proof objects and the checking kernel. A proof carries its own
// fixed-point environment and named hypotheses; hypotheses are global theorems
// (rules may be applied to lines derived from them).

#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "g2ws/conditions.hpp"
#include "g2ws/formula.hpp"

namespace g2ws {

struct ProofError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

namespace just {
struct Taut {};
struct Mp { int from, implication; };       // implication line = (from line -> this)
struct Nec { int from; };                   // D1, always available
struct Re { int from; };                    // needs E; from: a<->b, this: []a<->[]b
struct Rm { int from; };                    // needs M; from: a->b, this: []a->[]b
struct Ros { int from; };                   // needs Ros; from: ~a, this: ~[]a
struct Ax { ConditionTag tag; std::vector<FormulaPtr> args; };
struct Fix { std::string constant; };       // this: #c <-> def(c)
struct Hyp { std::string id; };
}  // namespace just

using Justification = std::variant<just::Taut, just::Mp, just::Nec, just::Re, just::Rm,
                                   just::Ros, just::Ax, just::Fix, just::Hyp>;

std::string print_justification(const Justification& j);

struct ProofLine {
    int index;
    FormulaPtr formula;
    Justification just;
};

struct Proof {
    FixedPointEnv env;
    std::vector<std::pair<std::string, FormulaPtr>> hypotheses;
    std::vector<ProofLine> lines;
    FormulaPtr goal;

    const FormulaPtr* hypothesis(const std::string& id) const;
    const ProofLine* line(int index) const;
};

enum class FailKind { None, RuleDisabled, Malformed, BadReference, GoalMismatch };

struct CheckReport {
    bool accepted = false;
    FailKind fail = FailKind::None;
    int fail_line = 0;  // 0 when the failure is not tied to a line
    std::string reason;
    int line_count = 0;
    std::map<std::string, int> rules_used;  // justification name -> count

    std::string summary() const;
};

CheckReport check_proof(const Proof& p, const ConditionSet& cs);

// Appends taut+mp lines deriving `goal` from the referenced lines (opaque-atom
// propositional consequence). Throws ProofError("not a propositional consequence")
// otherwise. Returns the index of the appended goal line.
int prop_close(Proof& p, const FormulaPtr& goal, const std::vector<int>& from);

// Incremental construction used by the derivation library. Line formulas for
// rule applications are computed from the referenced lines.
class ProofBuilder {
public:
    explicit ProofBuilder(FixedPointEnv env = {}) { p_.env = std::move(env); }

    void hypothesis(const std::string& id, FormulaPtr f);
    int taut(FormulaPtr f);
    int mp(int from, int implication);
    int nec(int from);
    int re(int from);
    int rm(int from);
    int ros(int from);
    int ax(const ConditionTag& tag, std::vector<FormulaPtr> args);
    int hyp(const std::string& id);
    int fix(const std::string& constant);
    int close(const FormulaPtr& goal, const std::vector<int>& from);
    const FormulaPtr& formula_at(int index) const;
    Proof finish(FormulaPtr goal);

private:
    int append(FormulaPtr f, Justification j);
    Proof p_;
};

// Line-oriented proof file format ('#' starts a comment):
//   fix <c> := <formula>
//   hyp <id> : <formula>
//   <n> : <formula> ; <just>
//   goal : <formula>
// <just> is one of: taut | mp i j | nec i | re i | rm i | ros i
//                 | ax <TAG> <formula> [;; <formula>]... | fix c | hyp id
Proof parse_proof(const std::string& text);
std::string print_proof(const Proof& p);

// Condition hint carried as a '# conditions: ...' comment by emitted files.
std::optional<std::string> proof_condition_hint(const std::string& text);

}  // namespace g2ws
