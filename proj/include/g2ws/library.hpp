#pragma once

// Generators replaying the derivability-condition theorems as checkable
// proofs, plus the implication-graph report.

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "g2ws/proof.hpp"

namespace g2ws {

struct TheoremEntry {
    std::string name;
    std::string description;
    ConditionSet conditions;
    std::function<Proof()> generate;
};

// One entry per replayed theorem. weak_lob appears at (n,k) = (1,1).
std::vector<TheoremEntry> corpus();

// Rosser conclusion from a schematic-consistency instance: from {~a, []a -> ~[]~a}
// derive ~[]a using D1 only.
Proof gen_ros_from_conS(const FormulaPtr& a);

// []a -> ~[]~a from nothing, under {C, Ros}.
Proof gen_conS_from_ros_C(const FormulaPtr& a);

// ~[]bot from nothing, under {Ros}.
Proof gen_conL_from_ros();

// From {~a, ~[]bot} derive ~[]a under {E} (or under {M} when via_m).
Proof gen_ros_from_conL_E(const FormulaPtr& a, bool via_m = false);

// Fixed point c := ~[]#c; from the consistency instance []#c -> ~[]~#c derive
// bot under {E, D3(1,2)}.
Proof gen_g2_conS_E_D3();

// Fixed point c := []~(#tau -> #c); from {tau, [](#tau -> #c) -> ~[]~(#tau -> #c)}
// derive bot under {S1Cm}.
Proof gen_g2_conS_S1Cm();

// Fixed point c := ~[]#c; from ~[]bot derive bot under {E, C, D3(1,2)}.
Proof gen_g2_conL_E_C_D3();

// Fixed point c := []~(#c & []#c); bot from nothing under {C, D3(1,2), Ros}.
Proof gen_nonros_C_D3();

// Fixed point d := []#d -> a; from [](a & []#d) -> a derive a under {E, C, D3(1,2)}.
Proof gen_lob_variant(const FormulaPtr& a);

// Fixed point e := ([]^1 #e & ... & []^(n+k-1) #e) -> a; from []a -> a derive a
// under {K, D3(n,n+k)}. Requires n, k >= 1.
Proof gen_weak_lob(int n, int k, const FormulaPtr& a);

// Rewrites every `re` application and every C-axiom line of `p` into K-based
// derivations; the result checks with E and C replaced by K.
Proof rewrite_with_k(const Proof& p);

// Rewrites every S1Cm-axiom line into an S1C derivation over the tau-guarded
// instance; the result checks with S1Cm replaced by S1C.
Proof rewrite_s1cm_with_s1c(const Proof& p);

enum class EdgeStatus { Mechanized, Countermodel, Cited };

struct Edge {
    std::string from, to;
    EdgeStatus status;
    std::string note;                       // proof names / citation
    std::vector<std::string> proof_names;   // keys into figure1 proof attachments
};

struct EdgeReport {
    std::vector<Edge> edges;
    // status -> count, in the order mechanized, countermodel, cited
    int mechanized = 0, countermodel = 0, cited = 0;
    // named proofs attached to mechanized edges, all checked
    std::vector<std::pair<std::string, Proof>> proofs;
    std::vector<std::pair<std::string, ConditionSet>> proof_conditions;
};

// The 22 implication edges of the conditions-vs-consistency graph, classified.
EdgeReport figure1_report();

}  // namespace g2ws
