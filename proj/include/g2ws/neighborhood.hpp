#pragma once

// Finite neighborhood semantics: evaluation, closure properties and
// exhaustive deterministic countermodel search.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "g2ws/formula.hpp"

namespace g2ws {

struct ModelError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Worlds are indices into `worlds`; subsets of worlds are bitmasks.
using WorldSet = std::uint32_t;

struct NeighborhoodModel {
    std::vector<std::string> worlds;
    std::vector<std::vector<WorldSet>> nbhd;      // per world, sorted ascending
    std::map<std::string, WorldSet> valuation;    // atom -> worlds where true

    int world_index(const std::string& name) const;
    WorldSet universe() const { return static_cast<WorldSet>((1u << worlds.size()) - 1u); }
    bool in_nbhd(int w, WorldSet s) const;
};

struct ClosureReport {
    bool supplemented = false;        // superset closed, validates M
    bool intersection_closed = false; // validates C
    bool contains_unit = false;       // W in every N(w), validates Nec
    bool empty_free = false;          // {} in no N(w), validates Ros (and P)
    bool d_consistent = false;        // X in N(w) implies complement(X) not in N(w)

    std::string to_string() const;
};

// Truth set of f; fixed-point constants are rejected.
WorldSet truth_set(const NeighborhoodModel& m, const FormulaPtr& f);
bool eval(const NeighborhoodModel& m, int world, const FormulaPtr& f);
bool eval(const NeighborhoodModel& m, const std::string& world, const FormulaPtr& f);
ClosureReport closure_report(const NeighborhoodModel& m);
bool globally_valid(const NeighborhoodModel& m, const FormulaPtr& f);

struct RequiredClosure {
    bool supplemented = false;
    bool intersection_closed = false;
    bool contains_unit = false;
    bool empty_free = false;
    bool d_consistent = false;

    static RequiredClosure parse(const std::string& comma_list);
    bool satisfied_by(const ClosureReport& r) const;
};

struct SearchSpec {
    RequiredClosure require;
    std::vector<FormulaPtr> valid;   // must be globally valid
    FormulaPtr target;               // must fail at some world
    int max_worlds = 1;              // capped at 4
    std::vector<std::string> atoms;
};

// First model in canonical enumeration order (world count ascending, then
// valuation index, then per-world neighborhood families drawn from the
// flag-filtered candidate list) satisfying every requirement in `spec`;
// nullopt when the space is exhausted. Deterministic regardless of thread
// count (G2WS_THREADS, or the `threads` argument when positive).
std::optional<NeighborhoodModel> countermodel_search(const SearchSpec& spec, int threads = 0);

// Model file format:
//   worlds: a b c
//   atom p: a
//   nbhd a: {a} {a b c}     (one line per world; '{}' is the empty set)
NeighborhoodModel parse_model(const std::string& text);
std::string print_model(const NeighborhoodModel& m);

}  // namespace g2ws
