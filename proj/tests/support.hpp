#pragma once

// Shared test utilities: seeded random formula generators and independent
// oracles kept apart from the library implementation.

#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "g2ws/formula.hpp"

namespace g2ws::test {

struct Gen {
    std::mt19937 rng;
    explicit Gen(unsigned seed) : rng(seed) {}

    int pick(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

    FormulaPtr formula(int depth, const std::vector<std::string>& atoms,
                       const std::vector<std::string>& consts = {}, bool allow_pr = false) {
        if (depth == 0) {
            const int leaf = pick(0, consts.empty() ? 2 : 3);
            switch (leaf) {
                case 0: return Formula::falsum();
                case 1: return Formula::verum();
                case 2: return Formula::atom(atoms[static_cast<std::size_t>(pick(0, static_cast<int>(atoms.size()) - 1))]);
                default:
                    return Formula::constant(consts[static_cast<std::size_t>(pick(0, static_cast<int>(consts.size()) - 1))]);
            }
        }
        switch (pick(0, allow_pr ? 7 : 6)) {
            case 0: return Formula::neg(formula(depth - 1, atoms, consts, allow_pr));
            case 1: return Formula::box(formula(depth - 1, atoms, consts, allow_pr));
            case 2:
                return Formula::conj(formula(depth - 1, atoms, consts, allow_pr),
                                     formula(depth - 1, atoms, consts, allow_pr));
            case 3:
                return Formula::disj(formula(depth - 1, atoms, consts, allow_pr),
                                     formula(depth - 1, atoms, consts, allow_pr));
            case 4:
                return Formula::imp(formula(depth - 1, atoms, consts, allow_pr),
                                    formula(depth - 1, atoms, consts, allow_pr));
            case 5:
                return Formula::iff(formula(depth - 1, atoms, consts, allow_pr),
                                    formula(depth - 1, atoms, consts, allow_pr));
            case 6: return formula(0, atoms, consts, allow_pr);
            default: return Formula::pr(formula(depth - 1, atoms, consts, allow_pr));
        }
    }

    // a member of the Sigma-box class over boxed bodies
    FormulaPtr sigma_box(int depth, const std::vector<std::string>& atoms) {
        if (depth == 0) {
            switch (pick(0, 2)) {
                case 0: return Formula::falsum();
                case 1: return Formula::verum();
                default: return Formula::box(formula(1, atoms));
            }
        }
        switch (pick(0, 2)) {
            case 0: return Formula::conj(sigma_box(depth - 1, atoms), sigma_box(depth - 1, atoms));
            case 1: return Formula::disj(sigma_box(depth - 1, atoms), sigma_box(depth - 1, atoms));
            default: return Formula::box(formula(depth - 1, atoms));
        }
    }
};

// Independent tautology oracle: explicit opaque-atom table built by its own
// traversal, evaluated by its own recursion over std::map valuations.
class TruthTableOracle {
public:
    explicit TruthTableOracle(const FormulaPtr& f) { gather(f); }

    bool tautology(const FormulaPtr& f) const {
        std::vector<std::string> names(atoms_.begin(), atoms_.end());
        const std::size_t n = names.size();
        for (std::size_t mask = 0; mask < (1u << n); ++mask) {
            std::map<std::string, bool> val;
            for (std::size_t i = 0; i < n; ++i) val[names[i]] = (mask >> i) & 1u;
            if (!truth(f, val)) return false;
        }
        return true;
    }

    std::size_t atom_count() const { return atoms_.size(); }

private:
    std::set<std::string> atoms_;

    void gather(const FormulaPtr& f) {
        switch (f->conn) {
            case Conn::Falsum:
            case Conn::Verum: return;
            case Conn::Atom:
            case Conn::Const:
            case Conn::Box:
            case Conn::Pr:
                atoms_.insert(print_formula(f));
                return;
            default:
                if (f->rhs) gather(f->rhs);
                gather(f->lhs);
        }
    }

    static bool truth(const FormulaPtr& f, const std::map<std::string, bool>& val) {
        switch (f->conn) {
            case Conn::Falsum: return false;
            case Conn::Verum: return true;
            case Conn::Not: return !truth(f->lhs, val);
            case Conn::And: return truth(f->lhs, val) && truth(f->rhs, val);
            case Conn::Or: return truth(f->lhs, val) || truth(f->rhs, val);
            case Conn::Imp: return !truth(f->lhs, val) || truth(f->rhs, val);
            case Conn::Iff: return truth(f->lhs, val) == truth(f->rhs, val);
            default: return val.at(print_formula(f));
        }
    }
};

}  // namespace g2ws::test
