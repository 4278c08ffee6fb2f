#include "g2ws/saturation.hpp"

#include <algorithm>
#include <sstream>

namespace g2ws {

// ---------------------------------------------------------------- numbering

GodelNumbering::GodelNumbering() {
    leaf_order_ = {"bot", "top"};
    leaf_index_ = {{"bot", 0}, {"top", 1}};
}

namespace {

std::uint64_t cantor_pair(std::uint64_t a, std::uint64_t b) {
    // (a+b)(a+b+1)/2 + b, saturating
    if (a == GodelNumbering::kOverflow || b == GodelNumbering::kOverflow)
        return GodelNumbering::kOverflow;
    std::uint64_t s = 0;
    if (__builtin_add_overflow(a, b, &s)) return GodelNumbering::kOverflow;
    std::uint64_t s1 = 0, prod = 0;
    if (__builtin_add_overflow(s, 1ull, &s1)) return GodelNumbering::kOverflow;
    const std::uint64_t even = (s % 2 == 0) ? s / 2 : s1 / 2;
    const std::uint64_t other = (s % 2 == 0) ? s1 : s;
    if (__builtin_mul_overflow(even, other, &prod)) return GodelNumbering::kOverflow;
    std::uint64_t out = 0;
    if (__builtin_add_overflow(prod, b, &out)) return GodelNumbering::kOverflow;
    return out;
}

std::uint64_t doubled(std::uint64_t v) {
    std::uint64_t out = 0;
    if (v == GodelNumbering::kOverflow || __builtin_mul_overflow(v, 2ull, &out))
        return GodelNumbering::kOverflow;
    return out;
}

int constructor_tag(Conn c) {
    switch (c) {
        case Conn::Not: return 2;
        case Conn::And: return 3;
        case Conn::Or: return 4;
        case Conn::Imp: return 5;
        case Conn::Iff: return 6;
        case Conn::Box: return 7;
        case Conn::Pr: return 8;
        default: return 9;
    }
}

}  // namespace

std::uint64_t GodelNumbering::code(const FormulaPtr& f) const {
    switch (f->conn) {
        case Conn::Falsum: return 1;
        case Conn::Verum: return 3;
        case Conn::Atom:
        case Conn::Const: {
            const std::string key = (f->conn == Conn::Atom ? "a:" : "c:") + f->name;
            auto it = leaf_index_.find(key);
            std::size_t pos;
            if (it == leaf_index_.end()) {
                pos = leaf_order_.size();
                leaf_order_.push_back(key);
                leaf_index_.emplace(key, pos);
            } else {
                pos = it->second;
            }
            return 2 * static_cast<std::uint64_t>(pos) + 1;
        }
        case Conn::Not:
        case Conn::Box:
        case Conn::Pr:
            return doubled(cantor_pair(static_cast<std::uint64_t>(constructor_tag(f->conn)),
                                       code(f->lhs)));
        default:
            return doubled(cantor_pair(static_cast<std::uint64_t>(constructor_tag(f->conn)),
                                       cantor_pair(code(f->lhs), code(f->rhs))));
    }
}

// ---------------------------------------------------------------- theory

ToyTheory::ToyTheory(std::vector<std::pair<std::uint64_t, FormulaPtr>> proofs, FormulaPtr xi)
    : proofs_(std::move(proofs)), xi_(std::move(xi)) {
    if (!xi_ || xi_->conn != Conn::Atom)
        throw ToyError("xi must be a designated atom");
    std::set<std::uint64_t> codes;
    for (const auto& [p, f] : proofs_) {
        if (!codes.insert(p).second)
            throw ToyError("duplicate proof code " + std::to_string(p));
        if (equal(f, xi_)) throw ToyError("xi may not be proved");
        if (f->conn == Conn::Iff && (equal(f->lhs, xi_) || equal(f->rhs, xi_)))
            throw ToyError("xi may not occur in a proved biconditional");
    }
    std::sort(proofs_.begin(), proofs_.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    // pin the declaration order of leaves: xi first, then table formulas
    gn_.code(xi_);
    for (const auto& [p, f] : proofs_) gn_.code(f);
}

// ---------------------------------------------------------------- strata

namespace {

void insert(FormulaSet& s, const FormulaPtr& f) { s.emplace(print_formula(f), f); }

bool within(std::uint64_t m, const ToyTheory& th, const FormulaPtr& f) {
    return th.numbering().code(f) < m;
}

}  // namespace

FormulaSet stratum0(std::uint64_t m, const ToyTheory& th) {
    FormulaSet out;
    for (const auto& [p, f] : th.proofs())
        if (p <= m && within(m, th, f)) insert(out, f);
    return out;
}

FormulaSet step(std::uint64_t m, const FormulaSet& x, const ToyTheory& th) {
    for (const auto& [key, f] : x)
        if (!within(m, th, f))
            throw ToyError("stratum member outside the universe: " + key);
    FormulaSet out = x;
    for (const auto& [p, f] : th.proofs()) {
        if (p > m || f->conn != Conn::Iff) continue;
        // literal orientation: (phi <-> psi) proved and psi in X puts phi in
        if (x.count(print_formula(f->rhs)) && within(m, th, f->lhs)) insert(out, f->lhs);
    }
    for (const auto& [ka, a] : x) {
        (void)ka;
        for (const auto& [kb, b] : x) {
            (void)kb;
            const FormulaPtr conj = Formula::conj(a, b);
            if (within(m, th, conj)) insert(out, conj);
        }
        const FormulaPtr image = Formula::pr(a);
        if (within(m, th, image)) insert(out, image);
    }
    return out;
}

SaturationState saturate(std::uint64_t m, const ToyTheory& th) {
    SaturationState st;
    st.m = m;
    st.strata.push_back(stratum0(m, th));
    while (true) {
        FormulaSet next = step(m, st.strata.back(), th);
        if (next.size() == st.strata.back().size()) break;
        st.strata.push_back(std::move(next));
    }
    st.fixpoint_index = st.strata.size() - 1;
    // members carry distinct codes < m, so the fixpoint arrives within m steps
    if (st.fixpoint_index > m)
        throw ToyError("fixpoint index exceeds the universe bound");
    return st;
}

bool pr_dagger(const FormulaPtr& f, const ToyTheory& th, std::uint64_t bound) {
    const std::string key = print_formula(f);
    const std::string xi_key = print_formula(th.xi());
    // the strata grow monotonically in m, so the largest universe decides:
    // a witness below the bound exists exactly when X_bound contains f and
    // xi stays excluded (which the construction guarantees)
    const SaturationState top = saturate(bound, th);
    if (!top.limit().count(xi_key)) return top.limit().count(key) > 0;
    for (std::uint64_t m = 0; m < bound; ++m) {
        const SaturationState st = saturate(m, th);
        if (st.limit().count(key) && !st.limit().count(xi_key)) return true;
    }
    return false;
}

// ---------------------------------------------------------------- audit

namespace {

// Cut-free derivability: table formulas, biconditional transfer with no code
// bound, conjunction introduction, P introduction; depth-limited recursion.
struct CutFreeOracle {
    const ToyTheory& th;
    std::map<std::string, std::uint64_t> memo;  // formula -> least depth known derivable

    bool derivable(const FormulaPtr& f, std::uint64_t depth) {
        const std::string key = print_formula(f);
        auto it = memo.find(key);
        if (it != memo.end() && it->second <= depth) return true;
        for (const auto& [p, g] : th.proofs()) {
            (void)p;
            if (equal(g, f)) {
                memo[key] = 0;
                return true;
            }
        }
        if (depth == 0) return false;
        if (f->conn == Conn::And && derivable(f->lhs, depth - 1) && derivable(f->rhs, depth - 1)) {
            memo[key] = depth;
            return true;
        }
        if (f->conn == Conn::Pr && derivable(f->lhs, depth - 1)) {
            memo[key] = depth;
            return true;
        }
        for (const auto& [p, g] : th.proofs()) {
            (void)p;
            if (g->conn == Conn::Iff && equal(g->lhs, f) && derivable(g->rhs, depth - 1)) {
                memo[key] = depth;
                return true;
            }
        }
        return false;
    }
};

}  // namespace

AuditReport soundness_audit(const ToyTheory& th, std::uint64_t bound) {
    AuditReport rep;
    rep.bound = bound;
    CutFreeOracle oracle{th, {}};
    std::uint64_t max_depth = 1;
    for (std::uint64_t m = 0; m <= bound; ++m)
        max_depth = std::max<std::uint64_t>(max_depth, saturate(m, th).fixpoint_index + 1);
    for (std::uint64_t m = 0; m <= bound; ++m) {
        const SaturationState st = saturate(m, th);
        for (const auto& [key, f] : st.limit()) {
            ++rep.checked;
            if (!oracle.derivable(f, max_depth)) rep.violations.push_back(key);
        }
    }
    std::sort(rep.violations.begin(), rep.violations.end());
    rep.violations.erase(std::unique(rep.violations.begin(), rep.violations.end()),
                         rep.violations.end());
    return rep;
}

// ---------------------------------------------------------------- files

namespace {

std::string strip(const std::string& s) {
    const std::size_t b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    const std::size_t e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

// '#' immediately followed by a lowercase letter is a constant, not a comment.
std::string drop_comment(const std::string& s) {
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (s[i] != '#') continue;
        if (i + 1 < s.size() && std::islower(static_cast<unsigned char>(s[i + 1])) && i > 0)
            continue;
        return s.substr(0, i);
    }
    return s;
}

}  // namespace

ToyTheory parse_toy_theory(const std::string& text) {
    std::vector<std::pair<std::uint64_t, FormulaPtr>> proofs;
    FormulaPtr xi;
    std::istringstream in(text);
    std::string raw;
    int lineno = 0;
    while (std::getline(in, raw)) {
        ++lineno;
        const std::string line = strip(drop_comment(raw));
        if (line.empty()) continue;
        auto fail = [&](const std::string& why) {
            throw ToyError("line " + std::to_string(lineno) + ": " + why);
        };
        if (line.rfind("proof ", 0) == 0) {
            const std::size_t colon = line.find(':');
            if (colon == std::string::npos) fail("proof line needs ':'");
            std::uint64_t p = 0;
            try {
                p = std::stoull(strip(line.substr(6, colon - 6)));
            } catch (const std::exception&) {
                fail("bad proof code");
            }
            proofs.emplace_back(p, parse_formula(strip(line.substr(colon + 1))));
            continue;
        }
        if (line.rfind("xi", 0) == 0) {
            const std::size_t colon = line.find(':');
            if (colon == std::string::npos) fail("xi line needs ':'");
            if (xi) fail("duplicate xi line");
            xi = parse_formula(strip(line.substr(colon + 1)));
            continue;
        }
        fail("unrecognized line");
    }
    if (!xi) throw ToyError("toy theory needs an 'xi :' line");
    return ToyTheory(std::move(proofs), std::move(xi));
}

}  // namespace g2ws
