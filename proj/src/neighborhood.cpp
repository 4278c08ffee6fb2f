#include "g2ws/neighborhood.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <cstdlib>
#include <future>
#include <sstream>
#include <thread>

namespace g2ws {

int NeighborhoodModel::world_index(const std::string& name) const {
    for (std::size_t i = 0; i < worlds.size(); ++i)
        if (worlds[i] == name) return static_cast<int>(i);
    throw ModelError("unknown world '" + name + "'");
}

bool NeighborhoodModel::in_nbhd(int w, WorldSet s) const {
    const auto& fam = nbhd[static_cast<std::size_t>(w)];
    return std::binary_search(fam.begin(), fam.end(), s);
}

WorldSet truth_set(const NeighborhoodModel& m, const FormulaPtr& f) {
    const WorldSet all = m.universe();
    switch (f->conn) {
        case Conn::Falsum: return 0;
        case Conn::Verum: return all;
        case Conn::Atom: {
            auto it = m.valuation.find(f->name);
            if (it == m.valuation.end()) throw ModelError("no valuation for atom '" + f->name + "'");
            return it->second & all;
        }
        case Conn::Const:
            throw ModelError("fixed-point constant '#" + f->name + "' has no semantics");
        case Conn::Pr:
            throw ModelError("the P(.) former has no neighborhood semantics");
        case Conn::Not: return all & ~truth_set(m, f->lhs);
        case Conn::And: return truth_set(m, f->lhs) & truth_set(m, f->rhs);
        case Conn::Or: return truth_set(m, f->lhs) | truth_set(m, f->rhs);
        case Conn::Imp: return (all & ~truth_set(m, f->lhs)) | truth_set(m, f->rhs);
        case Conn::Iff: {
            const WorldSet a = truth_set(m, f->lhs), b = truth_set(m, f->rhs);
            return all & ~(a ^ b);
        }
        case Conn::Box: {
            const WorldSet inner = truth_set(m, f->lhs);
            WorldSet out = 0;
            for (std::size_t w = 0; w < m.worlds.size(); ++w)
                if (m.in_nbhd(static_cast<int>(w), inner)) out |= (1u << w);
            return out;
        }
    }
    return 0;
}

bool eval(const NeighborhoodModel& m, int world, const FormulaPtr& f) {
    return (truth_set(m, f) >> world) & 1u;
}

bool eval(const NeighborhoodModel& m, const std::string& world, const FormulaPtr& f) {
    return eval(m, m.world_index(world), f);
}

bool globally_valid(const NeighborhoodModel& m, const FormulaPtr& f) {
    return truth_set(m, f) == m.universe();
}

ClosureReport closure_report(const NeighborhoodModel& m) {
    const WorldSet all = m.universe();
    ClosureReport r{true, true, true, true, true};
    for (std::size_t w = 0; w < m.worlds.size(); ++w) {
        const auto& fam = m.nbhd[w];
        if (!std::binary_search(fam.begin(), fam.end(), all)) r.contains_unit = false;
        for (WorldSet x : fam) {
            if (x == 0) r.empty_free = false;
            if (m.in_nbhd(static_cast<int>(w), all & ~x)) r.d_consistent = false;
            // supersets of x, enumerated as (sup+1)|x
            for (WorldSet sup = x;; sup = (sup + 1) | x) {
                if (!m.in_nbhd(static_cast<int>(w), sup)) {
                    r.supplemented = false;
                    break;
                }
                if (sup == all) break;
            }
            for (WorldSet y : fam)
                if (!m.in_nbhd(static_cast<int>(w), x & y)) r.intersection_closed = false;
        }
    }
    return r;
}

std::string ClosureReport::to_string() const {
    std::ostringstream out;
    out << "supplemented: " << (supplemented ? "yes" : "no") << "\n"
        << "intersection_closed: " << (intersection_closed ? "yes" : "no") << "\n"
        << "contains_unit: " << (contains_unit ? "yes" : "no") << "\n"
        << "empty_free: " << (empty_free ? "yes" : "no") << "\n"
        << "d_consistent: " << (d_consistent ? "yes" : "no");
    return out.str();
}

// ---------------------------------------------------------------- search

namespace {

int box_depth(const FormulaPtr& f) {
    if (!f) return 0;
    const int sub = std::max(box_depth(f->lhs), box_depth(f->rhs));
    return f->conn == Conn::Box ? sub + 1 : sub;
}

bool family_passes(const std::vector<WorldSet>& fam, WorldSet all, const RequiredClosure& rc) {
    if (rc.contains_unit && !std::binary_search(fam.begin(), fam.end(), all)) return false;
    for (WorldSet x : fam) {
        if (rc.empty_free && x == 0) return false;
        if (rc.d_consistent && std::binary_search(fam.begin(), fam.end(), all & ~x)) return false;
        if (rc.supplemented)
            for (WorldSet sup = x;; sup = (sup + 1) | x) {
                if (!std::binary_search(fam.begin(), fam.end(), sup)) return false;
                if (sup == all) break;
            }
        if (rc.intersection_closed)
            for (WorldSet y : fam)
                if (!std::binary_search(fam.begin(), fam.end(), x & y)) return false;
    }
    return true;
}

std::vector<WorldSet> family_from_mask(std::uint64_t mask) {
    std::vector<WorldSet> fam;
    for (int i = 0; i < 64; ++i)
        if ((mask >> i) & 1u) fam.push_back(static_cast<WorldSet>(i));
    return fam;
}

struct SearchPlan {
    int n = 0;
    WorldSet all = 0;
    std::vector<std::vector<WorldSet>> candidates;  // flag-filtered families, canonical order
    std::vector<std::string> atom_names;
};

NeighborhoodModel assemble(const SearchPlan& plan, const std::vector<WorldSet>& vals,
                           const std::vector<std::size_t>& fam_idx) {
    NeighborhoodModel m;
    for (int i = 0; i < plan.n; ++i) m.worlds.push_back(std::string(1, static_cast<char>('a' + i)));
    for (std::size_t a = 0; a < plan.atom_names.size(); ++a)
        m.valuation[plan.atom_names[a]] = vals[a];
    for (int w = 0; w < plan.n; ++w)
        m.nbhd.push_back(plan.candidates[fam_idx[static_cast<std::size_t>(w)]]);
    return m;
}

// Examine every neighborhood combination for one valuation, in canonical
// order; returns the first hit's combination index.
std::optional<std::vector<std::size_t>> scan_valuation(const SearchPlan& plan,
                                                       const std::vector<WorldSet>& vals,
                                                       const SearchSpec& spec) {
    const std::size_t fams = plan.candidates.size();
    if (fams == 0) return std::nullopt;

    // For box-depth <= 1 targets, failing at world w depends only on N(w);
    // if no candidate family can fail the target anywhere, skip the valuation.
    if (box_depth(spec.target) <= 1) {
        NeighborhoodModel probe;
        for (int i = 0; i < plan.n; ++i) probe.worlds.push_back(std::string(1, static_cast<char>('a' + i)));
        for (std::size_t a = 0; a < plan.atom_names.size(); ++a)
            probe.valuation[plan.atom_names[a]] = vals[a];
        bool possible = false;
        for (std::size_t f = 0; f < fams && !possible; ++f) {
            probe.nbhd.assign(static_cast<std::size_t>(plan.n), plan.candidates[f]);
            if (truth_set(probe, spec.target) != plan.all) possible = true;
        }
        if (!possible) return std::nullopt;
    }

    std::vector<std::size_t> idx(static_cast<std::size_t>(plan.n), 0);
    NeighborhoodModel m = assemble(plan, vals, idx);
    while (true) {
        if (truth_set(m, spec.target) != plan.all) {
            bool ok = true;
            for (const FormulaPtr& v : spec.valid)
                if (!globally_valid(m, v)) {
                    ok = false;
                    break;
                }
            if (ok) return idx;
        }
        // increment mixed-radix, last world fastest
        int pos = plan.n - 1;
        while (pos >= 0) {
            if (++idx[static_cast<std::size_t>(pos)] < fams) {
                m.nbhd[static_cast<std::size_t>(pos)] = plan.candidates[idx[static_cast<std::size_t>(pos)]];
                break;
            }
            idx[static_cast<std::size_t>(pos)] = 0;
            m.nbhd[static_cast<std::size_t>(pos)] = plan.candidates[0];
            --pos;
        }
        if (pos < 0) return std::nullopt;
    }
}

int search_threads(int requested) {
    if (requested > 0) return requested;
    if (const char* env = std::getenv("G2WS_THREADS")) {
        const int v = std::atoi(env);
        if (v > 0) return v;
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(hw);
}

}  // namespace

std::optional<NeighborhoodModel> countermodel_search(const SearchSpec& spec, int threads) {
    if (spec.max_worlds < 1) throw ModelError("max world count must be at least 1");
    if (spec.max_worlds > 4) throw ModelError("searches beyond 4 worlds are not tractable here");
    if (!spec.target) throw ModelError("search needs a target formula");
    const int nthreads = search_threads(threads);

    for (int n = 1; n <= spec.max_worlds; ++n) {
        SearchPlan plan;
        plan.n = n;
        plan.all = static_cast<WorldSet>((1u << n) - 1u);
        plan.atom_names = spec.atoms;

        const std::uint64_t family_masks = 1ull << (1u << n);
        for (std::uint64_t mask = 0; mask < family_masks; ++mask) {
            std::vector<WorldSet> fam = family_from_mask(mask);
            if (family_passes(fam, plan.all, spec.require)) plan.candidates.push_back(std::move(fam));
        }

        // with a box-depth-1 target and no validity side conditions the
        // per-valuation prune plus first-hit ordering keeps huge spaces cheap
        double combos = 1.0;
        for (int w = 0; w < n; ++w) combos *= static_cast<double>(plan.candidates.size());
        if (combos > 7e7 && (box_depth(spec.target) > 1 || !spec.valid.empty()))
            throw ModelError("search space too large at " + std::to_string(n) +
                             " worlds; add closure flags or lower --max-worlds");

        // valuation index: mixed-radix over 2^n per atom, last atom fastest
        std::uint64_t val_count = 1;
        for (std::size_t a = 0; a < plan.atom_names.size(); ++a) val_count *= (1u << n);

        auto vals_at = [&](std::uint64_t vi) {
            std::vector<WorldSet> vals(plan.atom_names.size());
            for (std::size_t a = plan.atom_names.size(); a-- > 0;) {
                vals[a] = static_cast<WorldSet>(vi % (1u << n));
                vi /= (1u << n);
            }
            return vals;
        };

        struct Hit {
            std::uint64_t vi;
            std::vector<std::size_t> idx;
        };

        std::optional<Hit> best;
        if (nthreads <= 1 || val_count < 8) {
            for (std::uint64_t vi = 0; vi < val_count && !best; ++vi)
                if (auto idx = scan_valuation(plan, vals_at(vi), spec)) best = Hit{vi, *idx};
        } else {
            // contiguous valuation blocks; the reduction keeps the least index
            const std::uint64_t chunk = (val_count + static_cast<std::uint64_t>(nthreads) - 1) /
                                        static_cast<std::uint64_t>(nthreads);
            std::atomic<std::uint64_t> found_at{val_count};
            std::vector<std::future<std::optional<Hit>>> futures;
            for (int t = 0; t < nthreads; ++t) {
                const std::uint64_t lo = static_cast<std::uint64_t>(t) * chunk;
                const std::uint64_t hi = std::min(val_count, lo + chunk);
                if (lo >= hi) break;
                futures.push_back(std::async(std::launch::async, [&, lo, hi]() -> std::optional<Hit> {
                    for (std::uint64_t vi = lo; vi < hi; ++vi) {
                        if (vi > found_at.load(std::memory_order_relaxed)) return std::nullopt;
                        if (auto idx = scan_valuation(plan, vals_at(vi), spec)) {
                            std::uint64_t cur = found_at.load();
                            while (vi < cur && !found_at.compare_exchange_weak(cur, vi)) {}
                            return Hit{vi, *idx};
                        }
                    }
                    return std::nullopt;
                }));
            }
            for (auto& f : futures) {
                auto hit = f.get();
                if (hit && (!best || hit->vi < best->vi)) best = std::move(hit);
            }
        }
        if (best) return assemble(plan, vals_at(best->vi), best->idx);
    }
    return std::nullopt;
}

// ---------------------------------------------------------------- files

RequiredClosure RequiredClosure::parse(const std::string& comma_list) {
    RequiredClosure rc;
    std::stringstream in(comma_list);
    std::string piece;
    while (std::getline(in, piece, ',')) {
        std::string name;
        for (char ch : piece)
            if (!std::isspace(static_cast<unsigned char>(ch))) name += ch == '-' ? '_' : ch;
        if (name.empty()) continue;
        if (name == "supplemented") rc.supplemented = true;
        else if (name == "intersection_closed") rc.intersection_closed = true;
        else if (name == "contains_unit") rc.contains_unit = true;
        else if (name == "empty_free") rc.empty_free = true;
        else if (name == "d_consistent") rc.d_consistent = true;
        else throw ModelError("unknown closure flag '" + name + "'");
    }
    return rc;
}

bool RequiredClosure::satisfied_by(const ClosureReport& r) const {
    return (!supplemented || r.supplemented) && (!intersection_closed || r.intersection_closed) &&
           (!contains_unit || r.contains_unit) && (!empty_free || r.empty_free) &&
           (!d_consistent || r.d_consistent);
}

namespace {

std::string strip(const std::string& s) {
    const std::size_t b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    const std::size_t e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

}  // namespace

NeighborhoodModel parse_model(const std::string& text) {
    NeighborhoodModel m;
    std::istringstream in(text);
    std::string raw;
    std::vector<bool> have_nbhd;
    bool have_worlds = false;
    int lineno = 0;
    while (std::getline(in, raw)) {
        ++lineno;
        const std::size_t hash = raw.find('#');
        const std::string line = strip(hash == std::string::npos ? raw : raw.substr(0, hash));
        if (line.empty()) continue;
        auto fail = [&](const std::string& why) {
            throw ModelError("line " + std::to_string(lineno) + ": " + why);
        };
        if (line.rfind("worlds:", 0) == 0) {
            if (have_worlds) fail("duplicate worlds line");
            std::istringstream ws(line.substr(7));
            std::string w;
            while (ws >> w) {
                if (std::find(m.worlds.begin(), m.worlds.end(), w) != m.worlds.end())
                    fail("duplicate world '" + w + "'");
                m.worlds.push_back(w);
            }
            if (m.worlds.empty()) fail("at least one world required");
            if (m.worlds.size() > 31) fail("too many worlds");
            m.nbhd.assign(m.worlds.size(), {});
            have_nbhd.assign(m.worlds.size(), false);
            have_worlds = true;
            continue;
        }
        if (!have_worlds) fail("the worlds line must come first");
        if (line.rfind("atom ", 0) == 0) {
            const std::size_t colon = line.find(':');
            if (colon == std::string::npos) fail("atom line needs ':'");
            const std::string name = strip(line.substr(5, colon - 5));
            if (name.empty()) fail("atom line needs a name");
            if (m.valuation.count(name)) fail("duplicate atom '" + name + "'");
            WorldSet set = 0;
            std::istringstream ws(line.substr(colon + 1));
            std::string w;
            while (ws >> w) set |= (1u << m.world_index(w));
            m.valuation[name] = set;
            continue;
        }
        if (line.rfind("nbhd ", 0) == 0) {
            const std::size_t colon = line.find(':');
            if (colon == std::string::npos) fail("nbhd line needs ':'");
            const std::string wname = strip(line.substr(5, colon - 5));
            const int w = m.world_index(wname);
            if (have_nbhd[static_cast<std::size_t>(w)]) fail("duplicate nbhd line for '" + wname + "'");
            std::vector<WorldSet> fam;
            std::string rest = line.substr(colon + 1);
            std::size_t pos = 0;
            while (true) {
                const std::size_t open = rest.find('{', pos);
                if (open == std::string::npos) break;
                const std::size_t close = rest.find('}', open);
                if (close == std::string::npos) fail("unterminated '{'");
                WorldSet set = 0;
                std::istringstream ws(rest.substr(open + 1, close - open - 1));
                std::string piece;
                while (ws >> piece) set |= (1u << m.world_index(piece));
                fam.push_back(set);
                pos = close + 1;
            }
            std::sort(fam.begin(), fam.end());
            fam.erase(std::unique(fam.begin(), fam.end()), fam.end());
            m.nbhd[static_cast<std::size_t>(w)] = std::move(fam);
            have_nbhd[static_cast<std::size_t>(w)] = true;
            continue;
        }
        fail("unrecognized line");
    }
    if (!have_worlds) throw ModelError("model needs a worlds line");
    for (std::size_t w = 0; w < m.worlds.size(); ++w)
        if (!have_nbhd[w]) throw ModelError("missing nbhd line for world '" + m.worlds[w] + "'");
    return m;
}

std::string print_model(const NeighborhoodModel& m) {
    std::ostringstream out;
    out << "worlds:";
    for (const std::string& w : m.worlds) out << ' ' << w;
    out << "\n";
    for (const auto& [atom, set] : m.valuation) {
        out << "atom " << atom << ":";
        for (std::size_t i = 0; i < m.worlds.size(); ++i)
            if ((set >> i) & 1u) out << ' ' << m.worlds[i];
        out << "\n";
    }
    for (std::size_t w = 0; w < m.worlds.size(); ++w) {
        out << "nbhd " << m.worlds[w] << ":";
        for (WorldSet s : m.nbhd[w]) {
            out << " {";
            bool first = true;
            for (std::size_t i = 0; i < m.worlds.size(); ++i)
                if ((s >> i) & 1u) {
                    out << (first ? "" : " ") << m.worlds[i];
                    first = false;
                }
            out << "}";
        }
        out << "\n";
    }
    return out.str();
}

}  // namespace g2ws
