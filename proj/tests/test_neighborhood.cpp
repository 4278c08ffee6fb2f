#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "g2ws/neighborhood.hpp"
#include "support.hpp"

using namespace g2ws;

namespace {

const char* kThreeWorld =
    "worlds: a b c\n"
    "atom p: a\n"
    "atom q: b\n"
    "nbhd a: {a} {a b c}\n"
    "nbhd b: {a} {a b c}\n"
    "nbhd c: {a} {a b c}\n";

// Brute search oracle: enumerates every family combination without candidate
// pre-filtering or pruning, checking the closure flags on the assembled model.
std::optional<NeighborhoodModel> brute_search(const SearchSpec& spec) {
    for (int n = 1; n <= spec.max_worlds; ++n) {
        const WorldSet all = static_cast<WorldSet>((1u << n) - 1u);
        const int subsets = 1 << n;
        const std::uint64_t fam_count = 1ull << subsets;
        std::uint64_t val_count = 1;
        for (std::size_t a = 0; a < spec.atoms.size(); ++a) val_count *= (1u << n);

        for (std::uint64_t vi = 0; vi < val_count; ++vi) {
            NeighborhoodModel m;
            for (int i = 0; i < n; ++i) m.worlds.push_back(std::string(1, static_cast<char>('a' + i)));
            std::uint64_t v = vi;
            std::vector<WorldSet> vals(spec.atoms.size());
            for (std::size_t a = spec.atoms.size(); a-- > 0;) {
                vals[a] = static_cast<WorldSet>(v % (1u << n));
                v /= (1u << n);
            }
            for (std::size_t a = 0; a < spec.atoms.size(); ++a) m.valuation[spec.atoms[a]] = vals[a];

            std::vector<std::uint64_t> fam_idx(static_cast<std::size_t>(n), 0);
            while (true) {
                m.nbhd.clear();
                for (int w = 0; w < n; ++w) {
                    std::vector<WorldSet> fam;
                    for (int s = 0; s < subsets; ++s)
                        if ((fam_idx[static_cast<std::size_t>(w)] >> s) & 1u)
                            fam.push_back(static_cast<WorldSet>(s));
                    m.nbhd.push_back(std::move(fam));
                }
                const ClosureReport r = closure_report(m);
                bool ok = spec.require.satisfied_by(r);
                if (ok && truth_set(m, spec.target) == all) ok = false;
                if (ok)
                    for (const FormulaPtr& f : spec.valid)
                        if (!globally_valid(m, f)) {
                            ok = false;
                            break;
                        }
                if (ok) return m;
                // canonical increment: family masks ascending, last world fastest.
                // mask order must match the engine's candidate order; candidate
                // lists are built in ascending mask order, so indices agree.
                int pos = n - 1;
                while (pos >= 0) {
                    if (++fam_idx[static_cast<std::size_t>(pos)] < fam_count) break;
                    fam_idx[static_cast<std::size_t>(pos)] = 0;
                    --pos;
                }
                if (pos < 0) break;
            }
        }
    }
    return std::nullopt;
}

bool same_model(const NeighborhoodModel& a, const NeighborhoodModel& b) {
    if (a.worlds != b.worlds) return false;
    if (a.nbhd != b.nbhd) return false;
    return a.valuation == b.valuation;
}

}  // namespace

TEST_CASE("evaluation follows the neighborhood clause") {
    NeighborhoodModel one;
    one.worlds = {"w"};
    one.nbhd = {{}};
    one.valuation["p"] = 0;
    CHECK_FALSE(eval(one, "w", parse_formula("[]bot")));
    one.nbhd = {{0}};  // the empty set is a neighborhood
    CHECK(eval(one, "w", parse_formula("[]bot")));

    const NeighborhoodModel m = parse_model(kThreeWorld);
    CHECK(eval(m, "a", parse_formula("[]p")));
    CHECK_FALSE(eval(m, "a", parse_formula("[](p | q)")));
    CHECK(eval(m, "b", parse_formula("[]p")));
    CHECK_FALSE(globally_valid(m, parse_formula("[]p -> [](p | q)")));
    CHECK(globally_valid(m, parse_formula("[]top")));
    CHECK(globally_valid(m, parse_formula("top")));

    CHECK_THROWS_AS(eval(m, "a", parse_formula("#c")), ModelError);
    CHECK_THROWS_AS(eval(m, "a", parse_formula("P(p)")), ModelError);
    CHECK_THROWS_AS(eval(m, "a", parse_formula("r")), ModelError);
    CHECK_THROWS_AS(eval(m, "nope", parse_formula("p")), ModelError);
}

TEST_CASE("closure reports") {
    const NeighborhoodModel m = parse_model(kThreeWorld);
    const ClosureReport r = closure_report(m);
    CHECK(r.intersection_closed);
    CHECK(r.contains_unit);
    CHECK_FALSE(r.supplemented);
    CHECK(r.empty_free);

    NeighborhoodModel empty;
    empty.worlds = {"a", "b"};
    empty.nbhd = {{}, {}};
    const ClosureReport re = closure_report(empty);
    CHECK(re.empty_free);
    CHECK(re.supplemented);  // vacuous
    CHECK(re.intersection_closed);
    CHECK_FALSE(re.contains_unit);
    CHECK(re.d_consistent);

    NeighborhoodModel d;
    d.worlds = {"a", "b"};
    d.nbhd = {{1, 2, 3}, {1, 2, 3}};  // {a},{b},{a b}
    const ClosureReport rd = closure_report(d);
    CHECK_FALSE(rd.d_consistent);  // {b} is the complement of {a}
    CHECK(rd.contains_unit);
}

TEST_CASE("rule RE is admissible under global semantics") {
    test::Gen gen(77);
    std::mt19937 rng(151);
    const std::vector<std::string> atoms = {"p", "q"};
    for (int trial = 0; trial < 60; ++trial) {
        const int n = 1 + static_cast<int>(rng() % 3);
        const WorldSet all = static_cast<WorldSet>((1u << n) - 1u);
        NeighborhoodModel m;
        for (int i = 0; i < n; ++i) m.worlds.push_back(std::string(1, static_cast<char>('a' + i)));
        for (int w = 0; w < n; ++w) {
            std::vector<WorldSet> fam;
            for (WorldSet s = 0; s <= all; ++s)
                if (rng() & 1u) fam.push_back(s);
            m.nbhd.push_back(std::move(fam));
        }
        for (const std::string& a : atoms) m.valuation[a] = static_cast<WorldSet>(rng()) & all;

        const FormulaPtr f = gen.formula(gen.pick(0, 4), atoms);
        const FormulaPtr g = gen.formula(gen.pick(0, 4), atoms);
        if (truth_set(m, f) != truth_set(m, g)) continue;
        CHECK(truth_set(m, Formula::box(f)) == truth_set(m, Formula::box(g)));
    }
}

TEST_CASE("closure flags match rule admissibility on small models") {
    // contains_unit <=> Nec preserves global truth; empty_free <=> Ros does
    test::Gen gen(31337);
    std::mt19937 rng(99);
    const std::vector<std::string> atoms = {"p", "q"};
    std::vector<FormulaPtr> probes = {Formula::verum(), Formula::falsum()};
    for (int i = 0; i < 40; ++i) probes.push_back(gen.formula(gen.pick(0, 3), atoms));

    for (int trial = 0; trial < 40; ++trial) {
        const int n = 1 + static_cast<int>(rng() % 3);
        const WorldSet all = static_cast<WorldSet>((1u << n) - 1u);
        NeighborhoodModel m;
        for (int i = 0; i < n; ++i) m.worlds.push_back(std::string(1, static_cast<char>('a' + i)));
        for (int w = 0; w < n; ++w) {
            std::vector<WorldSet> fam;
            for (WorldSet s = 0; s <= all; ++s)
                if (rng() & 1u) fam.push_back(s);
            m.nbhd.push_back(std::move(fam));
        }
        for (const std::string& a : atoms) m.valuation[a] = static_cast<WorldSet>(rng()) & all;
        const ClosureReport r = closure_report(m);

        bool nec_ok = true, ros_ok = true;
        for (const FormulaPtr& f : probes) {
            if (truth_set(m, f) == all && truth_set(m, Formula::box(f)) != all) nec_ok = false;
            if (truth_set(m, f) == 0 && truth_set(m, Formula::neg(Formula::box(f))) != all)
                ros_ok = false;
        }
        // the flag implies admissibility over the probe pool; with bot/top in
        // the pool the converse holds as well
        CHECK(r.contains_unit == nec_ok);
        CHECK(r.empty_free == ros_ok);

        if (r.supplemented)
            for (std::size_t i = 0; i + 1 < probes.size(); i += 2) {
                const FormulaPtr a = probes[i], b = probes[i + 1];
                CHECK(globally_valid(
                    m, Formula::imp(Formula::box(Formula::conj(a, b)), Formula::box(a))));
            }
        if (r.intersection_closed)
            for (std::size_t i = 0; i + 1 < probes.size(); i += 2) {
                const FormulaPtr a = probes[i], b = probes[i + 1];
                CHECK(globally_valid(
                    m, Formula::imp(Formula::conj(Formula::box(a), Formula::box(b)),
                                    Formula::box(Formula::conj(a, b)))));
            }
    }
}

TEST_CASE("model files round trip and reject malformed input") {
    const NeighborhoodModel m = parse_model(kThreeWorld);
    const NeighborhoodModel back = parse_model(print_model(m));
    CHECK(same_model(m, back));

    NeighborhoodModel empty_fam;
    empty_fam.worlds = {"a"};
    empty_fam.nbhd = {{0}};
    const NeighborhoodModel back2 = parse_model(print_model(empty_fam));
    CHECK(same_model(empty_fam, back2));
    CHECK(print_model(empty_fam).find("{}") != std::string::npos);

    CHECK_THROWS_AS(parse_model("atom p: a\n"), ModelError);
    CHECK_THROWS_AS(parse_model("worlds: a\nnbhd a: {b}\n"), ModelError);
    CHECK_THROWS_AS(parse_model("worlds: a b\nnbhd a: {}\n"), ModelError);  // missing nbhd b
    CHECK_THROWS_AS(parse_model("worlds: a a\nnbhd a: {}\n"), ModelError);
    CHECK_THROWS_AS(parse_model("worlds: a\nnbhd a: {a\n"), ModelError);
}

TEST_CASE("countermodel search: the three reference separations") {
    SUBCASE("intersection-closed unit D3-valid model refuting an M instance") {
        SearchSpec spec;
        spec.require = RequiredClosure::parse("intersection_closed,contains_unit");
        spec.valid = {parse_formula("[]p -> [][]p"), parse_formula("[](p | q) -> [][](p | q)")};
        spec.target = parse_formula("[]p -> [](p | q)");
        spec.max_worlds = 3;
        spec.atoms = {"p", "q"};
        const auto found = countermodel_search(spec);
        REQUIRE(found.has_value());
        CHECK(found->worlds.size() <= 3);
        const ClosureReport r = closure_report(*found);
        CHECK(r.intersection_closed);
        CHECK(r.contains_unit);
        for (const FormulaPtr& f : spec.valid) CHECK(globally_valid(*found, f));
        CHECK_FALSE(globally_valid(*found, spec.target));

        const auto oracle = brute_search(spec);
        REQUIRE(oracle.has_value());
        CHECK(same_model(*found, *oracle));
    }
    SUBCASE("empty-free model refuting a D instance") {
        SearchSpec spec;
        spec.require = RequiredClosure::parse("empty_free");
        spec.target = parse_formula("[]p -> ~[]~p");
        spec.max_worlds = 2;
        spec.atoms = {"p"};
        const auto found = countermodel_search(spec);
        REQUIRE(found.has_value());
        CHECK(found->worlds.size() <= 2);
        CHECK(closure_report(*found).empty_free);
        CHECK_FALSE(globally_valid(*found, spec.target));
        const auto oracle = brute_search(spec);
        REQUIRE(oracle.has_value());
        CHECK(same_model(*found, *oracle));
    }
    SUBCASE("no supplemented intersection-closed unit model refutes K") {
        SearchSpec spec;
        spec.require = RequiredClosure::parse("supplemented,intersection_closed,contains_unit");
        spec.target = parse_formula("[](p -> q) -> ([]p -> []q)");
        spec.max_worlds = 4;
        spec.atoms = {"p", "q"};
        CHECK_FALSE(countermodel_search(spec).has_value());
        SearchSpec small = spec;
        small.max_worlds = 2;
        CHECK_FALSE(brute_search(small).has_value());
    }
}

TEST_CASE("the documented three-world separation witness is a valid witness") {
    const NeighborhoodModel m = parse_model(kThreeWorld);
    const ClosureReport r = closure_report(m);
    CHECK(r.intersection_closed);
    CHECK(r.contains_unit);
    CHECK(globally_valid(m, parse_formula("[]p -> [][]p")));
    CHECK(globally_valid(m, parse_formula("[](p | q) -> [][](p | q)")));
    CHECK_FALSE(globally_valid(m, parse_formula("[]p -> [](p | q)")));
    CHECK_FALSE(r.supplemented);
}

TEST_CASE("search agrees with the brute oracle on assorted small specs") {
    const struct {
        const char* require;
        const char* target;
        int max_worlds;
    } cases[] = {
        {"", "[]p -> []p | q", 2},
        {"d_consistent", "[]p -> ~[]~p", 2},
        {"supplemented", "[]p & []q -> [](p & q)", 2},
        {"contains_unit", "[]top & ([]p -> [](p | q))", 2},
        {"empty_free,contains_unit", "~[]bot", 2},
        // nested boxes disable the per-valuation prune
        {"", "[]p -> [][]p", 2},
        {"contains_unit", "[][]p -> []p", 2},
    };
    for (const auto& c : cases) {
        CAPTURE(c.target);
        SearchSpec spec;
        spec.require = RequiredClosure::parse(c.require);
        spec.target = parse_formula(c.target);
        spec.max_worlds = c.max_worlds;
        spec.atoms = {"p", "q"};
        const auto mine = countermodel_search(spec);
        const auto ref = brute_search(spec);
        CHECK(mine.has_value() == ref.has_value());
        if (mine && ref) CHECK(same_model(*mine, *ref));
    }
}

TEST_CASE("search is deterministic across repeats and thread counts") {
    SearchSpec spec;
    spec.require = RequiredClosure::parse("intersection_closed,contains_unit");
    spec.valid = {parse_formula("[]p -> [][]p")};
    spec.target = parse_formula("[]p -> [](p | q)");
    spec.max_worlds = 3;
    spec.atoms = {"p", "q"};
    const auto a = countermodel_search(spec, 1);
    const auto b = countermodel_search(spec, 4);
    const auto c = countermodel_search(spec, 4);
    REQUIRE(a.has_value());
    REQUIRE(b.has_value());
    REQUIRE(c.has_value());
    CHECK(same_model(*a, *b));
    CHECK(same_model(*a, *c));
}

TEST_CASE("search input validation") {
    SearchSpec spec;
    spec.target = parse_formula("[]p");
    spec.max_worlds = 0;
    spec.atoms = {"p"};
    CHECK_THROWS_AS(countermodel_search(spec), ModelError);
    spec.max_worlds = 9;
    CHECK_THROWS_AS(countermodel_search(spec), ModelError);
    CHECK_THROWS_AS(RequiredClosure::parse("bogus"), ModelError);
}
