#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "g2ws/arith.hpp"
#include "g2ws/formula.hpp"  // ParseError

using namespace g2ws;

namespace {

// seeded generator for quantifier-free formulas
struct AGen {
    std::mt19937 rng;
    std::vector<std::string> vars;

    explicit AGen(unsigned seed, std::vector<std::string> vs) : rng(seed), vars(std::move(vs)) {}

    int pick(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

    TermPtr term(int depth) {
        if (depth == 0) {
            if (pick(0, 3) == 0) return ArithTerm::zero();
            return ArithTerm::variable(vars[static_cast<std::size_t>(pick(0, static_cast<int>(vars.size()) - 1))]);
        }
        switch (pick(0, 3)) {
            case 0: return ArithTerm::succ(term(depth - 1));
            case 1: return ArithTerm::plus(term(depth - 1), term(depth - 1));
            case 2: return ArithTerm::times(term(depth - 1), term(depth - 1));
            default: return term(0);
        }
    }

    QFPtr formula(int depth) {
        if (depth == 0) {
            const TermPtr a = term(pick(0, 2)), b = term(pick(0, 2));
            return pick(0, 1) ? QFFormula::eq(a, b) : QFFormula::le(a, b);
        }
        switch (pick(0, 3)) {
            case 0: return QFFormula::qnot(formula(depth - 1));
            case 1: return QFFormula::qand(formula(depth - 1), formula(depth - 1));
            case 2: return QFFormula::qor(formula(depth - 1), formula(depth - 1));
            default: return formula(0);
        }
    }
};

std::vector<std::string> nf_prefix(const NFPtr& f) {
    std::vector<std::string> out;
    if (!f) return out;
    if (f->kind == NFKind::Exists) out.push_back(f->bound);
    for (const std::string& v : nf_prefix(f->f0)) out.push_back(v);
    for (const std::string& v : nf_prefix(f->f1)) out.push_back(v);
    return out;
}

int count_atoms(const NFPtr& f, bool& only_eq) {
    if (!f) return 0;
    if (f->kind == NFKind::Eq) return 1;
    return count_atoms(f->f0, only_eq) + count_atoms(f->f1, only_eq);
}

void all_terms_simple(const NFPtr& f, bool& ok) {
    if (!f) return;
    if (f->kind == NFKind::Eq) {
        ok = ok && is_simple(f->t0) && is_simple(f->t1);
        return;
    }
    all_terms_simple(f->f0, ok);
    all_terms_simple(f->f1, ok);
}

}  // namespace

TEST_CASE("term degree and simplicity") {
    CHECK(term_degree(parse_qf("x = x")->t0) == 0);
    CHECK(term_degree(ArithTerm::succ(ArithTerm::variable("x"))) == 1);
    // s(x) + 0 counts s, + and 0
    const TermPtr t = ArithTerm::plus(ArithTerm::succ(ArithTerm::variable("x")), ArithTerm::zero());
    CHECK(term_degree(t) == 3);
    CHECK(is_simple(ArithTerm::variable("x")));
    CHECK(is_simple(ArithTerm::plus(ArithTerm::variable("x"), ArithTerm::variable("y"))));
    CHECK_FALSE(is_simple(ArithTerm::succ(ArithTerm::succ(ArithTerm::variable("x")))));
    CHECK(is_simple(ArithTerm::zero()));
    CHECK_FALSE(is_simple(t));
}

TEST_CASE("arith parsing and printing") {
    CHECK(print_qf(parse_qf("x = y")) == "x = y");
    CHECK(print_qf(parse_qf("x <= y & ~(x = y)")) == "x <= y & ~(x = y)");
    CHECK(print_qf(parse_qf("s(x) + 0 = y * (z + x)")) == "s(x) + 0 = y * (z + x)");
    CHECK(print_qf(parse_qf("(x = y | x <= z) & 0 = 0")) == "(x = y | x <= z) & 0 = 0");
    CHECK_THROWS_AS(parse_qf("x ="), ParseError);
    CHECK_THROWS_AS(parse_qf("x < y"), ParseError);
    CHECK_THROWS_AS(parse_qf("= y"), ParseError);

    AGen gen(8, {"x", "y", "z"});
    for (int i = 0; i < 300; ++i) {
        const QFPtr f = gen.formula(gen.pick(0, 4));
        const QFPtr back = parse_qf(print_qf(f));
        CHECK(print_qf(back) == print_qf(f));
    }
}

TEST_CASE("comparison elimination") {
    SUBCASE("inequality becomes a disjunction of strict failures") {
        const NFPtr nf = eliminate_comparisons(parse_qf("~(x = y)"));
        REQUIRE(nf->kind == NFKind::Or);
        REQUIRE(nf->f0->kind == NFKind::Exists);
        REQUIRE(nf->f1->kind == NFKind::Exists);
        // first disjunct: exists z (y + s(z) = x)
        const NFPtr a = nf->f0->f0;
        REQUIRE(a->kind == NFKind::Eq);
        CHECK(print_term(a->t0) == "y + s(y1)");
        CHECK(print_term(a->t1) == "x");
        const NFPtr b = nf->f1->f0;
        CHECK(print_term(b->t0) == "x + s(y2)");
        CHECK(print_term(b->t1) == "y");
    }
    SUBCASE("ordering becomes an existential sum") {
        const NFPtr nf = eliminate_comparisons(parse_qf("x <= y"));
        REQUIRE(nf->kind == NFKind::Exists);
        CHECK(print_term(nf->f0->t0) == "x + y1");
        CHECK(print_term(nf->f0->t1) == "y");
    }
    SUBCASE("plain equality is untouched") {
        const NFPtr nf = eliminate_comparisons(parse_qf("x = y"));
        REQUIRE(nf->kind == NFKind::Eq);
        CHECK(print_term(nf->t0) == "x");
    }
    SUBCASE("negations are pushed to atoms first") {
        const NFPtr nf = eliminate_comparisons(parse_qf("~(x = y & x <= y)"));
        CHECK(nf->kind == NFKind::Or);
        bool ok = true;
        all_terms_simple(nf, ok);  // no nesting introduced beyond s(z)
        bool only_eq = true;
        CHECK(count_atoms(nf, only_eq) == 3);  // != gives two atoms, !<= one
    }
}

TEST_CASE("term flattening") {
    const QFPtr src = parse_qf("s(s(x)) = y");
    const NFPtr nf = flatten_terms(eliminate_comparisons(src), src);
    REQUIRE(nf->kind == NFKind::Exists);
    CHECK(nf->bound == "y1");
    const NFPtr body = nf->f0;
    REQUIRE(body->kind == NFKind::And);
    CHECK(print_term(body->f0->t0) == "y1");
    CHECK(print_term(body->f0->t1) == "s(x)");
    CHECK(print_term(body->f1->t0) == "s(y1)");
    CHECK(print_term(body->f1->t1) == "y");

    // already simple: unchanged
    const QFPtr simple = parse_qf("x + y = z");
    const NFPtr nfs = flatten_terms(eliminate_comparisons(simple), simple);
    CHECK(nfs->kind == NFKind::Eq);
    CHECK(nf_prefix(nfs).empty());

    // nested product with a non-simple successor argument
    const QFPtr deep = parse_qf("(x * y) + s(0) = w");
    const NFPtr nfd = flatten_terms(eliminate_comparisons(deep), deep);
    bool ok = true;
    all_terms_simple(nfd, ok);
    CHECK(ok);
}

TEST_CASE("existential disjunctive form: pinned shapes") {
    SUBCASE("x <= y") {
        const ExistentialDNF g = to_existential_dnf(parse_qf("x <= y"));
        CHECK(g.prefix.size() == 2);  // difference witness and split variable
        REQUIRE(g.rows.size() == 1);
        REQUIRE(g.rows[0].size() == 2);
        CHECK(g.rows[0][0].z == g.prefix[1]);
        CHECK(print_term(g.rows[0][0].t) == "x + " + g.prefix[0]);
        CHECK(print_term(g.rows[0][1].t) == "y");
        CHECK(bounded_equiv(parse_qf("x <= y"), g, 4));
    }
    SUBCASE("0 = 0") {
        const ExistentialDNF g = to_existential_dnf(parse_qf("0 = 0"));
        CHECK(g.prefix.size() == 1);
        REQUIRE(g.rows.size() == 1);
        REQUIRE(g.rows[0].size() == 2);
        CHECK(print_term(g.rows[0][0].t) == "0");
        CHECK(print_term(g.rows[0][1].t) == "0");
        CHECK(g.free_vars.empty());
        CHECK(bounded_equiv(parse_qf("0 = 0"), g, 4));
    }
    SUBCASE("disjunction rows are padded to equal length") {
        const ExistentialDNF g = to_existential_dnf(parse_qf("x = y | x <= y"));
        CHECK(g.rows.size() == 2);
        CHECK(g.rows[0].size() == g.rows[1].size());
        g.validate();
        CHECK(bounded_equiv(parse_qf("x = y | x <= y"), g, 4));
    }
    SUBCASE("bare left variables are kept as the matrix variable") {
        const ExistentialDNF g = to_existential_dnf(parse_qf("x = s(y)"));
        CHECK(g.prefix.empty());
        REQUIRE(g.rows.size() == 1);
        REQUIRE(g.rows[0].size() == 1);
        CHECK(g.rows[0][0].z == "x");
        CHECK(print_term(g.rows[0][0].t) == "s(y)");
    }
}

TEST_CASE("evaluation") {
    CHECK(eval_qf(parse_qf("s(0) + s(0) = s(s(0))"), {}));
    CHECK_FALSE(eval_qf(parse_qf("x <= y"), {{"x", 3}, {"y", 2}}));
    CHECK(eval_qf(parse_qf("x * y = 0"), {{"x", 0}, {"y", 7}}));
    CHECK_THROWS_AS(eval_qf(parse_qf("x = y"), {{"x", 1}}), ArithError);
}

TEST_CASE("bounded equivalence rejects a wrong matrix") {
    ExistentialDNF wrong;
    wrong.free_vars = {"x", "y"};
    wrong.rows = {{{"x", ArithTerm::variable("y")}}};
    CHECK_FALSE(bounded_equiv(parse_qf("x <= y"), wrong, 4));
    ExistentialDNF mismatched;
    mismatched.free_vars = {"x"};
    mismatched.rows = {{{"x", ArithTerm::zero()}}};
    CHECK_THROWS_AS(bounded_equiv(parse_qf("x <= y"), mismatched, 2), ArithError);
}

TEST_CASE("the documented examples agree with the oracle") {
    for (const char* text : {"~(x = y)", "x <= y", "s(s(x)) = y", "(x * y) + s(0) = w"}) {
        CAPTURE(text);
        const QFPtr f = parse_qf(text);
        CHECK(bounded_equiv(f, to_existential_dnf(f), 4));
    }
}

TEST_CASE("random corpus: shape, equivalence, bound adequacy, determinism") {
    AGen gen(20240815, {"x", "y", "z"});
    int with_prefix = 0;
    for (int i = 0; i < 200; ++i) {
        const QFPtr f = gen.formula(gen.pick(0, 4));
        CAPTURE(print_qf(f));
        const ExistentialDNF g = to_existential_dnf(f);
        g.validate();
        CHECK(bounded_equiv(f, g, 4));
        // doubling the witness range never flips the verdict
        CHECK(bounded_equiv_scaled(f, g, 4, 2));
        if (!g.prefix.empty()) ++with_prefix;
        if (i % 20 == 0) {
            const ExistentialDNF h = to_existential_dnf(f);
            CHECK(h.prefix == g.prefix);
            CHECK(h.to_string() == g.to_string());
        }
    }
    CHECK(with_prefix > 100);
}
