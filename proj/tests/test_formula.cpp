#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "g2ws/formula.hpp"
#include "support.hpp"

using namespace g2ws;

TEST_CASE("parse builds the expected trees") {
    const FormulaPtr f = parse_formula("[]p -> [][]p");
    CHECK(f->conn == Conn::Imp);
    CHECK(f->lhs->conn == Conn::Box);
    CHECK(f->lhs->lhs->conn == Conn::Atom);
    CHECK(f->rhs->conn == Conn::Box);
    CHECK(f->rhs->lhs->conn == Conn::Box);

    const FormulaPtr g = parse_formula("#c <-> ~[]#c");
    CHECK(g->conn == Conn::Iff);
    CHECK(g->lhs->conn == Conn::Const);
    CHECK(g->rhs->conn == Conn::Not);
    CHECK(g->rhs->lhs->conn == Conn::Box);
    CHECK(g->rhs->lhs->lhs->conn == Conn::Const);

    const FormulaPtr h = parse_formula("[]p & []q -> [](p & q)");
    CHECK(h->conn == Conn::Imp);
    CHECK(h->lhs->conn == Conn::And);
    CHECK(h->rhs->conn == Conn::Box);
    CHECK(h->rhs->lhs->conn == Conn::And);
    CHECK(equal(h, Formula::imp(Formula::conj(Formula::box(Formula::atom("p")),
                                              Formula::box(Formula::atom("q"))),
                                Formula::box(Formula::conj(Formula::atom("p"),
                                                           Formula::atom("q"))))));
}

TEST_CASE("parse is whitespace insensitive and reports offsets") {
    CHECK(equal(parse_formula("  []p->[] []   p "), parse_formula("[]p -> [][]p")));
    CHECK_THROWS_AS(parse_formula("p -> $q"), ParseError);
    CHECK_THROWS_AS(parse_formula("p ->"), ParseError);
    CHECK_THROWS_AS(parse_formula("(p -> q"), ParseError);
    CHECK_THROWS_AS(parse_formula("p q"), ParseError);
    try {
        parse_formula("p & $");
    } catch (const ParseError& e) {
        CHECK(e.offset == 4);
    }
}

TEST_CASE("printing uses minimal parentheses") {
    CHECK(print_formula(Formula::box(Formula::atom("p"))) == "[]p");
    CHECK(print_formula(Formula::neg(Formula::box(Formula::falsum()))) == "~[]bot");
    CHECK(print_formula(Formula::conj(Formula::box(Formula::atom("p")),
                                      Formula::box(Formula::atom("q")))) == "[]p & []q");
    CHECK(print_formula(parse_formula("[]p & []q -> [](p & q)")) == "[]p & []q -> [](p & q)");
    CHECK(print_formula(parse_formula("a <-> b <-> c")) == "a <-> b <-> c");
    CHECK(print_formula(parse_formula("a <-> (b <-> c)")) == "a <-> (b <-> c)");
    CHECK(print_formula(parse_formula("a -> b -> c")) == "a -> b -> c");
    CHECK(print_formula(parse_formula("(a -> b) -> c")) == "(a -> b) -> c");
    CHECK(print_formula(parse_formula("~(p & q)")) == "~(p & q)");
    CHECK(print_formula(parse_formula("P(p -> q)")) == "P(p -> q)");
}

TEST_CASE("round trip over random formulas") {
    test::Gen gen(20240811);
    const std::vector<std::string> atoms = {"p", "q", "r", "s1"};
    const std::vector<std::string> consts = {"c", "tau"};
    for (int i = 0; i < 1000; ++i) {
        const FormulaPtr f = gen.formula(gen.pick(0, 8), atoms, consts, true);
        const FormulaPtr back = parse_formula(print_formula(f));
        CHECK(equal(f, back));
    }
}

TEST_CASE("is_modalized") {
    CHECK(is_modalized("c", parse_formula("~[]#c")));
    CHECK_FALSE(is_modalized("c", parse_formula("#c -> []#c")));
    CHECK(is_modalized("c", parse_formula("[](#c & []#c)")));
    CHECK(is_modalized("c", parse_formula("p & q")));   // no occurrence
    CHECK(is_modalized("c", parse_formula("P(#c)")));   // P counts as a modal former
}

TEST_CASE("fixed point environments enforce their invariants") {
    FixedPointEnv env;
    CHECK_THROWS_AS(env.define("tau", parse_formula("top")), EnvError);
    CHECK_THROWS_AS(env.define("c", parse_formula("#c -> []#c")), EnvError);  // bare occurrence
    CHECK_THROWS_AS(env.define("c", parse_formula("[]#d")), EnvError);        // forward reference
    env.define("c", parse_formula("~[]#c"));
    CHECK_THROWS_AS(env.define("c", parse_formula("[]#c")), EnvError);        // duplicate
    env.define("d", parse_formula("[](#c & []#d)"));
    CHECK(env.is_declared("tau"));
    CHECK(env.is_declared("c"));
    CHECK_FALSE(env.is_declared("nope"));
    // every accepted definition is modalized in its own constant
    for (const auto& [name, def] : env.definitions()) CHECK(is_modalized(name, def));
}

TEST_CASE("sigma-box class") {
    FixedPointEnv env;
    CHECK(is_sigma_box(parse_formula("[](p -> q)"), env));
    CHECK_FALSE(is_sigma_box(parse_formula("p | []q"), env));
    CHECK(is_sigma_box(parse_formula("bot"), env));
    CHECK(is_sigma_box(parse_formula("top & []p"), env));
    CHECK_FALSE(is_sigma_box(parse_formula("~[]p"), env));
    CHECK_FALSE(is_sigma_box(parse_formula("#tau"), env));
    // conditionals over tau stay in the class
    CHECK(is_sigma_box(parse_formula("#tau -> []p"), env));
    CHECK_FALSE(is_sigma_box(parse_formula("p -> []p"), env));

    env.define("c", parse_formula("[]~(#tau -> #c)"));
    CHECK(is_sigma_box(parse_formula("#c"), env));
    CHECK_THROWS_AS(is_sigma_box(parse_formula("#nope"), env), LogicError);
}

TEST_CASE("sigma-box is monotone under conjunction and disjunction") {
    test::Gen gen(7);
    FixedPointEnv env;
    const std::vector<std::string> atoms = {"p", "q"};
    for (int i = 0; i < 200; ++i) {
        const FormulaPtr a = gen.sigma_box(gen.pick(0, 3), atoms);
        const FormulaPtr b = gen.sigma_box(gen.pick(0, 3), atoms);
        REQUIRE(is_sigma_box(a, env));
        REQUIRE(is_sigma_box(b, env));
        CHECK(is_sigma_box(Formula::conj(a, b), env));
        CHECK(is_sigma_box(Formula::disj(a, b), env));
    }
}

TEST_CASE("tautology checking treats boxes and constants opaquely") {
    CHECK(taut_check(parse_formula("p -> p")));
    CHECK_FALSE(taut_check(parse_formula("[]p -> [][]p")));
    CHECK(taut_check(parse_formula("~(~(p & []p) & (p & []p))")));
    CHECK(taut_check(parse_formula("[]p -> []p")));
    CHECK(taut_check(parse_formula("#c | ~#c")));
    CHECK_FALSE(taut_check(parse_formula("#c")));
    CHECK(taut_check(parse_formula("P(p) -> P(p)")));
    CHECK_FALSE(taut_check(parse_formula("P(p) -> P(q)")));
    CHECK(taut_check(parse_formula("bot -> p")));
    CHECK_FALSE(taut_check(parse_formula("top -> bot")));
}

TEST_CASE("tautology agrees with the truth-table oracle on random formulas") {
    test::Gen gen(991);
    const std::vector<std::string> atoms = {"p", "q", "r"};
    const std::vector<std::string> consts = {"c"};
    int checked = 0;
    for (int i = 0; i < 1000; ++i) {
        const FormulaPtr f = gen.formula(gen.pick(0, 6), atoms, consts, false);
        const test::TruthTableOracle oracle(f);
        if (oracle.atom_count() > 8) continue;
        ++checked;
        CHECK(taut_check(f) == oracle.tautology(f));
    }
    CHECK(checked > 500);
}

TEST_CASE("propositional consequence") {
    const auto p = parse_formula("p"), q = parse_formula("q");
    CHECK(prop_consequence({p, Formula::imp(p, q)}, q));
    CHECK_FALSE(prop_consequence({p}, q));
    CHECK(prop_consequence({}, parse_formula("p | ~p")));
    CHECK(prop_consequence({parse_formula("[]a -> []~a"), parse_formula("[]a -> ~[]~a")},
                           parse_formula("~[]a")));
}
