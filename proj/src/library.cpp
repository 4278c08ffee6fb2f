#include "g2ws/library.hpp"

#include <map>

namespace g2ws {

namespace {
const FormulaPtr kBot = Formula::falsum();
FormulaPtr tau() { return Formula::constant(FixedPointEnv::kTau); }

// bx[from] & bx[from+1] & ... & bx[to], left associated
FormulaPtr range_conj(const std::vector<FormulaPtr>& bx, int from, int to) {
    FormulaPtr f = bx[static_cast<std::size_t>(from)];
    for (int i = from + 1; i <= to; ++i) f = Formula::conj(f, bx[static_cast<std::size_t>(i)]);
    return f;
}
}  // namespace

Proof gen_ros_from_conS(const FormulaPtr& a) {
    ProofBuilder b;
    b.hypothesis("neg", Formula::neg(a));
    b.hypothesis("cons", Formula::imp(Formula::box(a), Formula::neg(Formula::box(Formula::neg(a)))));
    const int h1 = b.hyp("neg");
    const int n = b.nec(h1);
    const int h2 = b.hyp("cons");
    const FormulaPtr goal = Formula::neg(Formula::box(a));
    b.close(goal, {n, h2});
    return b.finish(goal);
}

Proof gen_conS_from_ros_C(const FormulaPtr& a) {
    ProofBuilder b;
    const FormulaPtr contra = Formula::conj(a, Formula::neg(a));
    const int t = b.taut(Formula::neg(contra));
    const int r = b.ros(t);
    const int c = b.ax({TagKind::C}, {a, Formula::neg(a)});
    const FormulaPtr goal = Formula::imp(Formula::box(a), Formula::neg(Formula::box(Formula::neg(a))));
    b.close(goal, {r, c});
    return b.finish(goal);
}

Proof gen_conL_from_ros() {
    ProofBuilder b;
    const int t = b.taut(Formula::neg(kBot));
    b.ros(t);
    return b.finish(Formula::neg(Formula::box(kBot)));
}

Proof gen_ros_from_conL_E(const FormulaPtr& a, bool via_m) {
    ProofBuilder b;
    b.hypothesis("neg", Formula::neg(a));
    b.hypothesis("conl", Formula::neg(Formula::box(kBot)));
    const int h1 = b.hyp("neg");
    int transfer;
    if (via_m) {
        const int i = b.close(Formula::imp(a, kBot), {h1});
        transfer = b.rm(i);  // []a -> []bot
    } else {
        const int i = b.close(Formula::iff(a, kBot), {h1});
        transfer = b.re(i);  // []a <-> []bot
    }
    const int h2 = b.hyp("conl");
    const FormulaPtr goal = Formula::neg(Formula::box(a));
    b.close(goal, {transfer, h2});
    return b.finish(goal);
}

Proof gen_g2_conS_E_D3() {
    const FormulaPtr c = Formula::constant("c");
    FixedPointEnv env;
    env.define("c", Formula::neg(Formula::box(c)));
    ProofBuilder b(std::move(env));
    b.hypothesis("cons", Formula::imp(Formula::box(c), Formula::neg(Formula::box(Formula::neg(c)))));
    const int fx = b.fix("c");
    const int flip = b.close(Formula::iff(Formula::neg(c), Formula::box(c)), {fx});
    const int eq = b.re(flip);  // []~#c <-> [][]#c
    const int d3 = b.ax({TagKind::D3, 1, 2}, {c});
    const int h = b.hyp("cons");
    const int got_c = b.close(c, {fx, eq, d3, h});
    const int boxed = b.nec(got_c);
    b.close(kBot, {eq, d3, h, boxed});
    return b.finish(kBot);
}

Proof gen_g2_conS_S1Cm() {
    const FormulaPtr c = Formula::constant("c");
    const FormulaPtr guarded = Formula::imp(tau(), c);
    FixedPointEnv env;
    env.define("c", Formula::box(Formula::neg(guarded)));
    ProofBuilder b(std::move(env));
    b.hypothesis("tau", tau());
    b.hypothesis("cons",
                 Formula::imp(Formula::box(guarded), Formula::neg(Formula::box(Formula::neg(guarded)))));
    const int fx = b.fix("c");
    const int s1cm = b.ax({TagKind::S1Cm}, {c});
    const int h = b.hyp("cons");
    const int ht = b.hyp("tau");
    const int refuted = b.close(Formula::neg(guarded), {fx, s1cm, h, ht});
    const int boxed = b.nec(refuted);
    b.close(kBot, {fx, s1cm, h, boxed});
    return b.finish(kBot);
}

Proof gen_g2_conL_E_C_D3() {
    const FormulaPtr c = Formula::constant("c");
    FixedPointEnv env;
    env.define("c", Formula::neg(Formula::box(c)));
    ProofBuilder b(std::move(env));
    b.hypothesis("conl", Formula::neg(Formula::box(kBot)));
    const int fx = b.fix("c");
    const int h = b.hyp("conl");
    const FormulaPtr contra = Formula::conj(c, Formula::neg(c));
    const int t = b.taut(Formula::iff(contra, kBot));
    const int eqbot = b.re(t);  // [](#c & ~#c) <-> []bot
    const int cx = b.ax({TagKind::C}, {c, Formula::neg(c)});
    const int cons =
        b.close(Formula::imp(Formula::box(c), Formula::neg(Formula::box(Formula::neg(c)))), {h, eqbot, cx});
    const int flip = b.close(Formula::iff(Formula::neg(c), Formula::box(c)), {fx});
    const int eq = b.re(flip);
    const int d3 = b.ax({TagKind::D3, 1, 2}, {c});
    const int got_c = b.close(c, {fx, cons, eq, d3});
    const int boxed = b.nec(got_c);
    b.close(kBot, {cons, eq, d3, boxed});
    return b.finish(kBot);
}

Proof gen_nonros_C_D3() {
    const FormulaPtr c = Formula::constant("c");
    const FormulaPtr strong = Formula::conj(c, Formula::box(c));  // #c & []#c
    const FormulaPtr refut = Formula::neg(strong);
    FixedPointEnv env;
    env.define("c", Formula::box(refut));
    ProofBuilder b(std::move(env));
    const int fx = b.fix("c");
    const int d3 = b.ax({TagKind::D3, 1, 2}, {c});
    const int c1 = b.ax({TagKind::C}, {c, Formula::box(c)});
    const int up = b.close(Formula::imp(Formula::box(c), Formula::box(strong)), {d3, c1});
    const int c2 = b.ax({TagKind::C}, {refut, strong});
    const int to_pair =
        b.close(Formula::imp(strong, Formula::box(Formula::conj(refut, strong))), {fx, up, c2});
    const int t = b.taut(Formula::neg(Formula::conj(refut, strong)));
    const int r = b.ros(t);
    const int no_strong = b.close(refut, {to_pair, r});
    const int boxed = b.nec(no_strong);
    const int got_c = b.close(c, {fx, boxed});
    const int bc = b.nec(got_c);
    b.close(kBot, {no_strong, got_c, bc});
    return b.finish(kBot);
}

Proof gen_lob_variant(const FormulaPtr& a) {
    const FormulaPtr d = Formula::constant("d");
    FixedPointEnv env;
    env.define("d", Formula::imp(Formula::box(d), a));
    ProofBuilder b(std::move(env));
    const FormulaPtr strong_d = Formula::conj(d, Formula::box(d));
    const FormulaPtr strong_a = Formula::conj(a, Formula::box(d));
    b.hypothesis("main", Formula::imp(Formula::box(strong_a), a));
    const int fx = b.fix("d");
    const int swap = b.close(Formula::iff(strong_d, strong_a), {fx});
    const int eq = b.re(swap);  // [](#d & []#d) <-> [](a & []#d)
    const int d3 = b.ax({TagKind::D3, 1, 2}, {d});
    const int cx = b.ax({TagKind::C}, {d, Formula::box(d)});
    const int h = b.hyp("main");
    const int got_d = b.close(d, {fx, eq, d3, cx, h});
    const int boxed = b.nec(got_d);
    b.close(a, {fx, eq, d3, cx, h, boxed});
    return b.finish(a);
}

Proof gen_weak_lob(int n, int k, const FormulaPtr& a) {
    if (n < 1 || k < 1) throw ProofError("weak_lob requires n >= 1 and k >= 1");
    const FormulaPtr e = Formula::constant("e");
    const int top_i = n + k - 1;  // conjuncts []^1 e .. []^(n+k-1) e

    std::vector<FormulaPtr> bx(static_cast<std::size_t>(n + k) + 1);
    for (int i = 0; i <= n + k; ++i) bx[i] = box_iter(e, i);

    // A_j = B1 & ... & Bj, left associated
    std::vector<FormulaPtr> prefix(static_cast<std::size_t>(top_i) + 1);
    prefix[1] = bx[1];
    for (int j = 2; j <= top_i; ++j) prefix[j] = Formula::conj(prefix[j - 1], bx[j]);
    const FormulaPtr big = prefix[top_i];

    FixedPointEnv env;
    env.define("e", Formula::imp(big, a));
    ProofBuilder b(std::move(env));
    b.hypothesis("main", Formula::imp(Formula::box(a), a));

    const int fx = b.fix("e");
    const int unfold = b.close(Formula::imp(e, Formula::imp(big, a)), {fx});
    const int boxed_unfold = b.nec(unfold);
    const int k_outer = b.ax({TagKind::K}, {e, Formula::imp(big, a)});
    const int step = b.mp(boxed_unfold, k_outer);  // []e -> [](big -> a)
    const int k_inner = b.ax({TagKind::K}, {big, a});

    // (B2 & .. & B(j+1)) -> []A_j, by iterated K-derived C instances
    int chain = b.taut(Formula::imp(bx[2], bx[2]));
    for (int j = 2; j <= top_i; ++j) {
        const FormulaPtr prev = prefix[j - 1];
        // K-derived C instance at (A_{j-1}, Bj)
        const FormulaPtr pair = Formula::conj(prev, bx[j]);
        const int t = b.taut(Formula::imp(prev, Formula::imp(bx[j], pair)));
        const int nt = b.nec(t);
        const int k1 = b.ax({TagKind::K}, {prev, Formula::imp(bx[j], pair)});
        const int half = b.mp(nt, k1);
        const int k2 = b.ax({TagKind::K}, {bx[j], pair});
        FormulaPtr target = Formula::imp(range_conj(bx, 2, j + 1), Formula::box(prefix[j]));
        chain = b.close(target, {chain, half, k2});
    }

    const int d3 = b.ax({TagKind::D3, n, n + k}, {e});
    const int h = b.hyp("main");
    const int body = b.close(Formula::imp(big, a), {step, k_inner, chain, d3, h});
    const int got_e = b.close(e, {fx, body});
    std::vector<int> units;
    int cur = b.nec(got_e);  // B1
    units.push_back(cur);
    for (int i = 2; i <= top_i; ++i) {
        cur = b.nec(cur);
        units.push_back(cur);
    }
    std::vector<int> from = {body};
    from.insert(from.end(), units.begin(), units.end());
    b.close(a, from);
    return b.finish(a);
}

std::vector<TheoremEntry> corpus() {
    const FormulaPtr p = Formula::atom("p");
    std::vector<TheoremEntry> out;
    out.push_back({"ros_from_conS", "Rosser conclusion from a schematic-consistency instance",
                   parse_condition_set(""), [p] { return gen_ros_from_conS(p); }});
    out.push_back({"conS_from_ros_C", "schematic-consistency instance from C and Ros",
                   parse_condition_set("C,Ros"), [p] { return gen_conS_from_ros_C(p); }});
    out.push_back({"conL_from_ros", "~[]bot from Ros", parse_condition_set("Ros"),
                   [] { return gen_conL_from_ros(); }});
    out.push_back({"ros_from_conL_E", "Rosser conclusion from ~[]bot and E",
                   parse_condition_set("E"), [p] { return gen_ros_from_conL_E(p); }});
    out.push_back({"g2_conS_E_D3", "no schematic consistency under E and D3",
                   parse_condition_set("E,D3"), [] { return gen_g2_conS_E_D3(); }});
    out.push_back({"g2_conS_S1Cm", "no schematic consistency under S1Cm",
                   parse_condition_set("S1Cm"), [] { return gen_g2_conS_S1Cm(); }});
    out.push_back({"g2_conL_E_C_D3", "no ~[]bot under E, C and D3",
                   parse_condition_set("E,C,D3"), [] { return gen_g2_conL_E_C_D3(); }});
    out.push_back({"nonros_C_D3", "Ros is inconsistent with C and D3 over fixed points",
                   parse_condition_set("C,D3,Ros"), [] { return gen_nonros_C_D3(); }});
    out.push_back({"lob_variant", "Loeb variant under E, C and D3",
                   parse_condition_set("E,C,D3"), [p] { return gen_lob_variant(p); }});
    out.push_back({"weak_lob", "Loeb theorem under K and D3(n,n+k), at (1,1)",
                   parse_condition_set("K,D3"), [p] { return gen_weak_lob(1, 1, p); }});
    return out;
}

// ---------------------------------------------------------------- rewrites

namespace {

// Copies `src` into `b`, expanding lines for which `expand` returns a
// replacement line index; all references are renumbered.
Proof transform_proof(const Proof& src,
                      const std::function<std::optional<int>(ProofBuilder&, const ProofLine&,
                                                             const std::map<int, int>&)>& expand) {
    FixedPointEnv env;
    for (const auto& [name, def] : src.env.definitions()) env.define(name, def);
    ProofBuilder b(std::move(env));
    for (const auto& [id, f] : src.hypotheses) b.hypothesis(id, f);
    std::map<int, int> remap;
    for (const ProofLine& l : src.lines) {
        if (auto replaced = expand(b, l, remap)) {
            remap[l.index] = *replaced;
            continue;
        }
        struct V {
            ProofBuilder& b;
            const ProofLine& l;
            const std::map<int, int>& remap;
            int r(int i) const { return remap.at(i); }
            int operator()(const just::Taut&) const { return b.taut(l.formula); }
            int operator()(const just::Mp& x) const { return b.mp(r(x.from), r(x.implication)); }
            int operator()(const just::Nec& x) const { return b.nec(r(x.from)); }
            int operator()(const just::Re& x) const { return b.re(r(x.from)); }
            int operator()(const just::Rm& x) const { return b.rm(r(x.from)); }
            int operator()(const just::Ros& x) const { return b.ros(r(x.from)); }
            int operator()(const just::Ax& x) const { return b.ax(x.tag, x.args); }
            int operator()(const just::Fix& x) const { return b.fix(x.constant); }
            int operator()(const just::Hyp& x) const { return b.hyp(x.id); }
        };
        remap[l.index] = std::visit(V{b, l, remap}, l.just);
    }
    return b.finish(src.goal);
}

}  // namespace

Proof rewrite_with_k(const Proof& p) {
    return transform_proof(p, [](ProofBuilder& b, const ProofLine& l,
                                 const std::map<int, int>& remap) -> std::optional<int> {
        if (const auto* re = std::get_if<just::Re>(&l.just)) {
            const FormulaPtr src = b.formula_at(remap.at(re->from));  // a <-> b
            const FormulaPtr &a = src->lhs, &c = src->rhs;
            const int base = remap.at(re->from);
            const int fwd = b.close(Formula::imp(a, c), {base});
            const int nf = b.nec(fwd);
            const int k1 = b.ax({TagKind::K}, {a, c});
            const int bf = b.mp(nf, k1);
            const int bwd = b.close(Formula::imp(c, a), {base});
            const int nb = b.nec(bwd);
            const int k2 = b.ax({TagKind::K}, {c, a});
            const int bb = b.mp(nb, k2);
            return b.close(Formula::iff(Formula::box(a), Formula::box(c)), {bf, bb});
        }
        if (const auto* ax = std::get_if<just::Ax>(&l.just); ax && ax->tag.kind == TagKind::C) {
            const FormulaPtr &x = ax->args[0], &y = ax->args[1];
            const FormulaPtr xy = Formula::conj(x, y);
            const int t = b.taut(Formula::imp(x, Formula::imp(y, xy)));
            const int nt = b.nec(t);
            const int k1 = b.ax({TagKind::K}, {x, Formula::imp(y, xy)});
            const int half = b.mp(nt, k1);
            const int k2 = b.ax({TagKind::K}, {y, xy});
            return b.close(l.formula, {half, k2});
        }
        return std::nullopt;
    });
}

Proof rewrite_s1cm_with_s1c(const Proof& p) {
    return transform_proof(p, [](ProofBuilder& b, const ProofLine& l,
                                 const std::map<int, int>&) -> std::optional<int> {
        if (const auto* ax = std::get_if<just::Ax>(&l.just); ax && ax->tag.kind == TagKind::S1Cm) {
            const FormulaPtr guarded = Formula::imp(tau(), ax->args[0]);
            const int line = b.ax({TagKind::S1C}, {guarded});
            return b.close(l.formula, {line});
        }
        return std::nullopt;
    });
}

// ---------------------------------------------------------------- figure 1

namespace {

struct ProvedEdge {
    std::string name;
    Proof proof;
    ConditionSet cs;
};

std::vector<ProvedEdge> mechanized_proofs() {
    const FormulaPtr p = Formula::atom("p");
    const FormulaPtr q = Formula::atom("q");
    const FixedPointEnv none;
    std::vector<ProvedEdge> out;
    out.push_back({"conL_from_ros", gen_conL_from_ros(), parse_condition_set("Ros")});
    out.push_back({"ros_from_conS", gen_ros_from_conS(p), parse_condition_set("")});
    out.push_back({"g2_conL_E_C_D3", gen_g2_conL_E_C_D3(), parse_condition_set("E,C,D3")});
    out.push_back({"g2_conS_E_D3", gen_g2_conS_E_D3(), parse_condition_set("E,D3")});
    out.push_back({"nonros_C_D3", gen_nonros_C_D3(), parse_condition_set("C,D3,Ros")});
    // inclusion witnesses: the subset's rules exercised under the superset
    {
        ProofBuilder b;
        const int i = b.taut(Formula::iff(p, Formula::neg(Formula::neg(p))));
        const int r = b.re(i);
        const int d3 = b.ax({TagKind::D3, 1, 2}, {q});
        const FormulaPtr goal = Formula::conj(b.formula_at(r), b.formula_at(d3));
        b.close(goal, {r, d3});
        out.push_back({"incl_E_D3_probe", b.finish(goal), parse_condition_set("E,C,D3")});
    }
    {
        ProofBuilder b;
        const int c = b.ax({TagKind::C}, {p, q});
        const int d3 = b.ax({TagKind::D3, 1, 2}, {p});
        const FormulaPtr goal = Formula::conj(b.formula_at(c), b.formula_at(d3));
        b.close(goal, {c, d3});
        out.push_back({"incl_C_D3_probe", b.finish(goal), parse_condition_set("E,C,D3")});
    }
    // D2 (= K) subsumes C and E
    out.push_back({"k_gives_c", subsumes(parse_condition_set("K"), {TagKind::C}, {p, q}, none),
                   parse_condition_set("K,D3")});
    out.push_back({"g2_conL_under_K_D3", rewrite_with_k(gen_g2_conL_E_C_D3()),
                   parse_condition_set("K,D3")});
    // S1C subsumes S1Cm; replay of the S1Cm refutation under S1C
    out.push_back({"s1c_gives_s1cm", subsumes(parse_condition_set("S1C"), {TagKind::S1Cm},
                                              {Formula::box(p)}, none),
                   parse_condition_set("S1C")});
    out.push_back({"g2_conS_under_S1C", rewrite_s1cm_with_s1c(gen_g2_conS_S1Cm()),
                   parse_condition_set("S1C")});
    return out;
}

}  // namespace

EdgeReport figure1_report() {
    EdgeReport rep;
    for (ProvedEdge& pe : mechanized_proofs()) {
        rep.proofs.emplace_back(pe.name, std::move(pe.proof));
        rep.proof_conditions.emplace_back(pe.name, pe.cs);
    }

    auto mech = [&](std::string from, std::string to, std::vector<std::string> names,
                    std::string note) {
        rep.edges.push_back({std::move(from), std::move(to), EdgeStatus::Mechanized, std::move(note),
                             std::move(names)});
    };
    auto cited = [&](std::string from, std::string to, std::string note) {
        rep.edges.push_back({std::move(from), std::move(to), EdgeStatus::Cited, std::move(note), {}});
    };

    // consistency chain
    cited("noConG", "noConL", "ConG has no propositional rendering");
    mech("noConL", "nonRos", {"conL_from_ros"}, "Ros yields ~[]bot");
    mech("nonRos", "noConS", {"ros_from_conS"}, "a consistency instance plus D1 yields the Ros conclusion");
    cited("noConS", "noConH", "ConH has no propositional rendering");

    // condition sets
    mech("{E,C,D3}", "noConL", {"g2_conL_E_C_D3"}, "refutation of ~[]bot");
    mech("{E,C,D3}", "{E,D3}", {"incl_E_D3_probe"}, "inclusion");
    mech("{E,D3}", "noConS", {"g2_conS_E_D3"}, "refutation of the consistency instance");
    mech("{D2,D3}", "{E,C,D3}", {"k_gives_c", "g2_conL_under_K_D3"},
         "K derives the C instances and simulates E");
    cited("{MU}", "{EU,CBe}", "uniform conditions, first-order only");
    cited("{EU,CBe}", "{E,D3}", "uniform-to-local restriction, first-order only");
    cited("{EU,CBe,C}", "{D2,D3}", "uniform corollary, first-order only");
    cited("{EU,CBe,C}", "{EU,CBe}", "inclusion of uniform sets");
    cited("{EU,CBe}", "{S1C}", "provable Sigma1-completeness, first-order only");
    mech("{S1C}", "noConS", {"s1c_gives_s1cm", "g2_conS_under_S1C"},
         "S1C derives the tau-guarded instances; replay under S1C");
    cited("{D1U,D2U}", "{EU,CBe,C}", "uniform conditions, first-order only");
    cited("{D1U,D2U}", "{MU}", "uniform conditions, first-order only");
    mech("{C,D3}", "nonRos", {"nonros_C_D3"}, "Ros refuted alongside C and D3");
    mech("{E,C,D3}", "{C,D3}", {"incl_C_D3_probe"}, "inclusion");
    cited("{MU}", "{CB,D0CU}", "uniform conditions, first-order only");
    cited("{CB,D0CU}", "noConH", "ConH has no propositional rendering");
    cited("{D2G,PCG}", "noConG", "global conditions, first-order only");
    cited("{D2G,PCG}", "{D1U,D2U}", "global-to-uniform, first-order only");

    for (const Edge& e : rep.edges) {
        switch (e.status) {
            case EdgeStatus::Mechanized: ++rep.mechanized; break;
            case EdgeStatus::Countermodel: ++rep.countermodel; break;
            case EdgeStatus::Cited: ++rep.cited; break;
        }
    }
    return rep;
}

}  // namespace g2ws
