#include "g2ws/conditions.hpp"

#include <algorithm>
#include <sstream>

#include "g2ws/proof.hpp"

namespace g2ws {

FormulaPtr box_iter(FormulaPtr f, int times) {
    for (int i = 0; i < times; ++i) f = Formula::box(std::move(f));
    return f;
}

ConditionTag ConditionTag::parse(const std::string& text) {
    if (text == "E") return {TagKind::E};
    if (text == "M") return {TagKind::M};
    if (text == "C") return {TagKind::C};
    if (text == "K") return {TagKind::K};
    if (text == "Ros") return {TagKind::Ros};
    if (text == "S1C") return {TagKind::S1C};
    if (text == "S1Cm") return {TagKind::S1Cm};
    if (text == "D3") return {TagKind::D3, 1, 2};
    if (text.rfind("D3(", 0) == 0 && text.back() == ')') {
        const std::string inner = text.substr(3, text.size() - 4);
        const auto comma = inner.find(',');
        if (comma == std::string::npos) throw ConditionError("bad arity in '" + text + "'");
        int n = 0, m = 0;
        try {
            n = std::stoi(inner.substr(0, comma));
            m = std::stoi(inner.substr(comma + 1));
        } catch (const std::exception&) {
            throw ConditionError("bad arity in '" + text + "'");
        }
        if (n < 1 || m < 0)
            throw ConditionError("bad arity in '" + text + "': need n >= 1, m >= 0");
        return {TagKind::D3, n, m};
    }
    throw ConditionError("unknown tag '" + text + "'");
}

std::string ConditionTag::to_string() const {
    switch (kind) {
        case TagKind::E: return "E";
        case TagKind::M: return "M";
        case TagKind::C: return "C";
        case TagKind::K: return "K";
        case TagKind::Ros: return "Ros";
        case TagKind::S1C: return "S1C";
        case TagKind::S1Cm: return "S1Cm";
        case TagKind::D3:
            return "D3(" + std::to_string(n) + "," + std::to_string(m) + ")";
    }
    return "?";
}

bool ConditionSet::has(const ConditionTag& t) const {
    switch (t.kind) {
        case TagKind::E: return e;
        case TagKind::M: return m;
        case TagKind::C: return c;
        case TagKind::K: return k;
        case TagKind::Ros: return ros;
        case TagKind::S1C: return s1c;
        case TagKind::S1Cm: return s1cm;
        case TagKind::D3: return d3.count({t.n, t.m}) > 0;
    }
    return false;
}

ConditionSet ConditionSet::with(const ConditionTag& t) const {
    ConditionSet out = *this;
    switch (t.kind) {
        case TagKind::E: out.e = true; break;
        case TagKind::M: out.m = true; break;
        case TagKind::C: out.c = true; break;
        case TagKind::K: out.k = true; break;
        case TagKind::Ros: out.ros = true; break;
        case TagKind::S1C: out.s1c = true; break;
        case TagKind::S1Cm: out.s1cm = true; break;
        case TagKind::D3: out.d3.insert({t.n, t.m}); break;
    }
    return out;
}

ConditionSet ConditionSet::without(const ConditionTag& t) const {
    ConditionSet out = *this;
    switch (t.kind) {
        case TagKind::E: out.e = false; break;
        case TagKind::M: out.m = false; break;
        case TagKind::C: out.c = false; break;
        case TagKind::K: out.k = false; break;
        case TagKind::Ros: out.ros = false; break;
        case TagKind::S1C: out.s1c = false; break;
        case TagKind::S1Cm: out.s1cm = false; break;
        case TagKind::D3: out.d3.erase({t.n, t.m}); break;
    }
    return out;
}

bool ConditionSet::includes(const ConditionSet& o) const {
    if ((o.e && !e) || (o.m && !m) || (o.c && !c) || (o.k && !k) || (o.ros && !ros) ||
        (o.s1c && !s1c) || (o.s1cm && !s1cm))
        return false;
    return std::includes(d3.begin(), d3.end(), o.d3.begin(), o.d3.end());
}

std::vector<ConditionTag> ConditionSet::tags() const {
    std::vector<ConditionTag> out;
    if (c) out.push_back({TagKind::C});
    for (const auto& [n, m] : d3) out.push_back({TagKind::D3, n, m});
    if (e) out.push_back({TagKind::E});
    if (k) out.push_back({TagKind::K});
    if (m) out.push_back({TagKind::M});
    if (ros) out.push_back({TagKind::Ros});
    if (s1c) out.push_back({TagKind::S1C});
    if (s1cm) out.push_back({TagKind::S1Cm});
    return out;
}

std::string ConditionSet::to_string() const {
    std::string out;
    for (const ConditionTag& t : tags()) {
        if (!out.empty()) out += ',';
        out += t.to_string();
    }
    return out;
}

ConditionSet parse_condition_set(const std::string& text) {
    ConditionSet cs;
    std::size_t pos = 0;
    while (pos < text.size()) {
        std::size_t end = pos;
        int depth = 0;
        while (end < text.size() && (text[end] != ',' || depth > 0)) {
            if (text[end] == '(') ++depth;
            if (text[end] == ')') --depth;
            ++end;
        }
        std::string piece = text.substr(pos, end - pos);
        piece.erase(std::remove_if(piece.begin(), piece.end(),
                                   [](unsigned char ch) { return std::isspace(ch); }),
                    piece.end());
        if (!piece.empty()) cs = cs.with(ConditionTag::parse(piece));
        pos = end + (end < text.size() ? 1 : 0);
    }
    return cs;
}

FormulaPtr axiom_instance(const ConditionTag& tag, const std::vector<FormulaPtr>& args,
                          const FixedPointEnv& env) {
    auto need = [&](std::size_t n) {
        if (args.size() != n)
            throw ConditionError("schema " + tag.to_string() + " takes " + std::to_string(n) +
                                 " argument(s), got " + std::to_string(args.size()));
    };
    switch (tag.kind) {
        case TagKind::C:
            need(2);
            return Formula::imp(Formula::conj(Formula::box(args[0]), Formula::box(args[1])),
                                Formula::box(Formula::conj(args[0], args[1])));
        case TagKind::K:
            need(2);
            return Formula::imp(Formula::box(Formula::imp(args[0], args[1])),
                                Formula::imp(Formula::box(args[0]), Formula::box(args[1])));
        case TagKind::D3:
            need(1);
            return Formula::imp(box_iter(args[0], tag.n), box_iter(args[0], tag.m));
        case TagKind::S1C:
            need(1);
            if (!is_sigma_box(args[0], env))
                throw ConditionError("S1C argument is not in the Sigma-box class: " +
                                     print_formula(args[0]));
            return Formula::imp(args[0], Formula::box(args[0]));
        case TagKind::S1Cm:
            need(1);
            if (!is_sigma_box(args[0], env))
                throw ConditionError("S1Cm argument is not in the Sigma-box class: " +
                                     print_formula(args[0]));
            return Formula::imp(
                args[0],
                Formula::box(Formula::imp(Formula::constant(FixedPointEnv::kTau), args[0])));
        default:
            throw ConditionError(tag.to_string() + " is a rule, not an axiom schema");
    }
}

namespace {

Proof k_gives_c(const std::vector<FormulaPtr>& probe, const FixedPointEnv& env) {
    if (probe.size() != 2) throw ConditionError("K => C takes two probe formulas");
    const FormulaPtr &x = probe[0], &y = probe[1];
    ProofBuilder b(env);
    const FormulaPtr xy = Formula::conj(x, y);
    const int t = b.taut(Formula::imp(x, Formula::imp(y, xy)));
    const int n = b.nec(t);
    const int k1 = b.ax({TagKind::K}, {x, Formula::imp(y, xy)});
    const int step = b.mp(n, k1);  // []x -> [](y -> x & y)
    const int k2 = b.ax({TagKind::K}, {y, xy});
    const FormulaPtr goal = axiom_instance({TagKind::C}, probe, env);
    b.close(goal, {step, k2});
    return b.finish(goal);
}

Proof k_gives_m(const std::vector<FormulaPtr>& probe, const FixedPointEnv& env) {
    if (probe.size() != 2) throw ConditionError("K => M takes two probe formulas");
    const FormulaPtr &a = probe[0], &bf = probe[1];
    ProofBuilder b(env);
    b.hypothesis("side", Formula::imp(a, bf));
    const int h = b.hyp("side");
    const int n = b.nec(h);
    const int k = b.ax({TagKind::K}, {a, bf});
    const int goal = b.mp(n, k);
    return b.finish(b.formula_at(goal));
}

Proof m_gives_e(const std::vector<FormulaPtr>& probe, const FixedPointEnv& env) {
    if (probe.size() != 2) throw ConditionError("M => E takes two probe formulas");
    const FormulaPtr &a = probe[0], &bf = probe[1];
    ProofBuilder b(env);
    b.hypothesis("side", Formula::iff(a, bf));
    const int h = b.hyp("side");
    const int fwd = b.close(Formula::imp(a, bf), {h});
    const int bfwd = b.rm(fwd);
    const int bwd = b.close(Formula::imp(bf, a), {h});
    const int bbwd = b.rm(bwd);
    const FormulaPtr goal = Formula::iff(Formula::box(a), Formula::box(bf));
    b.close(goal, {bfwd, bbwd});
    return b.finish(goal);
}

Proof s1c_gives_d3(const std::vector<FormulaPtr>& probe, const FixedPointEnv& env) {
    if (probe.size() != 1) throw ConditionError("S1C => D3 takes one probe formula");
    ProofBuilder b(env);
    const int line = b.ax({TagKind::S1C}, {Formula::box(probe[0])});
    return b.finish(b.formula_at(line));
}

Proof s1c_gives_s1cm(const std::vector<FormulaPtr>& probe, const FixedPointEnv& env) {
    if (probe.size() != 1) throw ConditionError("S1C => S1Cm takes one probe formula");
    const FormulaPtr& s = probe[0];
    ProofBuilder b(env);
    const FormulaPtr guarded = Formula::imp(Formula::constant(FixedPointEnv::kTau), s);
    const int line = b.ax({TagKind::S1C}, {guarded});
    const FormulaPtr goal = axiom_instance({TagKind::S1Cm}, probe, env);
    b.close(goal, {line});
    return b.finish(goal);
}

}  // namespace

Proof subsumes(const ConditionSet& strong, const ConditionTag& weak,
               const std::vector<FormulaPtr>& probe, const FixedPointEnv& env) {
    if (strong.k && weak.kind == TagKind::C) return k_gives_c(probe, env);
    if (strong.k && weak.kind == TagKind::M) return k_gives_m(probe, env);
    if (strong.m && weak.kind == TagKind::E) return m_gives_e(probe, env);
    if (strong.s1c && weak.kind == TagKind::D3 && weak.n == 1 && weak.m == 2)
        return s1c_gives_d3(probe, env);
    if (strong.s1c && weak.kind == TagKind::S1Cm) return s1c_gives_s1cm(probe, env);
    throw ConditionError("unknown implication " + strong.to_string() + " => " + weak.to_string());
}

}  // namespace g2ws
