#include "g2ws/proof.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

namespace g2ws {

const FormulaPtr* Proof::hypothesis(const std::string& id) const {
    for (const auto& [n, f] : hypotheses)
        if (n == id) return &f;
    return nullptr;
}

const ProofLine* Proof::line(int index) const {
    for (const ProofLine& l : lines)
        if (l.index == index) return &l;
    return nullptr;
}

std::string print_justification(const Justification& j) {
    struct V {
        std::string operator()(const just::Taut&) const { return "taut"; }
        std::string operator()(const just::Mp& x) const {
            return "mp " + std::to_string(x.from) + " " + std::to_string(x.implication);
        }
        std::string operator()(const just::Nec& x) const { return "nec " + std::to_string(x.from); }
        std::string operator()(const just::Re& x) const { return "re " + std::to_string(x.from); }
        std::string operator()(const just::Rm& x) const { return "rm " + std::to_string(x.from); }
        std::string operator()(const just::Ros& x) const { return "ros " + std::to_string(x.from); }
        std::string operator()(const just::Ax& x) const {
            std::string out = "ax " + x.tag.to_string();
            for (std::size_t i = 0; i < x.args.size(); ++i)
                out += (i == 0 ? " " : " ;; ") + print_formula(x.args[i]);
            return out;
        }
        std::string operator()(const just::Fix& x) const { return "fix " + x.constant; }
        std::string operator()(const just::Hyp& x) const { return "hyp " + x.id; }
    };
    return std::visit(V{}, j);
}

std::string CheckReport::summary() const {
    if (accepted) return "accepted (" + std::to_string(line_count) + " lines)";
    std::string kind;
    switch (fail) {
        case FailKind::RuleDisabled: kind = "RuleDisabled"; break;
        case FailKind::Malformed: kind = "Malformed"; break;
        case FailKind::BadReference: kind = "BadReference"; break;
        case FailKind::GoalMismatch: kind = "GoalMismatch"; break;
        case FailKind::None: kind = "?"; break;
    }
    std::string where = fail_line > 0 ? " at line " + std::to_string(fail_line) : "";
    return "rejected: " + kind + where + ": " + reason;
}

namespace {

struct LineFail {
    FailKind kind;
    std::string reason;
};

const char* just_name(const Justification& j) {
    struct V {
        const char* operator()(const just::Taut&) const { return "taut"; }
        const char* operator()(const just::Mp&) const { return "mp"; }
        const char* operator()(const just::Nec&) const { return "nec"; }
        const char* operator()(const just::Re&) const { return "re"; }
        const char* operator()(const just::Rm&) const { return "rm"; }
        const char* operator()(const just::Ros&) const { return "ros"; }
        const char* operator()(const just::Ax&) const { return "ax"; }
        const char* operator()(const just::Fix&) const { return "fix"; }
        const char* operator()(const just::Hyp&) const { return "hyp"; }
    };
    return std::visit(V{}, j);
}

bool tag_enabled(const ConditionSet& cs, const ConditionTag& t) { return cs.has(t); }

}  // namespace

CheckReport check_proof(const Proof& p, const ConditionSet& cs) {
    CheckReport rep;
    rep.line_count = static_cast<int>(p.lines.size());

    std::map<int, FormulaPtr> seen;
    auto fail = [&](const ProofLine& l, FailKind k, const std::string& why) {
        rep.accepted = false;
        rep.fail = k;
        rep.fail_line = l.index;
        rep.reason = why;
        return rep;
    };

    int prev = 0;
    bool first = true;
    for (const ProofLine& l : p.lines) {
        if (!first && l.index <= prev)
            return fail(l, FailKind::Malformed, "line indices must be strictly increasing");
        first = false;
        prev = l.index;
        ++rep.rules_used[just_name(l.just)];

        for (const std::string& c : constants_of(l.formula))
            if (!p.env.is_declared(c))
                return fail(l, FailKind::Malformed, "unresolved constant '#" + c + "'");

        auto ref = [&](int i) -> const FormulaPtr* {
            auto it = seen.find(i);
            return it == seen.end() ? nullptr : &it->second;
        };

        LineFail bad{FailKind::None, ""};
        struct V {
            const Proof& p;
            const ConditionSet& cs;
            const ProofLine& l;
            const std::function<const FormulaPtr*(int)> ref;
            LineFail& bad;

            void reject(FailKind k, std::string why) const { bad = {k, std::move(why)}; }

            void operator()(const just::Taut&) const {
                if (!taut_check(l.formula)) reject(FailKind::Malformed, "not a tautology");
            }
            void operator()(const just::Mp& x) const {
                const FormulaPtr* a = ref(x.from);
                const FormulaPtr* i = ref(x.implication);
                if (!a || !i) {
                    reject(FailKind::BadReference, "mp references a missing earlier line");
                    return;
                }
                if ((*i)->conn != Conn::Imp || !equal((*i)->lhs, *a) || !equal((*i)->rhs, l.formula))
                    reject(FailKind::Malformed, "mp lines do not match");
            }
            void operator()(const just::Nec& x) const {
                const FormulaPtr* a = ref(x.from);
                if (!a) {
                    reject(FailKind::BadReference, "nec references a missing earlier line");
                    return;
                }
                if (l.formula->conn != Conn::Box || !equal(l.formula->lhs, *a))
                    reject(FailKind::Malformed, "nec must box the referenced line");
            }
            void operator()(const just::Re& x) const {
                if (!cs.e) {
                    reject(FailKind::RuleDisabled, "rule E is not enabled");
                    return;
                }
                const FormulaPtr* a = ref(x.from);
                if (!a) {
                    reject(FailKind::BadReference, "re references a missing earlier line");
                    return;
                }
                if ((*a)->conn != Conn::Iff) {
                    reject(FailKind::Malformed, "re needs a biconditional line");
                    return;
                }
                const FormulaPtr want = Formula::iff(Formula::box((*a)->lhs), Formula::box((*a)->rhs));
                if (!equal(l.formula, want)) reject(FailKind::Malformed, "re conclusion mismatch");
            }
            void operator()(const just::Rm& x) const {
                if (!cs.m) {
                    reject(FailKind::RuleDisabled, "rule M is not enabled");
                    return;
                }
                const FormulaPtr* a = ref(x.from);
                if (!a) {
                    reject(FailKind::BadReference, "rm references a missing earlier line");
                    return;
                }
                if ((*a)->conn != Conn::Imp) {
                    reject(FailKind::Malformed, "rm needs an implication line");
                    return;
                }
                const FormulaPtr want = Formula::imp(Formula::box((*a)->lhs), Formula::box((*a)->rhs));
                if (!equal(l.formula, want)) reject(FailKind::Malformed, "rm conclusion mismatch");
            }
            void operator()(const just::Ros& x) const {
                if (!cs.ros) {
                    reject(FailKind::RuleDisabled, "rule Ros is not enabled");
                    return;
                }
                const FormulaPtr* a = ref(x.from);
                if (!a) {
                    reject(FailKind::BadReference, "ros references a missing earlier line");
                    return;
                }
                if ((*a)->conn != Conn::Not) {
                    reject(FailKind::Malformed, "ros needs a negated line");
                    return;
                }
                const FormulaPtr want = Formula::neg(Formula::box((*a)->lhs));
                if (!equal(l.formula, want)) reject(FailKind::Malformed, "ros conclusion mismatch");
            }
            void operator()(const just::Ax& x) const {
                if (!tag_enabled(cs, x.tag)) {
                    reject(FailKind::RuleDisabled, "axiom " + x.tag.to_string() + " is not enabled");
                    return;
                }
                FormulaPtr want;
                try {
                    want = axiom_instance(x.tag, x.args, p.env);
                } catch (const std::exception& e) {
                    reject(FailKind::Malformed, e.what());
                    return;
                }
                if (!equal(l.formula, want)) reject(FailKind::Malformed, "axiom instance mismatch");
            }
            void operator()(const just::Fix& x) const {
                const FormulaPtr* def = p.env.lookup(x.constant);
                if (!def) {
                    reject(FailKind::Malformed, "fix references undefined constant '" + x.constant + "'");
                    return;
                }
                const FormulaPtr want = Formula::iff(Formula::constant(x.constant), *def);
                if (!equal(l.formula, want)) reject(FailKind::Malformed, "fix axiom mismatch");
            }
            void operator()(const just::Hyp& x) const {
                const FormulaPtr* h = p.hypothesis(x.id);
                if (!h) {
                    reject(FailKind::Malformed, "unknown hypothesis '" + x.id + "'");
                    return;
                }
                if (!equal(l.formula, *h)) reject(FailKind::Malformed, "hypothesis formula mismatch");
            }
        };
        std::visit(V{p, cs, l, ref, bad}, l.just);
        if (bad.kind != FailKind::None) return fail(l, bad.kind, bad.reason);
        seen.emplace(l.index, l.formula);
    }

    if (!p.goal || p.lines.empty() || !equal(p.lines.back().formula, p.goal)) {
        rep.accepted = false;
        rep.fail = FailKind::GoalMismatch;
        rep.fail_line = p.lines.empty() ? 0 : p.lines.back().index;
        rep.reason = "last line does not match the declared goal";
        return rep;
    }
    rep.accepted = true;
    return rep;
}

int prop_close(Proof& p, const FormulaPtr& goal, const std::vector<int>& from) {
    std::vector<FormulaPtr> premises;
    premises.reserve(from.size());
    for (int i : from) {
        const ProofLine* l = p.line(i);
        if (!l) throw ProofError("prop_close references missing line " + std::to_string(i));
        premises.push_back(l->formula);
    }
    if (!prop_consequence(premises, goal))
        throw ProofError("not a propositional consequence: " + print_formula(goal));

    int next = p.lines.empty() ? 1 : p.lines.back().index + 1;
    FormulaPtr chain = goal;
    for (auto it = premises.rbegin(); it != premises.rend(); ++it) chain = Formula::imp(*it, chain);
    p.lines.push_back({next, chain, just::Taut{}});
    int chain_line = next++;
    for (std::size_t i = 0; i < from.size(); ++i) {
        chain = p.line(chain_line)->formula->rhs;
        p.lines.push_back({next, chain, just::Mp{from[i], chain_line}});
        chain_line = next++;
    }
    return chain_line;
}

// ---------------------------------------------------------------- builder

int ProofBuilder::append(FormulaPtr f, Justification j) {
    const int idx = p_.lines.empty() ? 1 : p_.lines.back().index + 1;
    p_.lines.push_back({idx, std::move(f), std::move(j)});
    return idx;
}

void ProofBuilder::hypothesis(const std::string& id, FormulaPtr f) {
    if (p_.hypothesis(id)) throw ProofError("duplicate hypothesis '" + id + "'");
    p_.hypotheses.emplace_back(id, std::move(f));
}

const FormulaPtr& ProofBuilder::formula_at(int index) const {
    const ProofLine* l = p_.line(index);
    if (!l) throw ProofError("no line " + std::to_string(index));
    return l->formula;
}

int ProofBuilder::taut(FormulaPtr f) {
    if (!taut_check(f)) throw ProofError("not a tautology: " + print_formula(f));
    return append(std::move(f), just::Taut{});
}

int ProofBuilder::mp(int from, int implication) {
    const FormulaPtr& i = formula_at(implication);
    if (i->conn != Conn::Imp || !equal(i->lhs, formula_at(from)))
        throw ProofError("mp shape mismatch");
    return append(i->rhs, just::Mp{from, implication});
}

int ProofBuilder::nec(int from) {
    return append(Formula::box(formula_at(from)), just::Nec{from});
}

int ProofBuilder::re(int from) {
    const FormulaPtr& a = formula_at(from);
    if (a->conn != Conn::Iff) throw ProofError("re needs a biconditional");
    return append(Formula::iff(Formula::box(a->lhs), Formula::box(a->rhs)), just::Re{from});
}

int ProofBuilder::rm(int from) {
    const FormulaPtr& a = formula_at(from);
    if (a->conn != Conn::Imp) throw ProofError("rm needs an implication");
    return append(Formula::imp(Formula::box(a->lhs), Formula::box(a->rhs)), just::Rm{from});
}

int ProofBuilder::ros(int from) {
    const FormulaPtr& a = formula_at(from);
    if (a->conn != Conn::Not) throw ProofError("ros needs a negation");
    return append(Formula::neg(Formula::box(a->lhs)), just::Ros{from});
}

int ProofBuilder::ax(const ConditionTag& tag, std::vector<FormulaPtr> args) {
    FormulaPtr f = axiom_instance(tag, args, p_.env);
    return append(std::move(f), just::Ax{tag, std::move(args)});
}

int ProofBuilder::hyp(const std::string& id) {
    const FormulaPtr* h = p_.hypothesis(id);
    if (!h) throw ProofError("unknown hypothesis '" + id + "'");
    return append(*h, just::Hyp{id});
}

int ProofBuilder::fix(const std::string& constant) {
    const FormulaPtr* def = p_.env.lookup(constant);
    if (!def) throw ProofError("fix on undefined constant '" + constant + "'");
    return append(Formula::iff(Formula::constant(constant), *def), just::Fix{constant});
}

int ProofBuilder::close(const FormulaPtr& goal, const std::vector<int>& from) {
    return prop_close(p_, goal, from);
}

Proof ProofBuilder::finish(FormulaPtr goal) {
    p_.goal = std::move(goal);
    return std::move(p_);
}

// ---------------------------------------------------------------- files

namespace {

std::string strip(const std::string& s) {
    std::size_t b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    std::size_t e = s.find_last_not_of(" \t\r");
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

std::vector<std::string> split_ws(const std::string& s) {
    std::vector<std::string> out;
    std::istringstream in(s);
    std::string w;
    while (in >> w) out.push_back(w);
    return out;
}

Justification parse_just(const std::string& text) {
    const std::string t = strip(text);
    if (t == "taut") return just::Taut{};
    const auto words = split_ws(t);
    if (words.empty()) throw ProofError("empty justification");
    auto num = [&](std::size_t i) {
        if (i >= words.size()) throw ProofError("justification '" + words[0] + "' needs a line number");
        return std::stoi(words[i]);
    };
    if (words[0] == "mp") {
        if (words.size() != 3) throw ProofError("mp takes two line numbers");
        return just::Mp{num(1), num(2)};
    }
    if (words[0] == "nec") return just::Nec{num(1)};
    if (words[0] == "re") return just::Re{num(1)};
    if (words[0] == "rm") return just::Rm{num(1)};
    if (words[0] == "ros") return just::Ros{num(1)};
    if (words[0] == "fix") {
        if (words.size() != 2) throw ProofError("fix takes a constant name");
        return just::Fix{words[1]};
    }
    if (words[0] == "hyp") {
        if (words.size() != 2) throw ProofError("hyp takes a hypothesis id");
        return just::Hyp{words[1]};
    }
    if (words[0] == "ax") {
        if (words.size() < 2) throw ProofError("ax takes a tag");
        ConditionTag tag = ConditionTag::parse(words[1]);
        std::vector<FormulaPtr> args;
        const std::size_t tag_end = t.find(words[1]) + words[1].size();
        std::string rest = strip(t.substr(tag_end));
        if (!rest.empty()) {
            std::size_t pos = 0;
            while (true) {
                const std::size_t sep = rest.find(";;", pos);
                const std::string piece =
                    strip(sep == std::string::npos ? rest.substr(pos) : rest.substr(pos, sep - pos));
                if (piece.empty()) throw ProofError("empty ax argument");
                args.push_back(parse_formula(piece));
                if (sep == std::string::npos) break;
                pos = sep + 2;
            }
        }
        return just::Ax{tag, std::move(args)};
    }
    throw ProofError("unknown justification '" + words[0] + "'");
}

}  // namespace

Proof parse_proof(const std::string& text) {
    Proof p;
    bool saw_goal = false;
    std::istringstream in(text);
    std::string raw;
    int lineno = 0;
    while (std::getline(in, raw)) {
        ++lineno;
        std::string line = strip(drop_comment(raw));
        if (line.empty()) continue;
        try {
            if (saw_goal) throw ProofError("content after the goal line");
            if (line.rfind("fix ", 0) == 0) {
                const std::size_t eq = line.find(":=");
                if (eq == std::string::npos) throw ProofError("fix declaration needs ':='");
                const std::string name = strip(line.substr(4, eq - 4));
                p.env.define(name, parse_formula(strip(line.substr(eq + 2))));
                continue;
            }
            if (line.rfind("hyp ", 0) == 0) {
                const std::size_t colon = line.find(':');
                if (colon == std::string::npos) throw ProofError("hyp declaration needs ':'");
                const std::string id = strip(line.substr(4, colon - 4));
                if (id.empty()) throw ProofError("hyp needs an id");
                if (p.hypothesis(id)) throw ProofError("duplicate hypothesis '" + id + "'");
                p.hypotheses.emplace_back(id, parse_formula(strip(line.substr(colon + 1))));
                continue;
            }
            if (line.rfind("goal", 0) == 0) {
                const std::size_t colon = line.find(':');
                if (colon == std::string::npos) throw ProofError("goal line needs ':'");
                p.goal = parse_formula(strip(line.substr(colon + 1)));
                saw_goal = true;
                continue;
            }
            // numbered line: <n> : <formula> ; <just>
            const std::size_t colon = line.find(':');
            if (colon == std::string::npos) throw ProofError("expected '<n> : <formula> ; <just>'");
            const int idx = std::stoi(strip(line.substr(0, colon)));
            const std::size_t semi = line.rfind(';');
            // ';;' inside ax arguments: find the last ';' not preceded/followed by ';'
            std::size_t cut = std::string::npos;
            for (std::size_t i = line.size(); i-- > colon + 1;) {
                if (line[i] != ';') continue;
                const bool left = i > 0 && line[i - 1] == ';';
                const bool right = i + 1 < line.size() && line[i + 1] == ';';
                if (!left && !right) {
                    cut = i;
                    break;
                }
            }
            (void)semi;
            if (cut == std::string::npos) throw ProofError("numbered line needs '; <just>'");
            FormulaPtr f = parse_formula(strip(line.substr(colon + 1, cut - colon - 1)));
            Justification j = parse_just(line.substr(cut + 1));
            p.lines.push_back({idx, std::move(f), std::move(j)});
        } catch (const std::exception& e) {
            throw ProofError("line " + std::to_string(lineno) + ": " + e.what());
        }
    }
    if (!saw_goal) throw ProofError("proof has no goal line");
    return p;
}

std::string print_proof(const Proof& p) {
    std::ostringstream out;
    for (const auto& [name, def] : p.env.definitions())
        out << "fix " << name << " := " << print_formula(def) << "\n";
    for (const auto& [id, f] : p.hypotheses) out << "hyp " << id << " : " << print_formula(f) << "\n";
    for (const ProofLine& l : p.lines)
        out << l.index << " : " << print_formula(l.formula) << " ; " << print_justification(l.just)
            << "\n";
    out << "goal : " << print_formula(p.goal) << "\n";
    return out.str();
}

std::optional<std::string> proof_condition_hint(const std::string& text) {
    std::istringstream in(text);
    std::string raw;
    while (std::getline(in, raw)) {
        const std::string line = strip(raw);
        const std::string prefix = "# conditions:";
        if (line.rfind(prefix, 0) == 0) return strip(line.substr(prefix.size()));
    }
    return std::nullopt;
}

}  // namespace g2ws
