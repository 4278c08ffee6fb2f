// pybind11 surface: the main operations at the text level, so scripts can
// drive the kernel, the model search, the saturation simulator and the
// arithmetic pipeline without rebuilding C++.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "g2ws/arith.hpp"
#include "g2ws/library.hpp"
#include "g2ws/neighborhood.hpp"
#include "g2ws/proof.hpp"
#include "g2ws/saturation.hpp"

namespace py = pybind11;
using namespace g2ws;

namespace {

FixedPointEnv env_from(const std::map<std::string, std::string>& defs) {
    FixedPointEnv env;
    for (const auto& [name, text] : defs) env.define(name, parse_formula(text));
    return env;
}

py::dict report_to_dict(const CheckReport& rep) {
    py::dict d;
    d["accepted"] = rep.accepted;
    d["summary"] = rep.summary();
    d["line_count"] = rep.line_count;
    d["fail_line"] = rep.fail_line;
    d["rules_used"] = rep.rules_used;
    return d;
}

Proof derive_by_name(const std::string& name, const std::string& target, int n, int k) {
    const FormulaPtr t = parse_formula(target);
    if (name == "ros_from_conS") return gen_ros_from_conS(t);
    if (name == "conS_from_ros_C") return gen_conS_from_ros_C(t);
    if (name == "conL_from_ros") return gen_conL_from_ros();
    if (name == "ros_from_conL_E") return gen_ros_from_conL_E(t);
    if (name == "g2_conS_E_D3") return gen_g2_conS_E_D3();
    if (name == "g2_conS_S1Cm") return gen_g2_conS_S1Cm();
    if (name == "g2_conL_E_C_D3") return gen_g2_conL_E_C_D3();
    if (name == "nonros_C_D3") return gen_nonros_C_D3();
    if (name == "lob_variant") return gen_lob_variant(t);
    if (name == "weak_lob") return gen_weak_lob(n, k, t);
    throw std::invalid_argument("unknown derivation '" + name + "'");
}

}  // namespace

PYBIND11_MODULE(_g2ws, m) {
    m.doc() = "derivability-condition workbench";

    // modal core
    m.def("normalize_formula",
          [](const std::string& text) { return print_formula(parse_formula(text)); },
          py::arg("text"), "parse and reprint with minimal parentheses");
    m.def("taut_check",
          [](const std::string& text) { return taut_check(parse_formula(text)); },
          py::arg("text"));
    m.def("is_modalized",
          [](const std::string& constant, const std::string& text) {
              return is_modalized(constant, parse_formula(text));
          },
          py::arg("constant"), py::arg("text"));
    m.def("is_sigma_box",
          [](const std::string& text, const std::map<std::string, std::string>& env) {
              return is_sigma_box(parse_formula(text), env_from(env));
          },
          py::arg("text"), py::arg("env") = std::map<std::string, std::string>{});

    // conditions
    m.def("normalize_conditions",
          [](const std::string& text) { return parse_condition_set(text).to_string(); },
          py::arg("text"));
    m.def("axiom_instance",
          [](const std::string& tag, const std::vector<std::string>& args,
             const std::map<std::string, std::string>& env) {
              std::vector<FormulaPtr> parsed;
              for (const std::string& a : args) parsed.push_back(parse_formula(a));
              return print_formula(axiom_instance(ConditionTag::parse(tag), parsed, env_from(env)));
          },
          py::arg("tag"), py::arg("args"), py::arg("env") = std::map<std::string, std::string>{});
    m.def("subsumes",
          [](const std::string& strong, const std::string& weak,
             const std::vector<std::string>& probe) {
              std::vector<FormulaPtr> parsed;
              for (const std::string& a : probe) parsed.push_back(parse_formula(a));
              return print_proof(
                  subsumes(parse_condition_set(strong), ConditionTag::parse(weak), parsed, {}));
          },
          py::arg("strong"), py::arg("weak"), py::arg("probe"));

    // proof kernel
    m.def("check_proof",
          [](const std::string& proof_text, const std::string& conditions) {
              return report_to_dict(
                  check_proof(parse_proof(proof_text), parse_condition_set(conditions)));
          },
          py::arg("proof"), py::arg("conditions") = std::string{});
    m.def("derive",
          [](const std::string& name, const std::string& target, int n, int k) {
              return print_proof(derive_by_name(name, target, n, k));
          },
          py::arg("name"), py::arg("target") = std::string("p"), py::arg("n") = 1,
          py::arg("k") = 1);
    m.def("corpus_names", [] {
        std::vector<std::string> names;
        for (const TheoremEntry& e : corpus()) names.push_back(e.name);
        return names;
    });
    m.def("corpus_check", [] {
        py::dict out;
        for (const TheoremEntry& e : corpus())
            out[py::str(e.name)] = check_proof(e.generate(), e.conditions).accepted;
        return out;
    });

    // neighborhood semantics
    m.def("model_eval",
          [](const std::string& model, const std::string& world, const std::string& formula) {
              return eval(parse_model(model), world, parse_formula(formula));
          },
          py::arg("model"), py::arg("world"), py::arg("formula"));
    m.def("model_props", [](const std::string& model) {
        const ClosureReport r = closure_report(parse_model(model));
        py::dict d;
        d["supplemented"] = r.supplemented;
        d["intersection_closed"] = r.intersection_closed;
        d["contains_unit"] = r.contains_unit;
        d["empty_free"] = r.empty_free;
        d["d_consistent"] = r.d_consistent;
        return d;
    });
    m.def("countermodel_search",
          [](const std::string& require, const std::vector<std::string>& valid,
             const std::string& target, int max_worlds,
             const std::vector<std::string>& atoms) -> py::object {
              SearchSpec spec;
              spec.require = RequiredClosure::parse(require);
              for (const std::string& v : valid) spec.valid.push_back(parse_formula(v));
              spec.target = parse_formula(target);
              spec.max_worlds = max_worlds;
              spec.atoms = atoms;
              const auto found = countermodel_search(spec);
              if (!found) return py::none();
              return py::str(print_model(*found));
          },
          py::arg("require"), py::arg("valid"), py::arg("target"), py::arg("max_worlds"),
          py::arg("atoms"));

    // saturation
    m.def("saturation_sizes",
          [](const std::string& theory, std::uint64_t m_max) {
              const ToyTheory th = parse_toy_theory(theory);
              std::vector<std::tuple<std::uint64_t, std::size_t, std::size_t>> rows;
              for (std::uint64_t mm = 0; mm <= m_max; ++mm) {
                  const SaturationState st = saturate(mm, th);
                  for (std::size_t kk = 0; kk < st.strata.size(); ++kk)
                      rows.emplace_back(mm, kk, st.strata[kk].size());
              }
              return rows;
          },
          py::arg("theory"), py::arg("m_max"));
    m.def("pr_dagger",
          [](const std::string& formula, const std::string& theory, std::uint64_t bound) {
              return pr_dagger(parse_formula(formula), parse_toy_theory(theory), bound);
          },
          py::arg("formula"), py::arg("theory"), py::arg("bound"));
    m.def("soundness_audit",
          [](const std::string& theory, std::uint64_t bound) {
              const AuditReport rep = soundness_audit(parse_toy_theory(theory), bound);
              py::dict d;
              d["checked"] = rep.checked;
              d["violations"] = rep.violations;
              return d;
          },
          py::arg("theory"), py::arg("bound"));

    // arithmetic normal form
    m.def("arith_normalize",
          [](const std::string& text) { return to_existential_dnf(parse_qf(text)).to_string(); },
          py::arg("text"));
    m.def("arith_equiv",
          [](const std::string& text, std::uint64_t bound) {
              const QFPtr f = parse_qf(text);
              return bounded_equiv(f, to_existential_dnf(f), bound);
          },
          py::arg("text"), py::arg("bound") = 4);

    // implication graph
    m.def("figure1_counts", [] {
        const EdgeReport rep = figure1_report();
        return py::make_tuple(rep.mechanized, rep.countermodel, rep.cited);
    });
    m.def("figure1_edges", [] {
        const EdgeReport rep = figure1_report();
        std::vector<std::tuple<std::string, std::string, std::string>> rows;
        for (const Edge& e : rep.edges) {
            const char* status = e.status == EdgeStatus::Mechanized ? "mechanized"
                                 : e.status == EdgeStatus::Countermodel ? "countermodel"
                                                                        : "cited";
            rows.emplace_back(e.from, e.to, status);
        }
        return rows;
    });

    py::register_exception<ParseError>(m, "G2wsParseError");
}
