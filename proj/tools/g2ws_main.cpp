// Command-line entry point. Verbs: check, derive, model, arith, saturate, graph.
// Exit status: 0 success/accepted, 1 semantic failure, 2 usage or parse error.

#include <fstream>
#include <future>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "g2ws/arith.hpp"
#include "g2ws/library.hpp"
#include "g2ws/neighborhood.hpp"
#include "g2ws/proof.hpp"
#include "g2ws/saturation.hpp"

namespace {

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open '" + path + "'");
    std::ostringstream out;
    out << in.rdbuf();
    return out.str();
}

void write_out(const std::string& path, const std::string& text) {
    if (path.empty() || path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write '" + path + "'");
    out << text;
}

int run_check(const std::string& path, std::string conditions) {
    const std::string text = slurp(path);
    if (conditions.empty())
        if (auto hint = g2ws::proof_condition_hint(text)) conditions = *hint;
    const g2ws::ConditionSet cs = g2ws::parse_condition_set(conditions);
    const g2ws::Proof p = g2ws::parse_proof(text);
    const g2ws::CheckReport rep = g2ws::check_proof(p, cs);
    std::cout << path << ": " << rep.summary() << " [conditions: "
              << (cs.to_string().empty() ? "D1 only" : cs.to_string()) << "]\n";
    return rep.accepted ? 0 : 1;
}

std::string proof_file_text(const std::string& name, const g2ws::ConditionSet& cs,
                            const g2ws::Proof& p) {
    std::ostringstream out;
    out << "# " << name << "\n";
    out << "# conditions: " << cs.to_string() << "\n";
    out << g2ws::print_proof(p);
    return out.str();
}

const char* status_name(g2ws::EdgeStatus s) {
    switch (s) {
        case g2ws::EdgeStatus::Mechanized: return "mechanized";
        case g2ws::EdgeStatus::Countermodel: return "countermodel";
        case g2ws::EdgeStatus::Cited: return "cited";
    }
    return "?";
}

std::string graph_tsv(const g2ws::EdgeReport& rep) {
    std::ostringstream out;
    out << "from\tto\tstatus\tnote\tproofs\n";
    for (const g2ws::Edge& e : rep.edges) {
        out << e.from << '\t' << e.to << '\t' << status_name(e.status) << '\t' << e.note << '\t';
        for (std::size_t i = 0; i < e.proof_names.size(); ++i)
            out << (i ? "," : "") << e.proof_names[i];
        out << "\n";
    }
    out << "# mechanized=" << rep.mechanized << " countermodel=" << rep.countermodel
        << " cited=" << rep.cited << " total=" << rep.edges.size() << "\n";
    return out.str();
}

std::string graph_dot(const g2ws::EdgeReport& rep) {
    std::ostringstream out;
    out << "digraph conditions {\n";
    out << "  rankdir=BT;\n";
    for (const g2ws::Edge& e : rep.edges) {
        out << "  \"" << e.from << "\" -> \"" << e.to << "\" [label=\"" << status_name(e.status)
            << "\"";
        if (e.status == g2ws::EdgeStatus::Cited) out << " style=dashed";
        out << "];\n";
    }
    out << "}\n";
    return out.str();
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"derivability-condition workbench"};
    app.require_subcommand(1);

    // ---- check
    auto* check = app.add_subcommand("check", "check a proof file");
    std::string check_file, check_conditions;
    check->add_option("file", check_file, "proof file")->required();
    check->add_option("--conditions", check_conditions,
                      "condition tags (default: the file's '# conditions:' hint)");

    // ---- derive
    auto* derive = app.add_subcommand("derive", "emit proofs from the derivation library");
    std::string derive_name, derive_target = "p", derive_out;
    int derive_n = 1, derive_k = 1;
    bool derive_all = false, derive_report = false;
    derive->add_option("name", derive_name, "entry name (see --all for the list)");
    derive->add_flag("--all", derive_all, "generate and check the whole corpus");
    derive->add_flag("--report", derive_report, "with --all: also emit the implication graph");
    derive->add_option("--n", derive_n, "weak_lob parameter n");
    derive->add_option("--k", derive_k, "weak_lob parameter k");
    derive->add_option("--target", derive_target, "target formula for parametric entries");
    derive->add_option("-o,--output", derive_out, "output file (default stdout)");

    // ---- model
    auto* model = app.add_subcommand("model", "neighborhood models");
    model->require_subcommand(1);
    auto* meval = model->add_subcommand("eval", "evaluate a formula at a world");
    std::string me_file, me_world, me_formula;
    meval->add_option("-m,--model", me_file)->required();
    meval->add_option("-w,--world", me_world)->required();
    meval->add_option("-f,--formula", me_formula)->required();
    auto* mprops = model->add_subcommand("props", "closure report");
    std::string mp_file;
    mprops->add_option("-m,--model", mp_file)->required();
    auto* msearch = model->add_subcommand("search", "exhaustive countermodel search");
    std::string ms_require, ms_valid, ms_target, ms_atoms = "p,q";
    int ms_max = 3;
    msearch->add_option("--require", ms_require, "closure flags, comma separated");
    msearch->add_option("--valid", ms_valid, "formulas that must stay globally valid");
    msearch->add_option("--target", ms_target, "formula that must fail somewhere")->required();
    msearch->add_option("--max-worlds", ms_max, "world bound (<= 4)");
    msearch->add_option("--atoms", ms_atoms, "atom names, comma separated");

    // ---- arith
    auto* arith = app.add_subcommand("arith", "quantifier-free arithmetic normal form");
    arith->require_subcommand(1);
    auto* anorm = arith->add_subcommand("normalize", "existential disjunctive normal form");
    std::string an_formula;
    anorm->add_option("-f,--formula", an_formula)->required();
    auto* aequiv = arith->add_subcommand("equiv", "bounded equivalence of formula and its form");
    std::string ae_formula;
    std::uint64_t ae_bound = 4;
    aequiv->add_option("-f,--formula", ae_formula)->required();
    aequiv->add_option("-B,--bound", ae_bound, "free-variable bound");

    // ---- saturate
    auto* saturate = app.add_subcommand("saturate", "stratified closure simulation");
    std::string sat_file;
    std::uint64_t sat_mmax = 30;
    bool sat_audit = false;
    saturate->add_option("-t,--theory", sat_file, "toy theory file")->required();
    saturate->add_option("--m-max", sat_mmax, "largest universe bound");
    saturate->add_flag("--audit", sat_audit, "verify against the cut-free closure");

    // ---- graph
    auto* graph = app.add_subcommand("graph", "implication graph report");
    bool graph_dot_flag = false, graph_tsv_flag = false;
    graph->add_flag("--dot", graph_dot_flag, "DOT output (default)");
    graph->add_flag("--tsv", graph_tsv_flag, "TSV output");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 2;
    }

    try {
        if (*check) return run_check(check_file, check_conditions);

        if (*derive) {
            if (derive_all) {
                bool all_ok = true;
                for (const g2ws::TheoremEntry& entry : g2ws::corpus()) {
                    const g2ws::Proof p = entry.generate();
                    const g2ws::CheckReport rep = g2ws::check_proof(p, entry.conditions);
                    all_ok = all_ok && rep.accepted;
                    std::cout << entry.name << ": " << rep.summary() << "\n";
                    if (!derive_out.empty()) {
                        const std::string path = derive_out + "/" + entry.name + ".prf";
                        write_out(path, proof_file_text(entry.name, entry.conditions, p));
                    }
                }
                if (derive_report) {
                    const g2ws::EdgeReport rep = g2ws::figure1_report();
                    std::cout << "\n" << graph_tsv(rep) << "\n" << graph_dot(rep);
                }
                return all_ok ? 0 : 1;
            }
            if (derive_name.empty()) {
                std::cerr << "derive needs an entry name or --all; known entries:\n";
                for (const g2ws::TheoremEntry& entry : g2ws::corpus())
                    std::cerr << "  " << entry.name << "  (" << entry.description << ")\n";
                return 2;
            }
            const g2ws::FormulaPtr target = g2ws::parse_formula(derive_target);
            g2ws::Proof p;
            g2ws::ConditionSet cs;
            bool found = true;
            if (derive_name == "weak_lob") {
                p = g2ws::gen_weak_lob(derive_n, derive_k, target);
                cs = g2ws::parse_condition_set("K,D3(" + std::to_string(derive_n) + "," +
                                               std::to_string(derive_n + derive_k) + ")");
            } else if (derive_name == "ros_from_conS") {
                p = g2ws::gen_ros_from_conS(target);
            } else if (derive_name == "conS_from_ros_C") {
                p = g2ws::gen_conS_from_ros_C(target);
                cs = g2ws::parse_condition_set("C,Ros");
            } else if (derive_name == "conL_from_ros") {
                p = g2ws::gen_conL_from_ros();
                cs = g2ws::parse_condition_set("Ros");
            } else if (derive_name == "ros_from_conL_E") {
                p = g2ws::gen_ros_from_conL_E(target);
                cs = g2ws::parse_condition_set("E");
            } else if (derive_name == "g2_conS_E_D3") {
                p = g2ws::gen_g2_conS_E_D3();
                cs = g2ws::parse_condition_set("E,D3");
            } else if (derive_name == "g2_conS_S1Cm") {
                p = g2ws::gen_g2_conS_S1Cm();
                cs = g2ws::parse_condition_set("S1Cm");
            } else if (derive_name == "g2_conL_E_C_D3") {
                p = g2ws::gen_g2_conL_E_C_D3();
                cs = g2ws::parse_condition_set("E,C,D3");
            } else if (derive_name == "nonros_C_D3") {
                p = g2ws::gen_nonros_C_D3();
                cs = g2ws::parse_condition_set("C,D3,Ros");
            } else if (derive_name == "lob_variant") {
                p = g2ws::gen_lob_variant(target);
                cs = g2ws::parse_condition_set("E,C,D3");
            } else {
                found = false;
            }
            if (!found) {
                std::cerr << "unknown entry '" << derive_name << "'\n";
                return 2;
            }
            write_out(derive_out, proof_file_text(derive_name, cs, p));
            return 0;
        }

        if (*model) {
            if (*meval) {
                const g2ws::NeighborhoodModel m = g2ws::parse_model(slurp(me_file));
                const bool v = g2ws::eval(m, me_world, g2ws::parse_formula(me_formula));
                std::cout << (v ? "true" : "false") << "\n";
                return v ? 0 : 1;
            }
            if (*mprops) {
                const g2ws::NeighborhoodModel m = g2ws::parse_model(slurp(mp_file));
                std::cout << g2ws::closure_report(m).to_string() << "\n";
                return 0;
            }
            if (*msearch) {
                g2ws::SearchSpec spec;
                spec.require = g2ws::RequiredClosure::parse(ms_require);
                spec.target = g2ws::parse_formula(ms_target);
                spec.max_worlds = ms_max;
                std::stringstream atoms(ms_atoms);
                std::string a;
                while (std::getline(atoms, a, ','))
                    if (!a.empty()) spec.atoms.push_back(a);
                if (!ms_valid.empty()) {
                    std::stringstream vf(ms_valid);
                    std::string piece;
                    while (std::getline(vf, piece, ','))
                        if (!piece.empty()) spec.valid.push_back(g2ws::parse_formula(piece));
                }
                const auto found = g2ws::countermodel_search(spec);
                if (!found) {
                    std::cout << "none within " << spec.max_worlds << " worlds\n";
                    return 1;
                }
                std::cout << g2ws::print_model(*found);
                return 0;
            }
        }

        if (*arith) {
            if (*anorm) {
                const g2ws::QFPtr f = g2ws::parse_qf(an_formula);
                const g2ws::ExistentialDNF g = g2ws::to_existential_dnf(f);
                std::cout << g.to_string() << "\n";
                return 0;
            }
            if (*aequiv) {
                const g2ws::QFPtr f = g2ws::parse_qf(ae_formula);
                const g2ws::ExistentialDNF g = g2ws::to_existential_dnf(f);
                const bool ok = g2ws::bounded_equiv(f, g, ae_bound);
                std::cout << (ok ? "equivalent" : "mismatch") << " within bound " << ae_bound
                          << "\n";
                return ok ? 0 : 1;
            }
        }

        if (*saturate) {
            const g2ws::ToyTheory th = g2ws::parse_toy_theory(slurp(sat_file));
            // every m is independent; leaf codes are fixed at construction
            std::vector<std::future<g2ws::SaturationState>> states;
            for (std::uint64_t m = 0; m <= sat_mmax; ++m)
                states.push_back(std::async(std::launch::async | std::launch::deferred,
                                            [m, &th] { return g2ws::saturate(m, th); }));
            std::cout << "m\tk\tsize\n";
            for (std::uint64_t m = 0; m <= sat_mmax; ++m) {
                const g2ws::SaturationState st = states[m].get();
                for (std::size_t k = 0; k < st.strata.size(); ++k)
                    std::cout << m << '\t' << k << '\t' << st.strata[k].size() << "\n";
            }
            if (sat_audit) {
                const g2ws::AuditReport rep = g2ws::soundness_audit(th, sat_mmax);
                std::cout << "# audit: " << rep.checked << " memberships, "
                          << rep.violations.size() << " violations\n";
                for (const std::string& v : rep.violations) std::cout << "# violation: " << v << "\n";
                if (!rep.clean()) return 1;
            }
            return 0;
        }

        if (*graph) {
            const g2ws::EdgeReport rep = g2ws::figure1_report();
            if (graph_tsv_flag) std::cout << graph_tsv(rep);
            if (graph_dot_flag || !graph_tsv_flag) std::cout << graph_dot(rep);
            return 0;
        }
    } catch (const g2ws::ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
