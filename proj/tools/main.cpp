// structlab: command-line surface for the structural-Ramsey workbench.
//
// Exit codes: 0 = holds/success, 1 = fails with certificate, 2 = inconclusive,
// 64 = usage error, 65 = input parse/semantic error.

#include <cctype>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <sstream>

#include <sys/wait.h>
#include <unistd.h>

#include <CLI11.hpp>

#include "structlab/arrow.hpp"
#include "structlab/classes.hpp"
#include "structlab/fraisse.hpp"
#include "structlab/indiscernibles.hpp"
#include "structlab/io.hpp"
#include "structlab/niplab.hpp"
#include "structlab/report.hpp"

namespace {

using namespace structlab;

constexpr int kExitUsage = 64;
constexpr int kExitParse = 65;

/// Structure argument: a file path, or a builtin reference `order<n>` /
/// `og<n>` / `og<n>:i-j,k-l` (ordered graph with the listed edges).
FinStructure load_structure(const std::string& ref, RunReport& report, const std::string& role) {
    auto record = [&](const std::string& text) {
        report.inputs.emplace_back(role + ":" + ref, content_hash(text));
    };
    if (ref.rfind("order", 0) == 0 && ref.size() > 5 &&
        std::isdigit(static_cast<unsigned char>(ref[5]))) {
        record(ref);
        return linear_order(std::stoi(ref.substr(5)));
    }
    if (ref.rfind("og", 0) == 0 && ref.size() > 2 &&
        std::isdigit(static_cast<unsigned char>(ref[2]))) {
        record(ref);
        auto colon = ref.find(':');
        int n = std::stoi(ref.substr(2, colon == std::string::npos ? std::string::npos : colon - 2));
        std::vector<std::pair<int, int>> edges;
        if (colon != std::string::npos) {
            std::istringstream in(ref.substr(colon + 1));
            std::string part;
            while (std::getline(in, part, ',')) {
                auto dash = part.find('-');
                if (dash == std::string::npos)
                    throw StructureError("bad edge '" + part + "' in " + ref);
                edges.emplace_back(std::stoi(part.substr(0, dash)),
                                   std::stoi(part.substr(dash + 1)));
            }
        }
        return ordered_graph(n, edges);
    }
    std::string text = read_file(ref);
    record(text);
    return parse_structure(text);
}

std::string base_dir_of(const std::string& path) {
    auto slash = path.find_last_of('/');
    return slash == std::string::npos ? std::string(".") : path.substr(0, slash);
}

IndexedFamily load_family(const std::string& path, RunReport& report, const std::string& role) {
    std::string text = read_file(path);
    report.inputs.emplace_back(role + ":" + path, content_hash(text));
    return parse_family(text, base_dir_of(path));
}

FormulaSet load_formulas(const std::string& path, std::shared_ptr<const Signature> sig,
                         RunReport& report, const std::string& role) {
    std::string text = read_file(path);
    report.inputs.emplace_back(role + ":" + path, content_hash(text));
    return parse_formula_set(text, std::move(sig));
}

FiniteClass builtin_class(const std::string& id, int bound) {
    const int cap = std::max(bound + 2, 6);
    if (id == "ordered-graphs") return class_ordered_graphs(cap);
    if (id == "girth5-ordered") return class_girth_gt4_ordered_graphs(cap);
    if (id == "linear-orders") return class_linear_orders(cap + 4);
    throw StructureError("unknown class id '" + id +
                         "' (ordered-graphs, girth5-ordered, linear-orders)");
}

/// Shells out to an external DIMACS solver and reads the model back.
std::optional<std::vector<int>> run_external_solver(const std::string& solver,
                                                    const std::string& cnf) {
    std::string in_path = "/tmp/structlab_cnf_" + std::to_string(::getpid()) + ".cnf";
    std::string out_path = in_path + ".out";
    write_file(in_path, cnf);
    std::string cmd = solver + " " + in_path + " > " + out_path + " 2>/dev/null";
    int rc = std::system(cmd.c_str());
    std::string out;
    try {
        out = read_file(out_path);
    } catch (const StructureError&) {
        out.clear();
    }
    std::remove(in_path.c_str());
    std::remove(out_path.c_str());

    // conventions: exit 10/20 or s-lines; model on v-lines or bare literals
    bool sat = WEXITSTATUS(rc) == 10 || out.find("s SATISFIABLE") != std::string::npos ||
               (out.find("UNSAT") == std::string::npos && out.find("SAT") != std::string::npos);
    if (!sat) return std::nullopt;
    std::vector<int> model;
    std::istringstream lines(out);
    std::string line;
    while (std::getline(lines, line)) {
        if (line.empty() || line[0] == 'c' || line[0] == 's') continue;
        std::istringstream words(line[0] == 'v' ? line.substr(1) : line);
        std::string w;
        while (words >> w) {
            try {
                int lit = std::stoi(w);
                if (lit != 0) model.push_back(lit);
            } catch (...) {
            }
        }
    }
    return model;
}

void finish(RunReport& report, const std::chrono::steady_clock::time_point& start) {
    report.elapsed_ms = std::chrono::duration<double, std::milli>(
                            std::chrono::steady_clock::now() - start)
                            .count();
    report.print(std::cout);
}

std::string tuple_text(const Tuple& t) {
    std::string out;
    for (size_t i = 0; i < t.size(); ++i) out += (i ? " " : "") + std::to_string(t[i]);
    return out;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"structlab: partition arrows, amalgamation classes and "
                 "generalized indiscernibles on finite structures"};
    app.require_subcommand(1);
    int jobs = 1;
    app.add_option("--jobs", jobs, "worker cap for parallel checks");

    // arrow
    auto* arrow_cmd = app.add_subcommand("arrow", "decide C -> (B)^A_k");
    std::string arrow_c, arrow_b, arrow_a, arrow_mode = "exhaustive", arrow_out, arrow_solver;
    int arrow_k = 2;
    std::uint64_t arrow_budget = std::uint64_t{1} << 24;
    arrow_cmd->add_option("--C", arrow_c, "host structure")->required();
    arrow_cmd->add_option("--B", arrow_b, "sought-copy structure")->required();
    arrow_cmd->add_option("--A", arrow_a, "colored-copy structure")->required();
    arrow_cmd->add_option("-k,--colors", arrow_k, "number of colors");
    arrow_cmd->add_option("--mode", arrow_mode, "exhaustive | search | cnf");
    arrow_cmd->add_option("--budget", arrow_budget, "coloring/node budget");
    arrow_cmd->add_option("--out", arrow_out, "cnf mode: write the DIMACS document here");
    arrow_cmd->add_option("--solve-with", arrow_solver, "cnf mode: solver binary to shell out to");

    // class-check
    auto* class_cmd = app.add_subcommand("class-check", "hereditary/JEP/AP/strong-AP at a bound");
    std::string class_id, class_props = "hereditary,jep,ap,strong-ap";
    int class_bound = 3;
    class_cmd->add_option("--class", class_id, "ordered-graphs | girth5-ordered | linear-orders")
        ->required();
    class_cmd->add_option("--bound", class_bound, "part-size bound");
    class_cmd->add_option("--props", class_props, "comma-separated property list");

    // fraisse
    auto* fraisse_cmd = app.add_subcommand("fraisse", "level-n weakly saturated ordered graph");
    int fraisse_level = 2;
    std::string fraisse_out;
    bool fraisse_large = false;
    fraisse_cmd->add_option("--level", fraisse_level, "saturation level");
    fraisse_cmd->add_option("--out", fraisse_out, "write the structure file here");
    fraisse_cmd->add_flag("--allow-large", fraisse_large, "permit level 5");

    // extract
    auto* extract_cmd = app.add_subcommand("extract", "homogeneous indiscernible extraction");
    std::string extract_family, extract_delta, extract_shape, extract_out;
    int extract_r = 0;
    extract_cmd->add_option("--family", extract_family, "family file")->required();
    extract_cmd->add_option("--delta", extract_delta, "formula file")->required();
    extract_cmd->add_option("--shape", extract_shape, "shape structure")->required();
    extract_cmd->add_option("-r,--arity", extract_r, "pattern arity (default: max block arity)");
    extract_cmd->add_option("--out", extract_out, "write the output family here");

    // check-ind
    auto* check_cmd = app.add_subcommand("check-ind", "generalized-indiscernibility check");
    std::string check_family, check_delta, check_sub;
    int check_bound = 2;
    check_cmd->add_option("--family", check_family, "family file")->required();
    check_cmd->add_option("--delta", check_delta, "formula file")->required();
    check_cmd->add_option("--bound", check_bound, "arity bound");
    check_cmd->add_option("--sub", check_sub, "comma-separated index sub-signature (default full)");

    // based-on
    auto* based_cmd = app.add_subcommand("based-on", "based-on verification");
    std::string based_newer, based_older, based_sigma;
    int based_bound = 2;
    based_cmd->add_option("--newer", based_newer, "newer family file")->required();
    based_cmd->add_option("--older", based_older, "older family file")->required();
    based_cmd->add_option("--sigma", based_sigma, "formula file")->required();
    based_cmd->add_option("--bound", based_bound, "arity bound");

    // nip-demo
    auto* nip_cmd = app.add_subcommand("nip-demo", "NIP/IP characterization pipeline on a built-in target");
    std::string nip_target = "powerset";
    int nip_level = 2;
    nip_cmd->add_option("--target", nip_target, "powerset | parity-graph | linear-order");
    nip_cmd->add_option("--level", nip_level, "saturated-index level");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help
        app.exit(e);
        return kExitUsage;
    }

    RunReport report;
    for (int i = 0; i < argc; ++i) report.command += std::string(i ? " " : "") + argv[i];
    auto start = std::chrono::steady_clock::now();

    try {
        if (*arrow_cmd) {
            FinStructure c = load_structure(arrow_c, report, "C");
            FinStructure b = load_structure(arrow_b, report, "B");
            FinStructure a = load_structure(arrow_a, report, "A");
            ArrowOptions opts;
            opts.budget = arrow_budget;
            opts.jobs = jobs;
            ArrowMode mode;
            if (arrow_mode == "exhaustive")
                mode = ArrowMode::exhaustive;
            else if (arrow_mode == "search")
                mode = ArrowMode::search;
            else if (arrow_mode == "cnf")
                mode = ArrowMode::cnf;
            else
                throw CLI::ValidationError("--mode", "unknown mode " + arrow_mode);
            if (mode == ArrowMode::cnf) {
                std::string cnf = export_cnf(c, b, a, arrow_k);
                if (!arrow_out.empty()) {
                    write_file(arrow_out, cnf);
                    report.detail_lines.push_back("cnf written to " + arrow_out);
                }
                if (!arrow_solver.empty())
                    opts.solver = [&](const std::string& doc) {
                        return run_external_solver(arrow_solver, doc);
                    };
            }
            ArrowVerdict v = check_arrow(c, b, a, arrow_k, mode, opts);
            report.verdict = to_string(v.status);
            if (!v.detail.empty()) report.detail_lines.push_back(v.detail);
            report.detail_lines.push_back("colorings checked: " +
                                          std::to_string(v.colorings_checked));
            if (v.bad_coloring) {
                std::string colors;
                for (int col : v.bad_coloring->assignment)
                    colors += (colors.empty() ? "" : " ") + std::to_string(col);
                report.certificate_lines.push_back("bad-coloring " + colors);
            }
        } else if (*class_cmd) {
            FiniteClass k = builtin_class(class_id, class_bound);
            report.inputs.emplace_back("class:" + class_id, content_hash(class_id));
            Status overall = Status::holds;
            std::istringstream props(class_props);
            std::string prop;
            while (std::getline(props, prop, ',')) {
                if (prop == "hereditary") {
                    auto v = hereditary_check(k, class_bound);
                    report.detail_lines.push_back("hereditary: " + to_string(v.status));
                    if (v.status == Status::fails) {
                        overall = Status::fails;
                        report.certificate_lines.push_back(
                            "hereditary member-size " + std::to_string(v.certificate->member.size()) +
                            " subset " + tuple_text(v.certificate->subset));
                    }
                } else if (prop == "jep") {
                    auto v = jep_check(k, class_bound);
                    report.detail_lines.push_back("jep: " + to_string(v.status));
                    if (v.status != Status::holds && overall == Status::holds)
                        overall = v.status;
                } else if (prop == "ap" || prop == "strong-ap") {
                    auto v = prop == "ap" ? ap_check(k, class_bound)
                                          : strong_ap_check(k, class_bound);
                    report.detail_lines.push_back(prop + ": " + to_string(v.status));
                    if (v.status == Status::fails) {
                        overall = Status::fails;
                        const auto& base = *v.certificate;
                        report.certificate_lines.push_back(
                            prop + " base |A|=" + std::to_string(base.a.size()) +
                            " |B1|=" + std::to_string(base.b1.size()) +
                            " |B2|=" + std::to_string(base.b2.size()) + " f1 " +
                            tuple_text(base.f1.map) + " f2 " + tuple_text(base.f2.map));
                        // certificate re-verification: the amalgam search must
                        // still come up empty
                        if (find_amalgam(k, base, prop == "strong-ap"))
                            throw StructureError("certificate failed re-verification");
                        report.detail_lines.push_back(prop + " certificate re-verified");
                    } else if (v.status == Status::inconclusive && overall == Status::holds) {
                        overall = Status::inconclusive;
                    }
                } else {
                    throw CLI::ValidationError("--props", "unknown property " + prop);
                }
            }
            report.verdict = to_string(overall);
        } else if (*fraisse_cmd) {
            SaturationCertificate cert = weakly_saturated_ordered_graph(fraisse_level, fraisse_large);
            if (!cert.verify()) throw StructureError("saturation certificate failed verification");
            report.verdict = "success";
            report.detail_lines.push_back("structure size: " + std::to_string(cert.structure.size()));
            report.certificate_lines.push_back("witness-types " +
                                               std::to_string(cert.witness_map.size()));
            if (!fraisse_out.empty()) {
                write_file(fraisse_out, print_structure(cert.structure));
                report.detail_lines.push_back("structure written to " + fraisse_out);
            }
        } else if (*extract_cmd) {
            IndexedFamily fam = load_family(extract_family, report, "family");
            FormulaSet delta = load_formulas(extract_delta, fam.target.signature_ptr(), report, "delta");
            FinStructure shape = load_structure(extract_shape, report, "shape");
            int r = extract_r;
            if (r <= 0)
                for (const auto& df : delta.formulas)
                    r = std::max(r, block_arity(df, fam.tuple_length()));
            if (r <= 0) r = 1;
            IndexedFamily out = extract_indiscernible(fam, delta, r, shape);
            std::vector<std::string> full;
            for (const auto& spec : out.index.signature().relations()) full.push_back(spec.name);
            auto check = check_indiscernible(out, full, delta, r);
            auto based = based_on_check(out, fam, delta, r);
            report.verdict = check.holds() && based.holds() ? "holds" : "fails";
            for (size_t i = 0; i < out.map.size(); ++i)
                report.certificate_lines.push_back("map " + std::to_string(i) + " -> " +
                                                   tuple_text(out.map[i]));
            if (!extract_out.empty()) {
                write_file(extract_out, print_family(out));
                report.detail_lines.push_back("family written to " + extract_out);
            }
        } else if (*check_cmd) {
            IndexedFamily fam = load_family(check_family, report, "family");
            FormulaSet delta = load_formulas(check_delta, fam.target.signature_ptr(), report, "delta");
            std::vector<std::string> sub;
            if (check_sub.empty()) {
                for (const auto& r : fam.index.signature().relations()) sub.push_back(r.name);
            } else {
                std::istringstream in(check_sub);
                std::string name;
                while (std::getline(in, name, ',')) sub.push_back(name);
            }
            auto v = check_indiscernible(fam, sub, delta, check_bound);
            report.verdict = to_string(v.status);
            if (v.certificate)
                report.certificate_lines.push_back(
                    "violating-pair (" + tuple_text(v.certificate->first) + ") (" +
                    tuple_text(v.certificate->second) + ") formula " +
                    std::to_string(v.certificate->formula));
        } else if (*based_cmd) {
            IndexedFamily newer = load_family(based_newer, report, "newer");
            IndexedFamily older = load_family(based_older, report, "older");
            FormulaSet sigma = load_formulas(based_sigma, newer.target.signature_ptr(), report, "sigma");
            auto v = based_on_check(newer, older, sigma, based_bound);
            report.verdict = to_string(v.status);
            if (v.certificate)
                report.certificate_lines.push_back("unmatched-tuple " +
                                                   tuple_text(v.certificate->tuple));
        } else if (*nip_cmd) {
            NipDemoReport demo = run_nip_demo(nip_target, nip_level);
            report.verdict = to_string(demo.status);
            for (const auto& line : demo.lines) report.detail_lines.push_back(line);
            if (demo.collapse) {
                report.certificate_lines.push_back(
                    "flip-pair " + std::to_string(demo.collapse->flip.first + 1) + " " +
                    std::to_string(demo.collapse->flip.second + 1));
                report.certificate_lines.push_back("F " + demo.collapse->f_type.to_string());
                report.certificate_lines.push_back("G " + demo.collapse->g_type.to_string());
            }
            if (demo.final_shatter) {
                for (size_t t = 0; t < demo.final_shatter->instances.size(); ++t)
                    report.certificate_lines.push_back(
                        "instance " + std::to_string(t) + " -> " +
                        tuple_text(demo.final_shatter->instances[t]));
            }
        }
    } catch (const CLI::Error& e) {
        std::cerr << e.what() << "\n";
        return kExitUsage;
    } catch (const StructureError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitParse;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitParse;
    }

    finish(report, start);
    return report.exit_code();
}
