// plim: piecewise-linear interval map laboratory
//
// Subcommands expose the library over stable JSON/CSV/DOT files:
//   entropy, csmodel, diagram, preimages, experiment, check
//
// Exit codes: 0 ok, 2 parse/config error, 3 budget or convergence failure,
// 4 precondition refusal.

#include <fstream>
#include <iostream>
#include <optional>

#include "CLI11.hpp"
#include "json.hpp"
#include "plim/dynamics.hpp"
#include "plim/entropy.hpp"
#include "plim/error.hpp"
#include "plim/hofbauer.hpp"
#include "plim/lab.hpp"
#include "plim/map_io.hpp"
#include "plim/parry.hpp"

using namespace plim;
using nlohmann::json;

namespace {

Rational cli_rational(const std::string& s) {
    if (s.find('.') != std::string::npos)
        throw ParseError("decimal literals are rejected; write an exact fraction like 1/4");
    auto r = rational_from_string(s);
    if (!r) throw ParseError("not a rational literal: " + s);
    return *r;
}

std::vector<Rational> cli_rational_list(const std::string& s) {
    std::vector<Rational> out;
    std::string cur;
    for (char c : s) {
        if (c == ',') {
            out.push_back(cli_rational(cur));
            cur.clear();
        } else {
            cur += c;
        }
    }
    if (!cur.empty()) out.push_back(cli_rational(cur));
    if (out.empty()) throw ParseError("empty value list");
    return out;
}

void emit(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << text;
        if (!text.empty() && text.back() != '\n') std::cout << "\n";
        return;
    }
    std::ofstream f(out_path);
    if (!f) throw ParseError("cannot write " + out_path);
    f << text;
    if (!text.empty() && text.back() != '\n') f << "\n";
}

std::string dstr(double v) { return format_sig12(v); }

json estimate_json(const EntropyEstimate& e, bool log2) {
    json j;
    j["value"] = dstr(e.value);
    j["lower"] = dstr(e.lower_bound);
    j["upper"] = dstr(e.upper_bound);
    j["lambda"] = dstr(std::exp(e.value));
    j["method"] = entropy_method_name(e.method);
    j["depth"] = e.depth;
    j["converged"] = e.converged;
    if (e.lambda_lo) j["lambda_lo"] = rational_to_string(*e.lambda_lo);
    if (e.lambda_hi) j["lambda_hi"] = rational_to_string(*e.lambda_hi);
    if (auto ex = e.lambda_exact()) j["lambda_exact"] = rational_to_string(*ex);
    if (log2) j["value_log2"] = dstr(e.value / std::log(2.0));
    return j;
}

int run(int argc, char** argv) {
    CLI::App app{"piecewise-linear interval map laboratory"};
    app.require_subcommand(1);
    int threads = 1;
    app.add_option("--threads", threads, "worker threads (only 1 is bit-reproducible)");

    // entropy
    auto* c_ent = app.add_subcommand("entropy", "topological entropy of a map file");
    std::string ent_file, ent_method = "auto", ent_tol = "1/1000000000";
    int ent_depth = 12;
    bool ent_log2 = false;
    c_ent->add_option("map", ent_file)->required();
    c_ent->add_option("--method", ent_method)
        ->check(CLI::IsMember({"lap", "transfer", "markov", "auto"}));
    c_ent->add_option("--depth", ent_depth);
    c_ent->add_option("--tol", ent_tol, "rational tolerance, e.g. 1/1000000");
    c_ent->add_flag("--log2", ent_log2);

    // csmodel
    auto* c_cs = app.add_subcommand("csmodel", "constant-slope model and conjugacy");
    std::string cs_file, cs_out;
    double cs_tol = 1e-10;
    int cs_iter = 4000, cs_cap = 1 << 15;
    bool cs_force = false;
    c_cs->add_option("map", cs_file)->required();
    c_cs->add_option("--tol", cs_tol);
    c_cs->add_option("--max-iter", cs_iter);
    c_cs->add_option("--cap", cs_cap);
    c_cs->add_option("--out", cs_out);
    c_cs->add_flag("--force", cs_force, "run even when the transitivity check refuses");

    // diagram
    auto* c_dg = app.add_subcommand("diagram", "complete Markov diagram");
    std::string dg_file, dg_out, dg_format = "json";
    int dg_word_cap = 32, dg_vertex_cap = 20000;
    c_dg->add_option("map", dg_file)->required();
    c_dg->add_option("--word-cap", dg_word_cap);
    c_dg->add_option("--vertex-cap", dg_vertex_cap);
    c_dg->add_option("--format", dg_format)->check(CLI::IsMember({"dot", "json"}));
    c_dg->add_option("--out", dg_out);

    // preimages
    auto* c_pre = app.add_subcommand("preimages", "iterated preimage counts and ratios");
    std::string pre_file, pre_point, pre_out;
    int pre_n = 12;
    long long pre_budget = 4'000'000;
    c_pre->add_option("map", pre_file)->required();
    c_pre->add_option("--point", pre_point, "base point as p/q")->required();
    c_pre->add_option("--n", pre_n);
    c_pre->add_option("--budget", pre_budget);
    c_pre->add_option("--out", pre_out);

    // experiment
    auto* c_exp = app.add_subcommand("experiment", "the perturbation experiment tables");
    std::string exp_name, exp_t = "1/4,1/8,1/16", exp_eps = "1/5,1/10,1/20", exp_out;
    double exp_tol = 1e-9;
    bool exp_exact = false;
    c_exp->add_option("name", exp_name)
        ->required()
        ->check(CLI::IsMember({"example1", "example2", "modality-preserving", "theorem2"}));
    c_exp->add_option("--t-values", exp_t, "comma list of rationals");
    c_exp->add_option("--eps", exp_eps, "comma list of rationals (theorem2)");
    c_exp->add_option("--tol", exp_tol);
    c_exp->add_flag("--exact", exp_exact, "theorem2: use the closed-form conjugacies");
    c_exp->add_option("--out", exp_out);

    // check
    auto* c_chk = app.add_subcommand("check", "transitivity verdict and critical data");
    std::string chk_file;
    c_chk->add_option("map", chk_file)->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }
    if (threads != 1) {
        std::cerr << "plim: only --threads 1 is supported (and bit-reproducible)\n";
        return 2;
    }

    if (c_ent->parsed()) {
        PLMap f = load_plmap(ent_file);
        Rational tol = cli_rational(ent_tol);
        json j;
        if (ent_method == "lap") {
            j = estimate_json(entropy_lap(f, ent_depth), ent_log2);
        } else if (ent_method == "transfer") {
            j = estimate_json(entropy_transfer(f, 1 << 14, 4000, to_double(tol)), ent_log2);
        } else if (ent_method == "markov") {
            auto md = markov_detect(f);
            if (!md) throw PreconditionError("entropy --method markov: no Markov partition found");
            j = estimate_json(entropy_markov(*md, tol), ent_log2);
        } else {
            j = estimate_json(entropy_auto(f, ent_depth, to_double(tol)), ent_log2);
            EntropyEstimate lap = entropy_lap(f, ent_depth);
            j["lap_bracket"] = {{"lower", dstr(lap.lower_bound)},
                                {"upper", dstr(lap.upper_bound)},
                                {"depth", lap.depth}};
        }
        j["config"] = {{"method", ent_method},
                       {"depth", ent_depth},
                       {"tol", rational_to_string(tol)},
                       {"map", ent_file}};
        emit(j.dump(2), "");
        return 0;
    }

    if (c_cs->parsed()) {
        PLMap f = load_plmap(cs_file);
        TransitivityVerdict v = transitivity_check(f);
        if (v.status == TransitivityStatus::NotTransitive && !cs_force) {
            std::cerr << "plim csmodel: refused, map is not transitive (witness "
                      << v.invariant_subinterval->str() << "); use --force to override\n";
            return 4;
        }
        CSModel cs = constant_slope_model(f, cs_tol, cs_iter, cs_cap);
        cs.transitivity_verified = v.transitive();
        std::string text = csmodel_to_json(cs);
        json j = json::parse(text);
        j["transitivity_status"] = transitivity_status_name(v.status);
        j["forced"] = cs_force;
        j["config"] = {{"tol", dstr(cs_tol)},
                       {"max_iter", cs_iter},
                       {"cap", cs_cap},
                       {"map", cs_file}};
        emit(j.dump(2), cs_out);
        return 0;
    }

    if (c_dg->parsed()) {
        PLMap f = load_plmap(dg_file);
        Diagram d = build_diagram(f, dg_word_cap, dg_vertex_cap);
        emit(dg_format == "dot" ? diagram_to_dot(d) : diagram_to_json(d), dg_out);
        return 0;
    }

    if (c_pre->parsed()) {
        PLMap f = load_plmap(pre_file);
        Theorem1Result r = theorem1_experiment(f, cli_rational(pre_point), pre_n, pre_budget);
        emit(r.table.to_csv(), pre_out);
        return r.truncated ? 3 : 0;
    }

    if (c_exp->parsed()) {
        std::vector<Rational> ts = cli_rational_list(exp_t);
        Theorem3Config cfg;
        cfg.tol = exp_tol;
        ExperimentTable tbl;
        if (exp_name == "example1") {
            tbl = theorem3_experiment(FamilyKind::Example1, ts, cfg);
        } else if (exp_name == "example2") {
            tbl = theorem3_experiment(FamilyKind::Example2, ts, cfg);
        } else if (exp_name == "modality-preserving") {
            tbl = theorem3_experiment(FamilyKind::ModalityPreserving, ts, cfg);
        } else {
            tbl = theorem2_experiment(ts, cli_rational_list(exp_eps), exp_exact, cfg);
        }
        std::string path = exp_out.empty() ? exp_name + ".csv" : exp_out;
        emit(tbl.to_csv(), path);
        std::cerr << "wrote " << path << "\n";
        return 0;
    }

    if (c_chk->parsed()) {
        PLMap f = load_plmap(chk_file);
        json j = json::parse(verdict_to_json(transitivity_check(f)));
        CriticalData cd = critical_data(f);
        json pts = json::array();
        for (auto& p : cd.points) pts.push_back(rational_to_string(p));
        j["critical_points"] = pts;
        j["modality"] = cd.modality;
        try {
            json fps = json::array();
            for (auto& p : fixed_points(f)) fps.push_back(rational_to_string(p));
            j["fixed_points"] = fps;
        } catch (const DiagonalSegmentError& e) {
            j["fixed_points"] = "diagonal segment";
        }
        if (f.domain_scale != 1) j["original_domain_scale"] = rational_to_string(f.domain_scale);
        emit(j.dump(2), "");
        return 0;
    }
    return 2;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const ParseError& e) {
        std::cerr << "plim: " << e.what() << "\n";
        return 2;
    } catch (const DomainError& e) {
        std::cerr << "plim: " << e.what() << "\n";
        return 2;
    } catch (const BudgetError& e) {
        std::cerr << "plim: " << e.what() << "\n";
        return 3;
    } catch (const ConvergenceError& e) {
        std::cerr << "plim: " << e.what() << "\n";
        return 3;
    } catch (const PreconditionError& e) {
        std::cerr << "plim: " << e.what() << "\n";
        return 4;
    } catch (const Error& e) {
        std::cerr << "plim: " << e.what() << "\n";
        return 1;
    }
}
