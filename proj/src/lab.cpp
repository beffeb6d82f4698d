#include "plim/lab.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

#include "plim/error.hpp"

namespace plim {

PLMap horseshoe3() {
    return connect_the_dots({{0, 0}, {Rational(1, 3), 1}, {Rational(2, 3), 0}, {1, 1}});
}

PLMap tent2() {
    return connect_the_dots({{0, 0}, {Rational(1, 2), 1}, {1, 0}});
}

PLMap golden_map() {
    // cell [0,1/2] covers everything, cell [1/2,1] maps onto [0,1/2]
    return connect_the_dots({{0, 1}, {Rational(1, 2), 0}, {1, Rational(1, 2)}});
}

PLMap identity_map() { return connect_the_dots({{0, 0}, {1, 1}}); }

PLMap interchange_map() {
    return connect_the_dots(
        {{0, Rational(1, 2)}, {Rational(1, 4), 1}, {Rational(1, 2), Rational(1, 2)}, {1, 0}});
}

Rational example1_v1(const Rational& t) { return Rational(1, 4) - t + 2 * t * t; }
Rational example1_v8(const Rational& t) { return Rational(3, 4) + t - 2 * t * t; }

Example1Bundle example1(const Rational& t) {
    if (t < 0 || t > Rational(1, 4)) throw DomainError("example1: t must lie in [0, 1/4]");
    Example1Bundle b;
    b.t = t;
    b.f = horseshoe3();
    Rational a = Rational(1, 2) - t;
    Rational bb = Rational(1, 2) + t;
    Rational lambda = 3 + 2 * t;
    if (t == 0) {
        // c4 = c5 collapses; the merged value list keeps alternation
        std::vector<Rational> values{Rational(1, 2), Rational(1, 4), Rational(1, 2),
                                     0,              1,              Rational(1, 2),
                                     Rational(3, 4), Rational(1, 2)};
        b.g_tilde = constant_slope_from_critical_values(3, values);
        b.psi_t = MonotoneCDF::identity();
        b.g = b.g_tilde;
        b.degenerate = true;
        return b;
    }
    std::vector<Rational> values{a,
                                 example1_v1(t),
                                 a + t * t,
                                 0,
                                 bb + t * t,
                                 a - t * t,
                                 1,
                                 bb - t * t,
                                 example1_v8(t),
                                 bb};
    b.g_tilde = constant_slope_from_critical_values(lambda, values);
    b.psi_t = MonotoneCDF::from_dots({{0, 0}, {a, t}, {bb, 1 - t}, {1, 1}});
    PLMap psi_pl = b.psi_t.to_plmap();
    PLMap psi_inv = b.psi_t.inverse().to_plmap();
    b.g = compose(psi_pl, compose(b.g_tilde, psi_inv));
    return b;
}

Example2Bundle example2(const Rational& t) {
    if (t <= 0 || t > 1) throw DomainError("example2: t must lie in (0, 1] (original units)");
    Example2Bundle b;
    b.t = t;
    std::vector<Dot> base{{0, 32},  {20, 52}, {24, 60}, {25, 58}, {32, 72},
                          {52, 32}, {58, 20}, {60, 24}, {72, 0}};
    b.f = connect_the_dots(base, 0, 72);

    std::vector<Dot> g;
    auto push = [&](const Dot& d) {
        if (!g.empty() && g.back().x == d.x && g.back().y == d.y) return;
        g.push_back(d);
    };
    for (auto& d : base) {
        if (d.x == 24) {
            push({24 - t, 60 - 2 * t});
            push({24, 60 + t});
            push({24 + t, 60 - 2 * t});
        } else if (d.x == 60) {
            push({60 - t, 24 - 2 * t});
            push({60, 24 + t});
            push({60 + t, 24 - 2 * t});
        } else {
            push(d);
        }
    }
    b.g = connect_the_dots(g, 0, 72);
    return b;
}

PLMap modality_preserving(const Rational& s) {
    Rational sigma = s / 32;
    if (sigma <= 0 || sigma >= Rational(1, 2))
        throw DomainError("modality_preserving: s/32 must lie in (0, 1/2)");
    return connect_the_dots({{0, 0}, {Rational(1, 3), 1 - sigma}, {Rational(2, 3), sigma}, {1, 1}});
}

// ---------------------------------------------------------------------------
// tables

std::string format_sig12(double v) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

static unsigned long long fnv1a(const std::string& s) {
    unsigned long long h = 1469598103934665603ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

std::string ExperimentTable::to_csv() const {
    std::ostringstream os;
    std::ostringstream cfg;
    for (auto& [k, v] : metadata) cfg << k << "=" << v << ";";
    os << "# config_hash: " << std::hex << fnv1a(cfg.str()) << std::dec << "\n";
    for (auto& [k, v] : metadata) os << "# " << k << ": " << v << "\n";
    for (size_t i = 0; i < columns.size(); ++i) os << (i ? "," : "") << columns[i];
    os << "\n";
    for (auto& r : rows) {
        for (size_t i = 0; i < r.size(); ++i) os << (i ? "," : "") << r[i];
        os << "\n";
    }
    return os.str();
}

Theorem1Result theorem1_experiment(const PLMap& f, const Rational& x, int n_max,
                                   long long budget) {
    Theorem1Result res;
    EntropyEstimate est = entropy_auto(f, std::min(n_max, 10));
    PreimageCounts pc = preimage_counts(f, x, n_max, budget);
    res.truncated = !pc.complete;

    res.table.columns = {"n", "count", "ratio"};
    res.table.metadata = {
        {"experiment", "preimage_growth"},
        {"x", rational_to_string(x)},
        {"n_max", std::to_string(n_max)},
        {"budget", std::to_string(budget)},
        {"entropy_method", entropy_method_name(est.method)},
        {"lambda", format_sig12(std::exp(est.value))},
        {"truncated", pc.complete ? "false" : "true"},
    };
    std::vector<double> ratios;
    for (size_t n = 0; n < pc.counts.size(); ++n) {
        double ratio;
        if (auto lam = est.lambda_exact()) {
            Rational pw = 1;
            for (size_t i = 0; i < n; ++i) pw *= *lam;
            ratio = to_double(Rational(pc.counts[n]) / pw);
        } else {
            ratio = static_cast<double>(pc.counts[n]) * std::exp(-est.value * n);
        }
        ratios.push_back(ratio);
        res.table.rows.push_back(
            {std::to_string(n), std::to_string(pc.counts[n]), format_sig12(ratio)});
    }
    double mn = -1;
    for (size_t n = ratios.size() / 2; n < ratios.size(); ++n)
        if (mn < 0 || ratios[n] < mn) mn = ratios[n];
    res.min_trailing_ratio = std::max(mn, 0.0);
    res.positive = mn > 0;
    return res;
}

namespace {

struct FamilyMember {
    Rational t;
    PLMap g;
    // exact reference objects when the family provides them
    std::optional<PLMap> model_exact;
    std::optional<MonotoneCDF> psi_exact;
};

struct FamilyData {
    std::string name;
    PLMap f;
    PLMap model_f;       // Phi(f)
    MonotoneCDF psi_f;   // Psi(f)
    std::vector<FamilyMember> members;
};

FamilyData make_family(FamilyKind kind, const std::vector<Rational>& t_values,
                       const Theorem3Config& cfg) {
    FamilyData fam;
    switch (kind) {
        case FamilyKind::Example1: {
            fam.name = "example1";
            fam.f = horseshoe3();
            fam.model_f = fam.f;
            fam.psi_f = MonotoneCDF::identity();
            for (auto& t : t_values) {
                Example1Bundle b = example1(t);
                fam.members.push_back({t, b.g, b.g_tilde, b.psi_t});
            }
            break;
        }
        case FamilyKind::Example2: {
            fam.name = "example2";
            fam.f = example2(Rational(1, 2)).f;
            auto md = markov_detect(fam.f);
            if (!md) throw Error("example2: expected a Markov base map");
            CSModel cs = markov_constant_slope(fam.f, *md, rational_from_double(1e-9));
            fam.model_f = cs.model;
            fam.psi_f = cs.psi;
            for (auto& t : t_values)
                fam.members.push_back({t, example2(t).g, std::nullopt, std::nullopt});
            break;
        }
        case FamilyKind::ModalityPreserving: {
            fam.name = "modality_preserving";
            fam.f = horseshoe3();
            fam.model_f = fam.f;
            fam.psi_f = MonotoneCDF::identity();
            for (auto& t : t_values)
                fam.members.push_back({t, modality_preserving(t), std::nullopt, std::nullopt});
            break;
        }
    }
    (void)cfg;
    return fam;
}

CSModel solve_with_fallback(const PLMap& g, const Theorem3Config& cfg) {
    double tol = cfg.tol;
    for (int attempt = 0;; ++attempt) {
        try {
            return constant_slope_model(g, tol, cfg.max_iter, cfg.breakpoint_cap);
        } catch (const ConvergenceError&) {
            if (attempt >= 2) throw;
            tol *= 100;  // fractal conjugacies stall at the decimation floor
        }
    }
}

}  // namespace

ExperimentTable theorem3_experiment(FamilyKind kind, const std::vector<Rational>& t_values,
                                    const Theorem3Config& cfg) {
    FamilyData fam = make_family(kind, t_values, cfg);
    ExperimentTable tbl;
    tbl.columns = {"t",          "d(g_t,f)",        "h(g_t)",        "|h(g_t)-h(f)|",
                   "d(model_t,model_f)", "d(psi_t,psi_f)", "model_slope",   "verdict"};
    double hf;
    {
        EntropyEstimate ef = entropy_auto(fam.f, 12);
        hf = ef.value;
    }
    tbl.metadata = {
        {"experiment", "theorem3_" + fam.name},
        {"tol", format_sig12(cfg.tol)},
        {"max_iter", std::to_string(cfg.max_iter)},
        {"breakpoint_cap", std::to_string(cfg.breakpoint_cap)},
        {"h(f)", format_sig12(hf)},
    };

    PLMap psi_f_pl = fam.psi_f.to_plmap();
    for (auto& m : fam.members) {
        std::vector<std::string> row{rational_to_string(m.t)};
        Rational dist = sup_distance(m.g, fam.f);
        row.push_back(format_sig12(to_double(dist)));
        try {
            TransitivityVerdict v = transitivity_check(m.g);
            CSModel cs = solve_with_fallback(m.g, cfg);
            double h = cs.lambda.value;
            row.push_back(format_sig12(h));
            row.push_back(format_sig12(std::abs(h - hf)));
            row.push_back(format_sig12(to_double(sup_distance(cs.model, fam.model_f))));
            row.push_back(
                format_sig12(to_double(sup_distance(cs.psi.to_plmap(), psi_f_pl))));
            row.push_back(format_sig12(std::exp(h)));
            row.push_back(transitivity_status_name(v.status));
        } catch (const Error& e) {
            while (row.size() + 1 < tbl.columns.size()) row.push_back("error");
            row.push_back(std::string("error: ") + e.what());
        }
        tbl.rows.push_back(row);
    }
    return tbl;
}

ExperimentTable theorem2_experiment(const std::vector<Rational>& t_values,
                                    const std::vector<Rational>& eps_list, bool use_exact,
                                    const Theorem3Config& cfg) {
    std::vector<MonotoneCDF> family;
    for (auto& t : t_values) {
        Example1Bundle b = example1(t);
        if (use_exact) {
            family.push_back(b.psi_t.inverse());
        } else {
            CSModel cs = solve_with_fallback(b.g, cfg);
            family.push_back(cs.psi.inverse());
        }
    }
    std::vector<ModulusRow> rows = equicontinuity_modulus(family, eps_list);
    ExperimentTable tbl;
    tbl.columns = {"eps", "delta", "argmin_t"};
    tbl.metadata = {
        {"experiment", "theorem2_equicontinuity"},
        {"family", "example1"},
        {"conjugacies", use_exact ? "exact" : "computed"},
        {"tol", format_sig12(cfg.tol)},
    };
    for (auto& r : rows)
        tbl.rows.push_back({format_sig12(to_double(r.eps)), format_sig12(to_double(r.delta)),
                            rational_to_string(t_values[r.argmin])});
    return tbl;
}

}  // namespace plim
