#include "plim/parry.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "json.hpp"
#include "plim/error.hpp"

namespace plim {

// ---------------------------------------------------------------------------
// exact single step (public op; the float engine below is its fast twin)

std::pair<MonotoneCDF, Rational> pullback_step(const PLMap& f, const MonotoneCDF& F) {
    CriticalData cd = critical_data(f);
    std::vector<Dot> out;
    Rational C = 0;
    for (size_t j = 0; j + 1 < cd.points.size(); ++j) {
        const Rational& a = cd.points[j];
        const Rational& b = cd.points[j + 1];
        Rational Ffa = F(eval(f, a));
        auto value_at = [&](const Rational& x) {
            Rational v = F(eval(f, x)) - Ffa;
            if (v < 0) v = -v;
            return C + v;
        };
        if (out.empty()) out.push_back({a, value_at(a)});
        // breakpoints: f dots inside the lap, plus lap preimages of F dots
        std::vector<Rational> xs;
        for (auto& d : f.dots)
            if (d.x > a && d.x < b) xs.push_back(d.x);
        for (int i = 0; i < f.segment_count(); ++i) {
            const Dot& p = f.dots[i];
            const Dot& q = f.dots[i + 1];
            if (q.x <= a || p.x >= b) continue;
            Rational lo = std::min(p.y, q.y), hi = std::max(p.y, q.y);
            for (auto& Fd : F.dots) {
                if (Fd.x <= lo || Fd.x >= hi) continue;
                xs.push_back(p.x + (Fd.x - p.y) * (q.x - p.x) / (q.y - p.y));
            }
        }
        std::sort(xs.begin(), xs.end());
        xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
        for (auto& x : xs)
            if (x > a && x < b) out.push_back({x, value_at(x)});
        out.push_back({b, value_at(b)});
        C = out.back().y;
    }
    Rational norm = C;
    if (norm <= 0) throw Error("pullback_step: zero norm");
    for (auto& d : out) d.y /= norm;
    out.back().y = 1;
    MonotoneCDF Fp = MonotoneCDF::from_dots(std::move(out), F.exact);
    return {Fp, norm};
}

// ---------------------------------------------------------------------------
// float engine

namespace {

struct EngineMap {
    std::vector<double> dx, dy;     // f dots
    std::vector<size_t> lap_begin;  // dot index of each critical point (+ last)
};

EngineMap make_engine_map(const PLMap& f) {
    EngineMap em;
    em.dx.reserve(f.dots.size());
    em.dy.reserve(f.dots.size());
    for (auto& d : f.dots) {
        em.dx.push_back(to_double(d.x));
        em.dy.push_back(to_double(d.y));
    }
    CriticalData cd = critical_data(f);
    size_t di = 0;
    for (auto& c : cd.points) {
        while (f.dots[di].x != c) ++di;
        em.lap_begin.push_back(di);
    }
    return em;
}

double interp(const std::vector<double>& xs, const std::vector<double>& ys, double v) {
    if (v <= xs.front()) return ys.front();
    if (v >= xs.back()) return ys.back();
    size_t i = std::upper_bound(xs.begin(), xs.end(), v) - xs.begin() - 1;
    double w = xs[i + 1] - xs[i];
    return w > 0 ? ys[i] + (ys[i + 1] - ys[i]) * (v - xs[i]) / w : ys[i];
}

struct Curve {
    std::vector<double> xs, ys;
};

// one application of the pullback operator, unnormalized except by `norm`
double pullback_apply(const EngineMap& em, const Curve& F, Curve& out) {
    out.xs.clear();
    out.ys.clear();
    double C = 0;
    auto push = [&](double x, double v) {
        if (!out.xs.empty() && x <= out.xs.back()) {
            out.ys.back() = std::max(out.ys.back(), v);
            return;
        }
        out.xs.push_back(x);
        out.ys.push_back(v);
    };
    size_t nlaps = em.lap_begin.size() - 1;
    for (size_t j = 0; j < nlaps; ++j) {
        size_t s0 = em.lap_begin[j], s1 = em.lap_begin[j + 1];
        double Ffa = interp(F.xs, F.ys, em.dy[s0]);
        push(em.dx[s0], C);
        for (size_t i = s0; i < s1; ++i) {
            double x0 = em.dx[i], x1 = em.dx[i + 1];
            double y0 = em.dy[i], y1 = em.dy[i + 1];
            bool inc = y1 > y0;
            double lo = inc ? y0 : y1, hi = inc ? y1 : y0;
            size_t a = std::upper_bound(F.xs.begin(), F.xs.end(), lo) - F.xs.begin();
            size_t b = std::lower_bound(F.xs.begin(), F.xs.end(), hi) - F.xs.begin();
            if (inc) {
                for (size_t t = a; t < b; ++t)
                    push(x0 + (F.xs[t] - y0) * (x1 - x0) / (y1 - y0),
                         C + std::abs(F.ys[t] - Ffa));
            } else {
                for (size_t t = b; t-- > a;)
                    push(x0 + (F.xs[t] - y0) * (x1 - x0) / (y1 - y0),
                         C + std::abs(F.ys[t] - Ffa));
            }
            push(x1, C + std::abs(interp(F.xs, F.ys, y1) - Ffa));
        }
        C += std::abs(interp(F.xs, F.ys, em.dy[s1]) - Ffa);
    }
    double norm = C;
    double inv = 1.0 / norm;
    for (auto& v : out.ys) v *= inv;
    out.ys.front() = 0;
    out.ys.back() = 1;
    for (size_t i = 1; i < out.ys.size(); ++i)
        if (out.ys[i] < out.ys[i - 1]) out.ys[i] = out.ys[i - 1];
    return norm;
}

// Douglas-Peucker keep-mask under a sup budget, doubling the budget until
// at most `cap` points survive.
std::vector<char> dp_mask(const std::vector<double>& xs, const std::vector<double>& ys,
                          double eps, size_t cap) {
    size_t n = xs.size();
    std::vector<char> keep(n);
    while (true) {
        std::fill(keep.begin(), keep.end(), 0);
        keep.front() = keep.back() = 1;
        size_t kept = 2;
        std::vector<std::pair<size_t, size_t>> stack{{0, n - 1}};
        while (!stack.empty()) {
            auto [i, j] = stack.back();
            stack.pop_back();
            if (j <= i + 1) continue;
            double x0 = xs[i], y0 = ys[i];
            double sx = xs[j] - x0, sy = ys[j] - y0;
            double best = -1;
            size_t bi = i + 1;
            for (size_t k = i + 1; k < j; ++k) {
                double dev = std::abs(ys[k] - (y0 + sy * (xs[k] - x0) / sx));
                if (dev > best) {
                    best = dev;
                    bi = k;
                }
            }
            if (best > eps) {
                keep[bi] = 1;
                ++kept;
                stack.push_back({i, bi});
                stack.push_back({bi, j});
            }
        }
        if (kept <= cap) return keep;
        eps *= 2;
    }
}

double decimate(Curve& c, double eps, size_t cap) {
    size_t n = c.xs.size();
    if (n <= 2) return eps;
    std::vector<char> keep = dp_mask(c.xs, c.ys, eps, cap);
    Curve d;
    for (size_t i = 0; i < n; ++i)
        if (keep[i]) {
            d.xs.push_back(c.xs[i]);
            d.ys.push_back(c.ys[i]);
        }
    c = std::move(d);
    return eps;
}

double sup_diff(const Curve& a, const Curve& b) {
    double best = 0;
    for (auto& x : a.xs) best = std::max(best, std::abs(interp(a.xs, a.ys, x) - interp(b.xs, b.ys, x)));
    for (auto& x : b.xs) best = std::max(best, std::abs(interp(a.xs, a.ys, x) - interp(b.xs, b.ys, x)));
    return best;
}

struct IterationResult {
    Curve F;
    double lambda = 0;
    double last_drift = 0;
    double lambda_spread = 0;  // max |lam_k - lam_{k-1}| over the last window
    double decim_floor = 0;    // effective decimation eps of the last step, scaled
    int iterations = 0;
    bool converged = false;

    double log_width() const {
        return (3 * (lambda_spread + last_drift) + decim_floor) / lambda + 1e-15;
    }
};

IterationResult pullback_iterate(const PLMap& f, Curve F0, double tol, int max_iter,
                                 size_t cap) {
    EngineMap em = make_engine_map(f);
    IterationResult r;
    r.F = std::move(F0);
    Curve next;
    double prev_lambda = 0;
    int streak = 0;
    std::vector<double> recent;
    size_t nlaps = em.lap_begin.size() - 1;
    for (int it = 1; it <= max_iter; ++it) {
        double lam = pullback_apply(em, r.F, next);
        double eps_used = decimate(next, tol / 10, cap);
        r.decim_floor = 2.0 * static_cast<double>(nlaps) * eps_used;
        double drift = sup_diff(r.F, next);
        std::swap(r.F, next);
        r.iterations = it;
        r.last_drift = drift;
        if (it > 1) {
            recent.push_back(std::abs(lam - prev_lambda));
            if (recent.size() > 5) recent.erase(recent.begin());
        }
        prev_lambda = lam;
        r.lambda = lam;
        streak = (drift < tol) ? streak + 1 : 0;
        if (streak >= 5) {
            r.converged = true;
            break;
        }
    }
    r.lambda_spread = recent.empty() ? 0 : *std::max_element(recent.begin(), recent.end());
    return r;
}

MonotoneCDF curve_to_cdf(const Curve& c) {
    std::vector<Dot> dots;
    dots.reserve(c.xs.size());
    for (size_t i = 0; i < c.xs.size(); ++i) {
        Dot d{rational_from_double(c.xs[i]), rational_from_double(c.ys[i])};
        if (!dots.empty() && d.x == dots.back().x) continue;
        dots.push_back(std::move(d));
    }
    return MonotoneCDF::from_dots(std::move(dots), /*exact=*/false);
}

// inverse with flat runs collapsed to their midpoints (keeps psi a CDF even
// for degenerate fixed points; homeomorphism margin is reported separately)
MonotoneCDF pseudo_inverse(const MonotoneCDF& F) {
    const auto& d = F.dots;
    std::vector<Dot> inv;
    size_t i = 0, n = d.size();
    while (i < n) {
        size_t j = i;
        while (j + 1 < n && d[j + 1].y == d[i].y) ++j;
        Rational rep = (i == 0) ? d[0].x : (j == n - 1 ? d[j].x : (d[i].x + d[j].x) / 2);
        inv.push_back({d[i].y, rep});
        i = j + 1;
    }
    return MonotoneCDF::from_dots(std::move(inv), F.exact);
}

ConjugacyReport residuals_for(const PLMap& f, const PLMap& model, const MonotoneCDF& psi,
                              double lambda) {
    ConjugacyReport rep;
    PLMap psi_pl = psi.to_plmap();
    rep.conjugacy_residual =
        to_double(sup_distance(compose(f, psi_pl), compose(psi_pl, model)));
    double worst = 0;
    for (int i = 0; i < model.segment_count(); ++i)
        worst = std::max(worst, std::abs(std::abs(to_double(model.segment_slope(i))) - lambda));
    rep.slope_residual = worst;
    rep.min_psi_slope = to_double(psi.min_slope());
    return rep;
}

CSModel assemble_from_iteration(const PLMap& f, const IterationResult& r, double tol) {
    if (!r.converged)
        throw ConvergenceError("constant_slope_model: pullback iteration did not converge",
                               r.last_drift);
    MonotoneCDF F = curve_to_cdf(r.F);
    CriticalData cd = critical_data(f);
    std::vector<Dot> mdots;
    for (auto& c : cd.points) mdots.push_back({F(c), F(eval(f, c))});
    for (size_t i = 0; i + 1 < mdots.size(); ++i)
        if (!(mdots[i].x < mdots[i + 1].x))
            throw ConvergenceError(
                "constant_slope_model: conjugacy collapsed a lap (map not transitive?)",
                r.last_drift);
    CSModel cs;
    cs.model = connect_the_dots(mdots);
    cs.psi = pseudo_inverse(F);
    cs.iterations = r.iterations;

    cs.lambda.method = EntropyMethod::Transfer;
    cs.lambda.depth = r.iterations;
    cs.lambda.converged = r.converged;
    cs.lambda.value = std::log(r.lambda);
    double w = r.log_width();
    cs.lambda.lower_bound = cs.lambda.value - w;
    cs.lambda.upper_bound = cs.lambda.value + w;

    ConjugacyReport rep = residuals_for(f, cs.model, cs.psi, r.lambda);
    cs.conjugacy_residual = rep.conjugacy_residual;
    cs.slope_residual = rep.slope_residual;
    cs.min_psi_slope = rep.min_psi_slope;
    cs.near_flat_warning = cs.min_psi_slope < 1e-6;
    (void)tol;
    return cs;
}

Curve cdf_to_curve(const MonotoneCDF& F) {
    Curve c;
    c.xs.reserve(F.dots.size());
    c.ys.reserve(F.dots.size());
    for (auto& d : F.dots) {
        c.xs.push_back(to_double(d.x));
        c.ys.push_back(to_double(d.y));
    }
    return c;
}

}  // namespace

CSModel constant_slope_model(const PLMap& f, double tol, int max_iter, int breakpoint_cap) {
    return constant_slope_model_from(f, MonotoneCDF::identity(), tol, max_iter,
                                     breakpoint_cap);
}

CSModel constant_slope_model_from(const PLMap& f, const MonotoneCDF& initial, double tol,
                                  int max_iter, int breakpoint_cap) {
    IterationResult r = pullback_iterate(f, cdf_to_curve(initial), tol, max_iter,
                                         static_cast<size_t>(breakpoint_cap));
    return assemble_from_iteration(f, r, tol);
}

EntropyEstimate entropy_transfer(const PLMap& f, int grid_size, int max_iter, double tol) {
    // identity seed; grid_size caps the stored breakpoints (a uniform seed
    // grid only feeds noise into the decimation cap)
    Curve F0;
    F0.xs = {0.0, 1.0};
    F0.ys = {0.0, 1.0};
    IterationResult r =
        pullback_iterate(f, std::move(F0), tol, max_iter, static_cast<size_t>(grid_size));
    EntropyEstimate est;
    est.method = EntropyMethod::Transfer;
    est.depth = r.iterations;
    est.converged = r.converged;
    est.value = std::log(r.lambda);
    double w = r.log_width();
    est.lower_bound = est.value - w;
    est.upper_bound = est.value + w;
    return est;
}

// ---------------------------------------------------------------------------
// exact Markov route

namespace {

// kernel direction of (lambda I - M); exact when lambda is the root,
// otherwise the solve of (lambda I - M) x = e_j, which is parallel to the
// Perron vector up to O(bracket width)
std::vector<Rational> perron_vector(const IntMatrix& M, const EntropyEstimate& est) {
    int n = static_cast<int>(M.size());
    Rational lam = est.lambda_exact() ? *est.lambda_exact()
                                      : (*est.lambda_lo + *est.lambda_hi) / 2;
    std::vector<std::vector<Rational>> A(n, std::vector<Rational>(n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) A[i][j] = (i == j ? lam - M[i][j] : Rational(-M[i][j]));

    if (est.lambda_exact()) {
        // exact kernel by Gauss-Jordan with partial pivoting
        std::vector<int> pivot_col;
        int row = 0;
        std::vector<int> where(n, -1);
        for (int col = 0; col < n && row < n; ++col) {
            int pr = -1;
            for (int i = row; i < n; ++i)
                if (A[i][col] != 0) {
                    pr = i;
                    break;
                }
            if (pr < 0) continue;
            std::swap(A[pr], A[row]);
            Rational p = A[row][col];
            for (int j = 0; j < n; ++j) A[row][j] /= p;
            for (int i = 0; i < n; ++i) {
                if (i == row || A[i][col] == 0) continue;
                Rational fct = A[i][col];
                for (int j = 0; j < n; ++j) A[i][j] -= fct * A[row][j];
            }
            where[col] = row;
            ++row;
        }
        // one free column must exist; set it to 1
        std::vector<Rational> x(n, 0);
        int free_col = -1;
        for (int col = 0; col < n; ++col)
            if (where[col] < 0) {
                free_col = col;
                break;
            }
        if (free_col < 0) throw Error("perron_vector: kernel not found");
        x[free_col] = 1;
        for (int col = 0; col < n; ++col)
            if (where[col] >= 0) x[col] = -A[where[col]][free_col];
        // normalize sign
        bool neg = false;
        for (auto& v : x)
            if (v < 0) neg = true;
        if (neg)
            for (auto& v : x) v = -v;
        return x;
    }

    for (int target = 0; target < n; ++target) {
        auto B = A;
        std::vector<Rational> x(n, 0);
        x[target] = 1;
        bool ok = true;
        std::vector<int> perm(n);
        for (int i = 0; i < n; ++i) perm[i] = i;
        for (int col = 0; col < n; ++col) {
            int pr = -1;
            for (int i = col; i < n; ++i)
                if (B[i][col] != 0) {
                    pr = i;
                    break;
                }
            if (pr < 0) {
                ok = false;
                break;
            }
            std::swap(B[pr], B[col]);
            std::swap(x[pr], x[col]);
            for (int i = col + 1; i < n; ++i) {
                if (B[i][col] == 0) continue;
                Rational fct = B[i][col] / B[col][col];
                for (int j = col; j < n; ++j) B[i][j] -= fct * B[col][j];
                x[i] -= fct * x[col];
            }
        }
        if (!ok) continue;
        for (int i = n - 1; i >= 0; --i) {
            for (int j = i + 1; j < n; ++j) x[i] -= B[i][j] * x[j];
            x[i] /= B[i][i];
        }
        bool pos = true, neg = true;
        for (auto& v : x) {
            if (v <= 0) pos = false;
            if (v >= 0) neg = false;
        }
        if (neg)
            for (auto& v : x) v = -v;
        if (pos || neg) return x;
    }
    throw Error("perron_vector: no positive solve direction found");
}

}  // namespace

CSModel markov_constant_slope(const PLMap& f, const MarkovData& md, const Rational& tol) {
    EntropyEstimate est = perron_root(md.matrix, tol);  // reducible -> PreconditionError
    int n = static_cast<int>(md.matrix.size());
    std::vector<Rational> ell = perron_vector(md.matrix, est);
    Rational total = 0;
    for (auto& v : ell) {
        if (v <= 0) throw Error("markov_constant_slope: non-positive eigenvector entry");
        total += v;
    }
    for (auto& v : ell) v /= total;

    // model partition by prefix sums; psi pairs model cut points with f's
    std::vector<Rational> q(n + 1, 0);
    for (int i = 0; i < n; ++i) q[i + 1] = q[i] + ell[i];
    q[n] = 1;
    auto cell_index = [&](const Rational& p) {
        for (size_t i = 0; i < md.partition.size(); ++i)
            if (md.partition[i] == p) return static_cast<int>(i);
        throw Error("markov_constant_slope: image endpoint not a partition point");
    };
    std::vector<Dot> mdots;
    for (int i = 0; i <= n; ++i) mdots.push_back({q[i], q[cell_index(eval(f, md.partition[i]))]});
    PLMap model = connect_the_dots(mdots);

    // refine psi on pullback partitions until the sup-change is < tol
    std::vector<Dot> pairs;  // (model coord, f coord)
    for (int i = 0; i <= n; ++i) pairs.push_back({q[i], md.partition[i]});
    std::sort(pairs.begin(), pairs.end(),
              [](const Dot& a, const Dot& b) { return a.x < b.x; });

    // per-cell branch data: f segment range, image, matching model branch
    struct CellBranch {
        int s0, s1;
        Rational flo, fhi;
        Rational ma, mhi, mlo;
        Rational mslope;
    };
    std::vector<CellBranch> cells(n);
    for (int i = 0; i < n; ++i) {
        CellBranch& cb = cells[i];
        cb.s0 = 0;
        while (f.dots[cb.s0 + 1].x <= md.partition[i]) ++cb.s0;
        cb.s1 = cb.s0;
        while (cb.s1 < f.segment_count() && f.dots[cb.s1].x < md.partition[i + 1]) ++cb.s1;
        Rational fa = eval(f, md.partition[i]), fb = eval(f, md.partition[i + 1]);
        cb.flo = std::min(fa, fb);
        cb.fhi = std::max(fa, fb);
        cb.ma = eval(model, q[i]);
        Rational mb = eval(model, q[i + 1]);
        cb.mlo = std::min(cb.ma, mb);
        cb.mhi = std::max(cb.ma, mb);
        cb.mslope = (mb - cb.ma) / (q[i + 1] - q[i]);
    }

    const size_t pair_cap = 1 << 13;
    for (int depth = 0; depth < 40; ++depth) {
        std::vector<Dot> next = pairs;
        for (int i = 0; i < n; ++i) {
            const CellBranch& cb = cells[i];
            for (auto& pr : pairs) {
                if (pr.y <= cb.flo || pr.y >= cb.fhi) continue;
                // branch-restricted inverse on the f side (exact, per segment)
                Rational t;
                bool found = false;
                for (int s = cb.s0; s < cb.s1 && !found; ++s) {
                    const Dot& p0 = f.dots[s];
                    const Dot& p1 = f.dots[s + 1];
                    Rational lo = std::min(p0.y, p1.y), hi = std::max(p0.y, p1.y);
                    if (pr.y < lo || pr.y > hi) continue;
                    t = p0.x + (pr.y - p0.y) * (p1.x - p0.x) / (p1.y - p0.y);
                    if (t >= md.partition[i] && t <= md.partition[i + 1]) found = true;
                }
                if (!found) continue;
                Rational s = pr.x;
                if (s < cb.mlo) s = cb.mlo;
                if (s > cb.mhi) s = cb.mhi;
                Rational u = q[i] + (s - cb.ma) / cb.mslope;
                if (u < q[i]) u = q[i];
                if (u > q[i + 1]) u = q[i + 1];
                next.push_back({u, t});
            }
        }
        std::sort(next.begin(), next.end(),
                  [](const Dot& a, const Dot& b) { return a.x < b.x; });
        next.erase(std::unique(next.begin(), next.end(),
                               [](const Dot& a, const Dot& b) { return a.x == b.x; }),
                   next.end());
        // sup-change against the previous level
        Rational change = 0;
        for (auto& d : next) {
            Rational v = eval_at(pairs, d.x) - d.y;
            if (v < 0) v = -v;
            if (v > change) change = v;
        }
        // decimate to the cap (selection geometry in doubles is plenty here)
        if (next.size() > pair_cap) {
            std::vector<double> xs, ys;
            xs.reserve(next.size());
            ys.reserve(next.size());
            for (auto& d : next) {
                xs.push_back(to_double(d.x));
                ys.push_back(to_double(d.y));
            }
            std::vector<char> keep = dp_mask(xs, ys, to_double(tol) / 10, pair_cap);
            std::vector<Dot> dec;
            for (size_t ii = 0; ii < next.size(); ++ii)
                if (keep[ii]) dec.push_back(next[ii]);
            next = std::move(dec);
        }
        pairs = std::move(next);
        if (change < tol && depth > 0) break;
    }

    CSModel cs;
    cs.model = model;
    cs.psi = MonotoneCDF::from_dots(pairs, /*exact=*/true);
    cs.lambda = est;
    cs.iterations = 0;
    ConjugacyReport rep = residuals_for(f, cs.model, cs.psi, est.lambda());
    cs.conjugacy_residual = rep.conjugacy_residual;
    cs.slope_residual = rep.slope_residual;
    cs.min_psi_slope = rep.min_psi_slope;
    cs.near_flat_warning = cs.min_psi_slope < 1e-6;
    return cs;
}

ConjugacyReport verify_conjugacy(const PLMap& f, const CSModel& cs) {
    return residuals_for(f, cs.model, cs.psi, cs.lambda.lambda());
}

std::vector<std::pair<Rational, Rational>> flatness_diagnostics(
    const MonotoneCDF& F, const std::vector<Rational>& eps_list) {
    std::vector<std::pair<Rational, Rational>> out;
    for (auto& eps : eps_list) {
        if (eps <= 0 || eps > 1) throw DomainError("flatness_diagnostics: eps outside (0,1]");
        // min of F(x+eps)-F(x); the objective is piecewise linear in x with
        // breaks where x or x+eps crosses a dot
        std::vector<Rational> cands{Rational(0), 1 - eps};
        for (auto& d : F.dots) {
            if (d.x >= 0 && d.x <= 1 - eps) cands.push_back(d.x);
            Rational shifted = d.x - eps;
            if (shifted >= 0 && shifted <= 1 - eps) cands.push_back(shifted);
        }
        Rational best = 2;
        for (auto& x : cands) {
            Rational v = F(x + eps) - F(x);
            if (v < best) best = v;
        }
        out.push_back({eps, best});
    }
    return out;
}

static std::string double_str(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string csmodel_to_json(const CSModel& cs) {
    nlohmann::json j;
    auto dots_json = [](const std::vector<Dot>& dots) {
        nlohmann::json a = nlohmann::json::array();
        for (auto& d : dots) a.push_back({rational_to_string(d.x), rational_to_string(d.y)});
        return a;
    };
    j["model_dots"] = dots_json(cs.model.dots);
    j["psi_dots"] = dots_json(cs.psi.dots);
    j["lambda"] = double_str(std::exp(cs.lambda.value));
    j["entropy"] = double_str(cs.lambda.value);
    j["entropy_lower"] = double_str(cs.lambda.lower_bound);
    j["entropy_upper"] = double_str(cs.lambda.upper_bound);
    if (auto e = cs.lambda.lambda_exact()) j["lambda_exact"] = rational_to_string(*e);
    j["method"] = entropy_method_name(cs.lambda.method);
    j["conjugacy_residual"] = double_str(cs.conjugacy_residual);
    j["slope_residual"] = double_str(cs.slope_residual);
    j["min_psi_slope"] = double_str(cs.min_psi_slope);
    j["near_flat_warning"] = cs.near_flat_warning;
    j["transitivity_verified"] = cs.transitivity_verified;
    j["iterations"] = cs.iterations;
    j["psi_exact"] = cs.psi.exact;
    return j.dump(2);
}

}  // namespace plim
