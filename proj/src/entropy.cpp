#include "plim/entropy.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "plim/error.hpp"
#include "plim/graph.hpp"

namespace plim {

const char* entropy_method_name(EntropyMethod m) {
    switch (m) {
        case EntropyMethod::LapCount: return "lap";
        case EntropyMethod::Transfer: return "transfer";
        case EntropyMethod::MarkovExact: return "markov";
        case EntropyMethod::Horseshoe: return "horseshoe";
    }
    return "?";
}

double EntropyEstimate::lambda() const {
    if (auto e = lambda_exact()) return to_double(*e);
    if (lambda_lo && lambda_hi) return to_double((*lambda_lo + *lambda_hi) / 2);
    return std::exp(value);
}

LapCounts lap_counts(const PLMap& f, int n_max, long long budget) {
    if (n_max < 1) throw DomainError("lap_counts: n_max must be >= 1");
    CriticalData cd = critical_data(f);
    std::vector<Rational> level(cd.points.begin() + 1, cd.points.end() - 1);
    std::set<Rational> seen(level.begin(), level.end());
    LapCounts lc;
    lc.counts.push_back(static_cast<long long>(seen.size()) + 1);
    for (int n = 2; n <= n_max; ++n) {
        std::vector<Rational> pre = preimage_set(f, level);
        level.clear();
        for (auto& x : pre) {
            if (x <= 0 || x >= 1) continue;
            if (seen.insert(x).second) level.push_back(x);
        }
        if (static_cast<long long>(seen.size()) > budget) {
            lc.complete = false;
            return lc;
        }
        lc.counts.push_back(static_cast<long long>(seen.size()) + 1);
    }
    return lc;
}

std::optional<MarkovData> markov_detect(const PLMap& f, int max_steps) {
    CriticalData cd = critical_data(f);
    std::set<Rational> orbit(cd.points.begin(), cd.points.end());
    std::vector<Rational> frontier(orbit.begin(), orbit.end());
    bool closed = false;
    for (int step = 0; step < max_steps; ++step) {
        std::vector<Rational> next;
        for (auto& p : frontier) {
            Rational q = eval(f, p);
            if (orbit.insert(q).second) next.push_back(q);
        }
        frontier = std::move(next);
        if (frontier.empty()) {
            closed = true;
            break;
        }
    }
    if (!closed) return std::nullopt;

    MarkovData md;
    md.partition.assign(orbit.begin(), orbit.end());
    int n = static_cast<int>(md.partition.size()) - 1;
    md.matrix.assign(n, std::vector<long long>(n, 0));
    for (int i = 0; i < n; ++i) {
        Rational ya = eval(f, md.partition[i]);
        Rational yb = eval(f, md.partition[i + 1]);
        Rational lo = std::min(ya, yb), hi = std::max(ya, yb);
        for (int j = 0; j < n; ++j)
            if (lo <= md.partition[j] && md.partition[j + 1] <= hi) md.matrix[i][j] = 1;
    }
    return md;
}

// Sign of x relative to the Perron root of an irreducible nonnegative M,
// decided by the leading principal minors of xI - M (all positive iff
// x > rho; first n-1 positive with zero determinant iff x = rho).
enum class PerronSide { Below, Equal, Above };

static PerronSide perron_side(const IntMatrix& M, const Rational& x) {
    int n = static_cast<int>(M.size());
    std::vector<std::vector<Rational>> a(n, std::vector<Rational>(n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) a[i][j] = (i == j ? x - M[i][j] : Rational(-M[i][j]));
    for (int k = 0; k < n; ++k) {
        if (a[k][k] < 0) return PerronSide::Below;
        if (a[k][k] == 0) return k == n - 1 ? PerronSide::Equal : PerronSide::Below;
        for (int i = k + 1; i < n; ++i) {
            if (a[i][k] == 0) continue;
            Rational factor = a[i][k] / a[k][k];
            for (int j = k; j < n; ++j) a[i][j] -= factor * a[k][j];
        }
    }
    return PerronSide::Above;
}

static bool matrix_irreducible(const IntMatrix& M) {
    int n = static_cast<int>(M.size());
    std::vector<std::vector<int>> adj(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (M[i][j] > 0) adj[i].push_back(j);
    return strongly_connected_components(adj).size() == 1;
}

EntropyEstimate perron_root(const IntMatrix& M, const Rational& tol) {
    EntropyEstimate est;
    est.method = EntropyMethod::MarkovExact;
    int n = static_cast<int>(M.size());
    bool all_zero = true;
    long long max_row = 0;
    for (auto& row : M) {
        long long s = 0;
        for (auto v : row) {
            if (v < 0) throw DomainError("perron_root: negative entry");
            if (v > 0) all_zero = false;
            s += v;
        }
        max_row = std::max(max_row, s);
    }
    if (n == 0 || all_zero) {
        est.lambda_lo = est.lambda_hi = Rational(0);
        return est;  // entropy 0 by convention
    }
    if (!matrix_irreducible(M))
        throw PreconditionError("perron_root: matrix reducible; restrict to an SCC first");

    Rational lo = 0, hi = Rational(max_row) + 1;
    while (hi - lo > tol) {
        Rational mid = (lo + hi) / 2;
        PerronSide s = perron_side(M, mid);
        if (s == PerronSide::Equal) {
            lo = hi = mid;
            break;
        }
        if (s == PerronSide::Above)
            hi = mid;
        else
            lo = mid;
    }
    est.lambda_lo = lo;
    est.lambda_hi = hi;
    auto safe_log = [](const Rational& r) {
        double d = to_double(r);
        return d <= 1.0 ? 0.0 : std::log(d);
    };
    est.lower_bound = safe_log(lo);
    est.upper_bound = safe_log(hi);
    est.value = (lo == hi) ? est.lower_bound : safe_log((lo + hi) / 2);
    return est;
}

EntropyEstimate entropy_markov(const MarkovData& md, const Rational& tol) {
    int n = static_cast<int>(md.matrix.size());
    std::vector<std::vector<int>> adj(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (md.matrix[i][j] > 0) adj[i].push_back(j);
    auto comps = strongly_connected_components(adj);
    EntropyEstimate best;
    best.method = EntropyMethod::MarkovExact;
    best.lambda_lo = best.lambda_hi = Rational(0);
    for (auto& c : comps) {
        if (c.size() == 1 && md.matrix[c[0]][c[0]] == 0) continue;
        IntMatrix sub(c.size(), std::vector<long long>(c.size()));
        for (size_t i = 0; i < c.size(); ++i)
            for (size_t j = 0; j < c.size(); ++j) sub[i][j] = md.matrix[c[i]][c[j]];
        EntropyEstimate e = perron_root(sub, tol);
        if (*e.lambda_lo > *best.lambda_lo) best = e;
    }
    return best;
}

EntropyEstimate entropy_lap(const PLMap& f, int n, long long budget) {
    LapCounts lc = lap_counts(f, n, budget);
    int depth = static_cast<int>(lc.counts.size());
    if (depth == 0) throw BudgetError("entropy_lap: no complete level", 0, 0);
    EntropyEstimate est;
    est.method = EntropyMethod::LapCount;
    est.depth = depth;
    est.converged = lc.complete;
    est.upper_bound = std::log(static_cast<double>(lc.counts[depth - 1])) / depth;

    // trailing-window least squares slope of log lap(f^k)
    int k0 = std::max(1, depth - depth / 2);
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int m = 0;
    for (int k = k0; k <= depth; ++k) {
        double x = k, y = std::log(static_cast<double>(lc.counts[k - 1]));
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
        ++m;
    }
    double value = (m >= 2 && m * sxx - sx * sx != 0)
                       ? (m * sxy - sx * sy) / (m * sxx - sx * sx)
                       : est.upper_bound;

    // horseshoe lower bound at small powers
    double lower = 0;
    for (int power = 1; power <= 2 && power <= n; ++power) {
        PLMap g;
        try {
            g = iterate(f, power, 200'000);
        } catch (const BudgetError&) {
            break;
        }
        int max_k = std::min<int>(9, static_cast<int>(laps(g).size()));
        for (int k = max_k; k >= 2; --k) {
            if (std::log(static_cast<double>(k)) / power <= lower) break;
            if (horseshoe_search(f, power, k)) {
                lower = std::max(lower, std::log(static_cast<double>(k)) / power);
                break;
            }
        }
    }
    est.lower_bound = lower;
    est.value = std::clamp(value, est.lower_bound, est.upper_bound);
    return est;
}

EntropyEstimate entropy_auto(const PLMap& f, int lap_depth, double tol) {
    EntropyEstimate main;
    if (auto md = markov_detect(f)) {
        Rational rtol = rational_from_double(std::max(tol, 1e-12));
        main = entropy_markov(*md, rtol);
    } else {
        main = entropy_transfer(f, 1 << 14, 3000, tol);
    }
    EntropyEstimate lap = entropy_lap(f, lap_depth);
    main.upper_bound = std::min(main.upper_bound, lap.upper_bound);
    main.lower_bound = std::max(main.lower_bound, lap.lower_bound);
    return main;
}

std::optional<std::vector<RationalInterval>> horseshoe_search(const PLMap& f, int power,
                                                              int k) {
    if (power < 1 || k < 2) throw DomainError("horseshoe_search: need power >= 1, k >= 2");
    PLMap g;
    try {
        g = iterate(f, power, 500'000);
    } catch (const BudgetError&) {
        return std::nullopt;
    }
    std::vector<RationalInterval> lap_list = laps(g);
    if (static_cast<int>(lap_list.size()) < k) return std::nullopt;

    std::set<Rational> cand;
    for (auto& d : g.dots) {
        cand.insert(d.x);
        cand.insert(d.y);
    }
    std::vector<Rational> P(cand.begin(), cand.end());

    // per-lap segment ranges and image hulls, computed once
    struct Branch {
        int i0, i1;       // segment index range [i0, i1)
        Rational m, M;    // image endpoints
        Rational lo, hi;  // lap endpoints
    };
    std::vector<Branch> branches;
    {
        int i = 0;
        for (auto& L : lap_list) {
            Branch b;
            b.lo = L.lo;
            b.hi = L.hi;
            b.i0 = i;
            while (i < g.segment_count() && g.dots[i + 1].x <= L.hi) ++i;
            b.i1 = i;
            Rational ya = eval(g, L.lo), yb = eval(g, L.hi);
            b.m = std::min(ya, yb);
            b.M = std::max(ya, yb);
            branches.push_back(b);
        }
    }
    auto branch_preimage = [&](const Branch& br, const Rational& v) {
        for (int i = br.i0; i < br.i1; ++i) {
            const Dot& a = g.dots[i];
            const Dot& b = g.dots[i + 1];
            Rational lo = std::min(a.y, b.y), hi = std::max(a.y, b.y);
            if (v < lo || v > hi) continue;
            return a.x + (v - a.y) * (b.x - a.x) / (b.y - a.y);
        }
        throw Error("horseshoe_search: branch preimage missing");
    };

    for (size_t ui = 0; ui < P.size(); ++ui) {
        for (size_t vi = ui + 1; vi < P.size(); ++vi) {
            const Rational& u = P[ui];
            const Rational& v = P[vi];
            std::vector<RationalInterval> found;
            for (auto& br : branches) {
                if (!(br.m <= u && v <= br.M)) continue;
                Rational a = branch_preimage(br, u);
                Rational b = branch_preimage(br, v);
                if (a > b) std::swap(a, b);
                if (a >= u && b <= v) found.push_back(RationalInterval::closed(a, b));
                if (static_cast<int>(found.size()) == k) break;
            }
            if (static_cast<int>(found.size()) < k) continue;
            // exact certificate: every image covers the union's hull
            RationalInterval hull = found[0];
            for (auto& J : found) hull = hull.hull(J);
            bool ok = true;
            for (auto& J : found) {
                RationalInterval img = image_interval(g, J);
                if (!hull.subset_of(img)) {
                    ok = false;
                    break;
                }
            }
            for (size_t i = 0; ok && i + 1 < found.size(); ++i)
                if (!found[i].interior_disjoint_from(found[i + 1])) ok = false;
            if (ok) return found;
        }
    }
    return std::nullopt;
}

}  // namespace plim
