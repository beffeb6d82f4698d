#include "plim/plmap.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace plim {

Rational PLMap::segment_slope(int i) const {
    return (dots[i + 1].y - dots[i].y) / (dots[i + 1].x - dots[i].x);
}

static bool collinear(const Dot& a, const Dot& b, const Dot& c) {
    return (b.y - a.y) * (c.x - b.x) == (c.y - b.y) * (b.x - a.x);
}

static PLMap canonicalize(std::vector<Dot> dots, Rational scale) {
    std::vector<Dot> out;
    out.reserve(dots.size());
    for (auto& d : dots) {
        while (out.size() >= 2 && collinear(out[out.size() - 2], out.back(), d))
            out.pop_back();
        out.push_back(d);
    }
    PLMap f;
    f.dots = std::move(out);
    f.domain_scale = std::move(scale);
    return f;
}

PLMap connect_the_dots(const std::vector<Dot>& dots) {
    if (dots.size() < 2) throw DomainError("need at least two dots");
    for (size_t i = 0; i + 1 < dots.size(); ++i) {
        if (!(dots[i].x < dots[i + 1].x)) {
            std::ostringstream os;
            os << "x not strictly increasing at dot " << i + 1;
            throw DomainError(os.str());
        }
    }
    if (dots.front().x != 0 || dots.back().x != 1)
        throw DomainError("x must span [0,1] (use the rescaling overload otherwise)");
    for (size_t i = 0; i < dots.size(); ++i) {
        if (dots[i].y < 0 || dots[i].y > 1) {
            std::ostringstream os;
            os << "y out of range at dot " << i;
            throw DomainError(os.str());
        }
    }
    return canonicalize(dots, 1);
}

PLMap connect_the_dots(const std::vector<Dot>& dots, const Rational& domain_lo,
                       const Rational& domain_hi) {
    if (domain_hi <= domain_lo) throw DomainError("bad domain");
    Rational w = domain_hi - domain_lo;
    std::vector<Dot> scaled;
    scaled.reserve(dots.size());
    for (auto& d : dots) scaled.push_back({(d.x - domain_lo) / w, (d.y - domain_lo) / w});
    PLMap f = connect_the_dots(scaled);
    f.domain_scale = w;
    return f;
}

// index of the segment containing x (ties resolved to the left segment's end)
static int segment_index(const std::vector<Dot>& dots, const Rational& x) {
    int lo = 0, hi = static_cast<int>(dots.size()) - 2;
    while (lo < hi) {
        int mid = (lo + hi) / 2;
        if (dots[mid + 1].x < x)
            lo = mid + 1;
        else
            hi = mid;
    }
    return lo;
}

Rational eval_at(const std::vector<Dot>& dots, const Rational& x) {
    if (x < 0 || x > 1) throw DomainError("eval: x outside [0,1]");
    int i = segment_index(dots, x);
    const Dot& a = dots[i];
    const Dot& b = dots[i + 1];
    return a.y + (b.y - a.y) * (x - a.x) / (b.x - a.x);
}

Rational eval(const PLMap& f, const Rational& x) { return eval_at(f.dots, x); }

CriticalData critical_data(const PLMap& f) {
    CriticalData cd;
    cd.points.push_back(0);
    int n = f.segment_count();
    Rational prev = f.segment_slope(0);
    if (prev == 0) throw DomainError("not piecewise strictly monotone (zero-slope lap)");
    for (int i = 1; i < n; ++i) {
        Rational s = f.segment_slope(i);
        if (s == 0) throw DomainError("not piecewise strictly monotone (zero-slope lap)");
        if ((prev > 0) != (s > 0)) cd.points.push_back(f.dots[i].x);
        prev = s;
    }
    cd.points.push_back(1);
    cd.modality = static_cast<int>(cd.points.size()) - 2;
    return cd;
}

std::vector<RationalInterval> laps(const PLMap& f) {
    CriticalData cd = critical_data(f);
    std::vector<RationalInterval> out;
    for (size_t i = 0; i + 1 < cd.points.size(); ++i)
        out.push_back(RationalInterval::closed(cd.points[i], cd.points[i + 1]));
    return out;
}

PLMap compose(const PLMap& f, const PLMap& g) {
    std::set<Rational> xs;
    for (auto& d : g.dots) xs.insert(d.x);
    // g-preimages of breakpoints of f
    for (int i = 0; i < g.segment_count(); ++i) {
        const Dot& a = g.dots[i];
        const Dot& b = g.dots[i + 1];
        if (a.y == b.y) continue;
        Rational lo = std::min(a.y, b.y), hi = std::max(a.y, b.y);
        for (auto& fd : f.dots) {
            if (fd.x >= lo && fd.x <= hi)
                xs.insert(a.x + (fd.x - a.y) * (b.x - a.x) / (b.y - a.y));
        }
    }
    std::vector<Dot> dots;
    dots.reserve(xs.size());
    for (auto& x : xs) dots.push_back({x, eval(f, eval(g, x))});
    return canonicalize(std::move(dots), 1);
}

PLMap iterate(const PLMap& f, int n, long long dot_budget) {
    if (n < 1) throw DomainError("iterate: n must be >= 1");
    PLMap acc = f;
    for (int k = 2; k <= n; ++k) {
        acc = compose(f, acc);
        if (static_cast<long long>(acc.dots.size()) > dot_budget) {
            std::ostringstream os;
            os << "iterate: dot budget exceeded at f^" << k << " (" << acc.dots.size()
               << " dots)";
            throw BudgetError(os.str(), static_cast<long long>(acc.dots.size()), k);
        }
    }
    return acc;
}

RationalInterval image_interval(const PLMap& f, const RationalInterval& I) {
    if (I.empty_set()) return RationalInterval::empty();
    if (I.degenerate()) return RationalInterval::point(eval(f, I.lo));

    // restricted breakpoints: both ends of I plus f-dots strictly inside
    std::vector<Rational> pts{I.lo};
    for (auto& d : f.dots)
        if (d.x > I.lo && d.x < I.hi) pts.push_back(d.x);
    pts.push_back(I.hi);
    std::vector<Rational> vals;
    vals.reserve(pts.size());
    for (auto& p : pts) vals.push_back(eval(f, p));

    size_t k = pts.size() - 1;
    Rational mx = vals[0], mn = vals[0];
    for (auto& v : vals) {
        if (v > mx) mx = v;
        if (v < mn) mn = v;
    }
    auto attained = [&](const Rational& m) {
        for (size_t i = 1; i < k; ++i)
            if (vals[i] == m) return true;
        if (vals[0] == m && !I.lo_open) return true;
        if (vals[k] == m && !I.hi_open) return true;
        // open end adjacent to a flat segment at level m
        if (vals[0] == m && vals[1] == m) return true;
        if (vals[k] == m && vals[k - 1] == m) return true;
        return false;
    };
    bool mx_at = attained(mx), mn_at = attained(mn);
    if (mn == mx) return RationalInterval::point(mn);
    return {mn, mx, !mn_at, !mx_at};
}

std::vector<Rational> preimage_point(const PLMap& f, const Rational& y) {
    if (y < 0 || y > 1) throw DomainError("preimage_point: y outside [0,1]");
    std::vector<Rational> out;
    for (int i = 0; i < f.segment_count(); ++i) {
        const Dot& a = f.dots[i];
        const Dot& b = f.dots[i + 1];
        if (a.y == b.y) {
            if (y == a.y) throw DomainError("preimage_point: level set contains a segment");
            continue;
        }
        Rational lo = std::min(a.y, b.y), hi = std::max(a.y, b.y);
        if (y < lo || y > hi) continue;
        out.push_back(a.x + (y - a.y) * (b.x - a.x) / (b.y - a.y));
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

std::vector<Rational> preimage_set(const PLMap& f, const std::vector<Rational>& ys) {
    std::vector<Rational> out;
    for (int i = 0; i < f.segment_count(); ++i) {
        const Dot& a = f.dots[i];
        const Dot& b = f.dots[i + 1];
        if (a.y == b.y) continue;
        Rational lo = std::min(a.y, b.y), hi = std::max(a.y, b.y);
        Rational m = (b.x - a.x) / (b.y - a.y);
        for (auto& y : ys) {
            if (y < lo || y > hi) continue;
            out.push_back(a.x + (y - a.y) * m);
        }
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

PreimageCounts preimage_counts(const PLMap& f, const Rational& y, int n_max,
                               long long node_budget) {
    if (y < 0 || y > 1) throw DomainError("preimage_counts: y outside [0,1]");
    PreimageCounts pc;
    std::vector<Rational> level{y};
    long long total = 1;
    pc.counts.push_back(1);
    for (int k = 1; k <= n_max; ++k) {
        level = preimage_set(f, level);
        total += static_cast<long long>(level.size());
        if (total > node_budget) {
            pc.complete = false;
            return pc;
        }
        pc.counts.push_back(static_cast<long long>(level.size()));
    }
    return pc;
}

Rational sup_distance(const PLMap& f, const PLMap& g) {
    Rational best = 0;
    auto consider = [&](const Rational& x) {
        Rational d = eval(f, x) - eval(g, x);
        if (d < 0) d = -d;
        if (d > best) best = d;
    };
    for (auto& d : f.dots) consider(d.x);
    for (auto& d : g.dots) consider(d.x);
    return best;
}

std::vector<Rational> fixed_points(const PLMap& f) {
    std::vector<Rational> out;
    for (int i = 0; i < f.segment_count(); ++i) {
        const Dot& a = f.dots[i];
        const Dot& b = f.dots[i + 1];
        Rational m = f.segment_slope(i);
        if (m == 1) {
            if (a.y == a.x)
                throw DiagonalSegmentError(
                    "segment of fixed points on the diagonal",
                    RationalInterval::closed(a.x, b.x));
            continue;
        }
        Rational x = (a.y - m * a.x) / (1 - m);
        if (x >= a.x && x <= b.x) out.push_back(x);
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

std::optional<Rational> is_constant_slope(const PLMap& f, const Rational& tol) {
    Rational lambda = abs(f.segment_slope(0));
    for (int i = 1; i < f.segment_count(); ++i) {
        Rational s = abs(f.segment_slope(i));
        Rational d = s - lambda;
        if (d < 0) d = -d;
        if (d > tol) return std::nullopt;
    }
    return lambda;
}

PLMap constant_slope_from_critical_values(const Rational& lambda,
                                          const std::vector<Rational>& values) {
    if (values.size() < 2) throw DomainError("need at least two critical values");
    if (lambda <= 0) throw DomainError("lambda must be positive");
    Rational total = 0;
    for (size_t i = 0; i + 1 < values.size(); ++i) {
        Rational d = values[i + 1] - values[i];
        if (d == 0) {
            std::ostringstream os;
            os << "alternation violated at index " << i << " (zero lap)";
            throw DomainError(os.str());
        }
        if (i + 2 < values.size()) {
            Rational next = values[i + 2] - values[i + 1];
            if ((d > 0) == (next > 0)) {
                std::ostringstream os;
                os << "alternation violated at index " << i + 1;
                throw DomainError(os.str());
            }
        }
        total += (d < 0 ? -d : d);
    }
    if (total != lambda) {
        std::ostringstream os;
        os << "sum of |dv| (" << rational_to_string(total) << ") != lambda ("
           << rational_to_string(lambda) << ")";
        throw DomainError(os.str());
    }
    std::vector<Dot> dots;
    Rational c = 0;
    dots.push_back({c, values[0]});
    for (size_t i = 0; i + 1 < values.size(); ++i) {
        Rational d = values[i + 1] - values[i];
        c += (d < 0 ? -d : d) / lambda;
        dots.push_back({c, values[i + 1]});
    }
    // c ends at exactly 1 by the sum identity, so this validates cleanly
    return connect_the_dots(dots);
}

}  // namespace plim
