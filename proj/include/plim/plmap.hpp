#pragma once

#include <optional>
#include <vector>

#include "plim/error.hpp"
#include "plim/interval.hpp"
#include "plim/rational.hpp"

namespace plim {

struct Dot {
    Rational x, y;
    bool operator==(const Dot& o) const { return x == o.x && y == o.y; }
};

// Continuous piecewise-linear self-map of [0,1] in canonical form:
// strictly increasing x with x0 = 0, xN = 1, y in [0,1], no three
// consecutive dots collinear. All arithmetic on it is exact.
struct PLMap {
    std::vector<Dot> dots;
    // affine rescale factor used at construction (display only)
    Rational domain_scale = 1;

    int segment_count() const { return static_cast<int>(dots.size()) - 1; }
    Rational segment_slope(int i) const;
    bool operator==(const PLMap& o) const { return dots == o.dots; }
};

struct CriticalData {
    std::vector<Rational> points;  // includes 0 and 1, sorted
    int modality = 0;              // = points.size() - 2
};

// Builds the canonical map through the given dots. Rejects non-increasing
// x, x not spanning the domain, or y outside it. When lo/hi are given, all
// coordinates are rescaled from [lo,hi] to [0,1] and the scale is kept.
PLMap connect_the_dots(const std::vector<Dot>& dots);
PLMap connect_the_dots(const std::vector<Dot>& dots, const Rational& domain_lo,
                       const Rational& domain_hi);

Rational eval(const PLMap& f, const Rational& x);

// interpolation through an arbitrary dot list (shared by PLMap and the CDFs)
Rational eval_at(const std::vector<Dot>& dots, const Rational& x);

// Critical set {0,1} plus interior direction changes. Throws on a
// zero-slope segment (not piecewise strictly monotone).
CriticalData critical_data(const PLMap& f);

// Maximal intervals of monotonicity, as closed intervals between
// consecutive critical points.
std::vector<RationalInterval> laps(const PLMap& f);

PLMap compose(const PLMap& f, const PLMap& g);  // f after g

// f^n with a cap on the dot count; BudgetError carries the count reached
// and the iterate attained.
PLMap iterate(const PLMap& f, int n, long long dot_budget = 2'000'000);

// Exact image with open/closed flags: an image endpoint is open iff the
// extreme value is approached only at an open end of I and attained nowhere
// else in I.
RationalInterval image_interval(const PLMap& f, const RationalInterval& I);

// All exact solutions of f(x) = y, deduplicated at shared segment ends.
std::vector<Rational> preimage_point(const PLMap& f, const Rational& y);

struct PreimageCounts {
    std::vector<long long> counts;  // #f^{-k}(y), k = 0..n
    bool complete = true;           // false when the node budget cut it short
};

PreimageCounts preimage_counts(const PLMap& f, const Rational& y, int n_max,
                               long long node_budget = 4'000'000);

// Exact preimage set at one level (used by the counting loop and by tests).
std::vector<Rational> preimage_set(const PLMap& f, const std::vector<Rational>& ys);

// Exact C0 distance; the max of a piecewise-linear |f-g| sits at a
// breakpoint of either map.
Rational sup_distance(const PLMap& f, const PLMap& g);

// f(x) = x per segment. A segment lying on the diagonal has a whole
// interval of fixed points and is rejected.
struct DiagonalSegmentError : Error {
    RationalInterval segment;
    DiagonalSegmentError(const std::string& msg, RationalInterval seg)
        : Error(msg), segment(std::move(seg)) {}
};
std::vector<Rational> fixed_points(const PLMap& f);

// The common |slope| when all segments agree within tol (tol = 0 demands
// exact equality); otherwise nullopt.
std::optional<Rational> is_constant_slope(const PLMap& f, const Rational& tol = 0);

// The unique constant-slope map with the given critical values:
// c_{i+1} - c_i = |v_{i+1} - v_i| / lambda. Requires strict alternation at
// interior indices and sum |dv| = lambda exactly.
PLMap constant_slope_from_critical_values(const Rational& lambda,
                                          const std::vector<Rational>& values);

}  // namespace plim
