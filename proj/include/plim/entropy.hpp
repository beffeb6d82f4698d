#pragma once

#include <optional>
#include <vector>

#include "plim/plmap.hpp"

namespace plim {

enum class EntropyMethod { LapCount, Transfer, MarkovExact, Horseshoe };

const char* entropy_method_name(EntropyMethod m);

// Entropy in natural-log units with an honest bracket. For MarkovExact the
// bracket comes from certified rational bisection and lambda_lo/lambda_hi
// are set (collapsing to an exact value when the bisection lands on a
// root). lambda() prefers the exact value so that ratio diagnostics like
// count/lambda^n stay exact for integer slopes.
struct EntropyEstimate {
    double value = 0;
    double lower_bound = 0;
    double upper_bound = 0;
    EntropyMethod method = EntropyMethod::LapCount;
    int depth = 0;
    bool converged = true;
    std::optional<Rational> lambda_lo, lambda_hi;

    std::optional<Rational> lambda_exact() const {
        if (lambda_lo && lambda_hi && *lambda_lo == *lambda_hi) return *lambda_lo;
        return std::nullopt;
    }
    double lambda() const;
};

using IntMatrix = std::vector<std::vector<long long>>;

// Markov partition induced by a finite forward orbit of the critical set:
// matrix[i][j] = 1 iff the image of cell i covers cell j.
struct MarkovData {
    std::vector<Rational> partition;  // cut points, includes 0 and 1
    IntMatrix matrix;
};

struct LapCounts {
    std::vector<long long> counts;  // lap(f^k), k = 1..n
    bool complete = true;
};

// lap(f^k) for k <= n_max without materializing f^k: the interior critical
// points of f^k are the first k-1 exact preimage levels of Crit(f).
// Stops at the point budget and returns the finished prefix.
LapCounts lap_counts(const PLMap& f, int n_max, long long budget = 4'000'000);

// Misiurewicz-Szlenk route: upper bound (1/n) log lap(f^n) (valid by
// submultiplicativity), value from a trailing-window slope fit, lower bound
// from the largest horseshoe found at small powers.
EntropyEstimate entropy_lap(const PLMap& f, int n, long long budget = 4'000'000);

// Exact orbit-closure detection of a Markov partition.
std::optional<MarkovData> markov_detect(const PLMap& f, int max_steps = 100);

// Certified Perron root of an irreducible nonnegative matrix by exact
// rational bisection on the leading-principal-minor test of xI - M.
// Zero matrix -> entropy 0. Reducible input -> PreconditionError.
EntropyEstimate perron_root(const IntMatrix& M, const Rational& tol);

// Perron route applied per strongly connected component (the SCC filtering
// perron_root's precondition asks for); returns the dominant component's
// estimate.
EntropyEstimate entropy_markov(const MarkovData& md, const Rational& tol);

// Power iteration of the exact pullback operator (shared engine with the
// constant-slope solver). grid_size seeds the initial CDF and caps the
// stored breakpoints.
EntropyEstimate entropy_transfer(const PLMap& f, int grid_size = 1 << 14,
                                 int max_iter = 3000, double tol = 1e-12);

// markov if the partition closes, transfer otherwise; the lap bracket at
// `lap_depth` is intersected in.
EntropyEstimate entropy_auto(const PLMap& f, int lap_depth = 12, double tol = 1e-10);

// k closed intervals with pairwise disjoint interiors, each mapped by
// f^power onto an interval containing their union (verified exactly).
// Certifies h(f) >= log(k)/power.
std::optional<std::vector<RationalInterval>> horseshoe_search(const PLMap& f, int power,
                                                              int k);

}  // namespace plim
