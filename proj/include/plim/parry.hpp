#pragma once

#include <utility>
#include <vector>

#include "plim/cdf.hpp"
#include "plim/entropy.hpp"

namespace plim {

// Constant-slope model of f together with the conjugating homeomorphism.
// psi maps MODEL coordinates to f coordinates, so f( psi(x) ) =
// psi( model(x) ); the iterated CDF F equals psi^{-1}.
struct CSModel {
    PLMap model;
    MonotoneCDF psi;
    EntropyEstimate lambda;
    double conjugacy_residual = 0;  // sup |f.psi - psi.model|, recomputed exactly
    double slope_residual = 0;      // max over model laps of ||slope| - lambda|
    double min_psi_slope = 0;       // > 0 iff psi is a homeomorphism
    bool near_flat_warning = false;
    bool transitivity_verified = false;  // set by callers that ran the check
    int iterations = 0;
};

// One exact application of the pullback operator:
//   (T F)(y) = sum_{laps before} |F(f(b_j)) - F(f(a_j))| + |F(f(y)) - F(f(a))|
// normalized by (T F)(1). Fixed points satisfy mu_F(f(A)) = lambda mu_F(A)
// for intervals A inside one lap.
std::pair<MonotoneCDF, Rational> pullback_step(const PLMap& f, const MonotoneCDF& F);

// Power iteration of the pullback operator from the identity CDF (float
// dots internally, exact rational output). Breakpoints are decimated each
// step under a sup-norm budget of tol/10, capped at breakpoint_cap.
CSModel constant_slope_model(const PLMap& f, double tol = 1e-10, int max_iter = 3000,
                             int breakpoint_cap = 1 << 15);

// Same, from a caller-supplied initial CDF (uniqueness regressions).
CSModel constant_slope_model_from(const PLMap& f, const MonotoneCDF& initial,
                                  double tol = 1e-10, int max_iter = 3000,
                                  int breakpoint_cap = 1 << 15);

// Exact-rational Parry recipe for Markov maps: cell lengths proportional
// to the right Perron eigenvector, psi refined on pullback partitions
// until the sup-change drops below tol.
CSModel markov_constant_slope(const PLMap& f, const MarkovData& md, const Rational& tol);

struct ConjugacyReport {
    double conjugacy_residual = 0;
    double slope_residual = 0;
    double min_psi_slope = 0;
};

// Recomputes every residual field from scratch, independent of the
// solver's own bookkeeping.
ConjugacyReport verify_conjugacy(const PLMap& f, const CSModel& cs);

// delta(eps) = min over y-x = eps of F(y) - F(x), exact; zero iff F has a
// flat segment of length >= eps.
std::vector<std::pair<Rational, Rational>> flatness_diagnostics(
    const MonotoneCDF& F, const std::vector<Rational>& eps_list);

// CSModel JSON (rationals as "p/q", floats as 17-significant-digit strings)
std::string csmodel_to_json(const CSModel& cs);

}  // namespace plim
