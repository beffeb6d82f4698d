#pragma once

#include <string>
#include <vector>

#include "plim/cdf.hpp"
#include "plim/dynamics.hpp"
#include "plim/entropy.hpp"
#include "plim/parry.hpp"
#include "plim/plmap.hpp"

namespace plim {

// --- stock maps ------------------------------------------------------------

PLMap horseshoe3();      // dots (0,0),(1/3,1),(2/3,0),(1,1)
PLMap tent2();           // full tent, slope 2
PLMap golden_map();      // rational Markov map with cover matrix [[1,1],[1,0]]
PLMap identity_map();
PLMap interchange_map(); // transitive, not mixing: swaps [0,1/2] and [1/2,1]

// --- Example: perturbation with a jump in modality ---------------------------

// Constant-slope member g~_t (slope 3+2t, modality 8 for t in (0,1/4]),
// the connect-the-dots homeomorphism psi_t, and g_t = psi_t . g~_t .
// psi_t^{-1}, all exact. t = 0 degenerates: two critical points merge and
// the map is no longer transitive; the bundle then carries g~_0 with
// psi = identity and g = g~_0.
struct Example1Bundle {
    Rational t;
    PLMap f;        // the 3-horseshoe
    PLMap g_tilde;  // constant slope 3 + 2t
    MonotoneCDF psi_t;
    PLMap g;
    bool degenerate = false;  // t == 0
};
Example1Bundle example1(const Rational& t);

// the two critical values the family's listing leaves implicit, recovered
// from the slope-sum identity and the v |-> 1 - v symmetry of the family
Rational example1_v1(const Rational& t);  // 1/4 - t + 2t^2
Rational example1_v8(const Rational& t);  // 3/4 + t - 2t^2

// --- Example: perturbation with a jump in entropy ----------------------------

// f has the 2-cycle of critical points 24 -> 60 -> 24 (original [0,72]
// units); g_t replaces the peaks there by slope-3 tent caps with apex
// raised by t. t is quoted in the original units.
struct Example2Bundle {
    Rational t;
    PLMap f;
    PLMap g;
};
Example2Bundle example2(const Rational& t);

// modality-preserving family converging to the horseshoe with entropy
// converging too: dots (0,0),(1/3,1-sigma),(2/3,sigma),(1,1), sigma = s/32
PLMap modality_preserving(const Rational& s);

// --- experiment tables -------------------------------------------------------

struct ExperimentTable {
    std::vector<std::string> columns;
    std::vector<std::vector<std::string>> rows;
    std::vector<std::pair<std::string, std::string>> metadata;

    std::string to_csv() const;
};

std::string format_sig12(double v);

struct Theorem1Result {
    ExperimentTable table;
    double min_trailing_ratio = 0;
    bool positive = false;
    bool truncated = false;
};
Theorem1Result theorem1_experiment(const PLMap& f, const Rational& x, int n_max,
                                   long long budget = 4'000'000);

enum class FamilyKind { Example1, Example2, ModalityPreserving };

struct Theorem3Config {
    double tol = 1e-9;
    int max_iter = 4000;
    int breakpoint_cap = 1 << 15;
};

// columns: t, d(g_t,f), h(g_t), |h(g_t)-h(f)|, d(Phi(g_t),Phi(f)),
// d(Psi(g_t),Psi(f)), model slope, transitivity verdict
ExperimentTable theorem3_experiment(FamilyKind kind, const std::vector<Rational>& t_values,
                                    const Theorem3Config& cfg = {});

// columns: eps, delta, argmin t; family = computed conjugacies Psi(g_t)^{-1}
// for the modality-jump family (use_exact switches to the closed-form psi_t)
ExperimentTable theorem2_experiment(const std::vector<Rational>& t_values,
                                    const std::vector<Rational>& eps_list,
                                    bool use_exact = false,
                                    const Theorem3Config& cfg = {});

}  // namespace plim
