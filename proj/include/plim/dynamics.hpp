#pragma once

#include <optional>
#include <string>
#include <vector>

#include "plim/cdf.hpp"
#include "plim/plmap.hpp"

namespace plim {

enum class TransitivityStatus { TransitiveLEO, TransitiveDecomposed, NotTransitive, Unknown };

const char* transitivity_status_name(TransitivityStatus s);

struct TransitivityVerdict {
    TransitivityStatus status = TransitivityStatus::Unknown;
    // LEO evidence: every eps/2 grid window covers [0,1] within k steps
    std::optional<Rational> leo_epsilon;
    std::optional<int> leo_k;
    // decomposed evidence: unique fixed point with exact interchange and
    // LEO of f^2 on each half
    std::optional<Rational> fixed_point;
    std::optional<int> half_leo_k;
    // witness for NotTransitive
    std::optional<RationalInterval> invariant_subinterval;
    std::string note;

    bool transitive() const {
        return status == TransitivityStatus::TransitiveLEO ||
               status == TransitivityStatus::TransitiveDecomposed;
    }
};

// Minimal k <= k_max with f^k(J) = [0,1] for every full eps/2 window on the
// grid {0, eps/2, eps, ...}; every interval longer than eps contains such a
// window, so k witnesses the locally-eventually-onto conclusion at scale
// eps. nullopt = not verified within k_max (not a refutation).
std::optional<int> leo_constant(const PLMap& f, const Rational& eps, int k_max);

TransitivityVerdict transitivity_check(const PLMap& f, const Rational& eps_floor = Rational(1, 64),
                                       int k_max = 64);

std::optional<Rational> unique_fixed_point(const PLMap& f);

struct EndpointWitnesses {
    Rational x_to_zero;  // interior point with f^2(x) = 0
    Rational y_to_one;   // interior point with f^2(y) = 1
};
EndpointWitnesses endpoint_accessibility(const PLMap& f);

struct EquiAccessSample {
    Rational distance;                 // d(f, g), exact
    std::optional<Rational> best_rho;  // largest grid rho with g^2([rho,1-rho]) = [0,1]
    bool pass = false;                 // passes at the reported uniform rho
    std::optional<bool> composite_cover;  // g^4 u g^5 covering of [rho, e-rho], when e exists
};

struct EquiAccessReport {
    std::optional<Rational> rho;   // largest grid rho all samples pass
    std::optional<Rational> zeta;  // smallest grid zeta covering all sample distances
    std::vector<EquiAccessSample> samples;
    bool all_pass = false;
};

// Verifies the conclusion g^2([rho,1-rho]) = [0,1] on the supplied samples
// (it cannot discharge the for-all-g quantifier, and says so in the report).
EquiAccessReport equi_accessibility_constants(const PLMap& f,
                                              const std::vector<Rational>& rho_grid,
                                              const std::vector<Rational>& zeta_grid,
                                              const std::vector<PLMap>& samples);

// Decomposed analogue: minimal k such that every window J satisfies
// f^{2k}(J) = [0,e] or f^{2k+1}(J) = [0,e].
std::optional<std::pair<int, Rational>> decomposed_leo_constant(const PLMap& f,
                                                                const Rational& eps,
                                                                int k_max);

struct ModulusRow {
    Rational eps;
    Rational delta;
    int argmin = 0;  // family index attaining the minimum
};
std::vector<ModulusRow> equicontinuity_modulus(const std::vector<MonotoneCDF>& family,
                                               const std::vector<Rational>& eps_list);

std::string verdict_to_json(const TransitivityVerdict& v);

}  // namespace plim
