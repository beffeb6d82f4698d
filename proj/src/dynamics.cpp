#include "plim/dynamics.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "json.hpp"
#include "plim/error.hpp"
#include "plim/parry.hpp"

namespace plim {

const char* transitivity_status_name(TransitivityStatus s) {
    switch (s) {
        case TransitivityStatus::TransitiveLEO: return "TransitiveLEO";
        case TransitivityStatus::TransitiveDecomposed: return "TransitiveDecomposed";
        case TransitivityStatus::NotTransitive: return "NotTransitive";
        case TransitivityStatus::Unknown: return "Unknown";
    }
    return "?";
}

// full grid windows [i eps/2, (i+1) eps/2] inside [0,1]
static std::vector<RationalInterval> grid_windows(const Rational& lo, const Rational& hi,
                                                  const Rational& eps) {
    std::vector<RationalInterval> out;
    Rational w = eps / 2;
    Rational a = lo;
    while (a + w <= hi) {
        out.push_back(RationalInterval::closed(a, a + w));
        a += w;
    }
    return out;
}

std::optional<int> leo_constant(const PLMap& f, const Rational& eps, int k_max) {
    if (eps <= 0) throw DomainError("leo_constant: eps must be positive");
    RationalInterval whole = RationalInterval::closed(0, 1);
    int k_needed = 0;
    for (auto& J : grid_windows(0, 1, eps)) {
        RationalInterval img = J;
        int k = 0;
        while (!(img == whole) && k < k_max) {
            img = image_interval(f, img);
            ++k;
        }
        if (!(img == whole)) return std::nullopt;
        k_needed = std::max(k_needed, k);
    }
    return k_needed;
}

// LEO of f^2 on [lo,hi] (a half of the interchange decomposition)
static std::optional<int> half_leo(const PLMap& f, const Rational& lo, const Rational& hi,
                                   const Rational& eps, int k_max) {
    RationalInterval half = RationalInterval::closed(lo, hi);
    int k_needed = 0;
    for (auto& J : grid_windows(lo, hi, eps * (hi - lo))) {
        RationalInterval img = J;
        int k = 0;
        while (!(img == half) && k < k_max) {
            img = image_interval(f, image_interval(f, img));
            ++k;
        }
        if (!(img == half)) return std::nullopt;
        k_needed = std::max(k_needed, k);
    }
    return k_needed;
}

// forward orbit closure of the critical set, capped
static std::vector<Rational> critical_orbit_points(const PLMap& f, int depth_cap,
                                                   size_t size_cap) {
    CriticalData cd = critical_data(f);
    std::set<Rational> S(cd.points.begin(), cd.points.end());
    std::vector<Rational> frontier(S.begin(), S.end());
    for (int d = 0; d < depth_cap && !frontier.empty() && S.size() < size_cap; ++d) {
        std::vector<Rational> next;
        for (auto& p : frontier) {
            Rational q = eval(f, p);
            if (S.insert(q).second) next.push_back(q);
        }
        frontier = std::move(next);
    }
    return {S.begin(), S.end()};
}

TransitivityVerdict transitivity_check(const PLMap& f, const Rational& eps_floor, int k_max) {
    TransitivityVerdict v;

    if (auto k = leo_constant(f, eps_floor, k_max)) {
        v.status = TransitivityStatus::TransitiveLEO;
        v.leo_epsilon = eps_floor;
        v.leo_k = *k;
        return v;
    }

    std::optional<RationalInterval> diagonal;
    try {
        std::vector<Rational> fps = fixed_points(f);
        if (fps.size() == 1) {
            Rational e = fps[0];
            if (e > 0 && e < 1) {
                RationalInterval left = RationalInterval::closed(0, e);
                RationalInterval right = RationalInterval::closed(e, 1);
                if (image_interval(f, left) == right && image_interval(f, right) == left) {
                    auto kl = half_leo(f, 0, e, eps_floor, k_max);
                    auto kr = half_leo(f, e, 1, eps_floor, k_max);
                    if (kl && kr) {
                        v.status = TransitivityStatus::TransitiveDecomposed;
                        v.fixed_point = e;
                        v.half_leo_k = std::max(*kl, *kr);
                        return v;
                    }
                }
            }
        }
    } catch (const DiagonalSegmentError& e) {
        diagonal = e.segment;
    }

    if (diagonal) {
        // a diagonal segment pins an invariant subinterval immediately
        RationalInterval seg = *diagonal;
        RationalInterval witness =
            (seg.lo == 0 && seg.hi == 1)
                ? RationalInterval::closed(0, Rational(1, 2))
                : seg;
        v.status = TransitivityStatus::NotTransitive;
        v.invariant_subinterval = witness;
        v.note = "segment of fixed points";
        return v;
    }

    std::vector<Rational> pts = critical_orbit_points(f, 64, 512);
    for (size_t i = 0; i < pts.size(); ++i) {
        for (size_t j = i + 1; j < pts.size(); ++j) {
            if (pts[i] == 0 && pts[j] == 1) continue;  // the whole space
            RationalInterval J = RationalInterval::closed(pts[i], pts[j]);
            if (image_interval(f, J).subset_of(J)) {
                v.status = TransitivityStatus::NotTransitive;
                v.invariant_subinterval = J;
                v.note = "invariant subinterval from the critical orbit grid";
                return v;
            }
        }
    }

    v.status = TransitivityStatus::Unknown;
    v.note = "no LEO certificate within caps, no invariant subinterval found";
    return v;
}

std::optional<Rational> unique_fixed_point(const PLMap& f) {
    std::vector<Rational> fps = fixed_points(f);  // DiagonalSegmentError propagates
    if (fps.size() == 1) return fps[0];
    return std::nullopt;
}

EndpointWitnesses endpoint_accessibility(const PLMap& f) {
    auto interior_second_preimage = [&](const Rational& target) -> std::optional<Rational> {
        for (auto& p : preimage_point(f, target)) {
            for (auto& x : preimage_point(f, p))
                if (x > 0 && x < 1) return x;
        }
        return std::nullopt;
    };
    auto x = interior_second_preimage(0);
    auto y = interior_second_preimage(1);
    if (!x || !y)
        throw Error(
            "endpoint_accessibility: no interior witness (map not transitive, or a bug "
            "given a transitive input)");
    return {*x, *y};
}

static bool union_covers(const RationalInterval& a, const RationalInterval& b,
                         const RationalInterval& target) {
    if (target.subset_of(a) || target.subset_of(b)) return true;
    const RationalInterval& first = a.lo <= b.lo ? a : b;
    const RationalInterval& second = a.lo <= b.lo ? b : a;
    if (first.lo > target.lo || (first.lo == target.lo && first.lo_open)) return false;
    if (second.hi < target.hi || (second.hi == target.hi && second.hi_open)) return false;
    // no gap between the pieces
    if (first.hi < second.lo) return false;
    if (first.hi == second.lo && first.hi_open && second.lo_open) return false;
    return true;
}

EquiAccessReport equi_accessibility_constants(const PLMap& f,
                                              const std::vector<Rational>& rho_grid,
                                              const std::vector<Rational>& zeta_grid,
                                              const std::vector<PLMap>& samples) {
    if (rho_grid.empty() || zeta_grid.empty())
        throw DomainError("equi_accessibility_constants: empty grid");
    std::vector<Rational> rhos = rho_grid, zetas = zeta_grid;
    std::sort(rhos.begin(), rhos.end());
    std::sort(zetas.begin(), zetas.end());

    EquiAccessReport rep;
    Rational max_d = 0;
    for (auto& g : samples) max_d = std::max(max_d, sup_distance(f, g));
    for (auto& z : zetas)
        if (max_d < z) {
            rep.zeta = z;
            break;
        }
    if (!rep.zeta) {
        std::ostringstream os;
        os << "equi_accessibility_constants: a sample lies outside every N_zeta(f) "
              "(max distance "
           << rational_to_string(max_d) << ")";
        throw PreconditionError(os.str());
    }

    std::optional<Rational> e;
    try {
        e = unique_fixed_point(f);
    } catch (const DiagonalSegmentError&) {
    }

    RationalInterval whole = RationalInterval::closed(0, 1);
    for (auto& g : samples) {
        EquiAccessSample row;
        row.distance = sup_distance(f, g);
        for (auto it = rhos.rbegin(); it != rhos.rend(); ++it) {
            const Rational& rho = *it;
            if (rho >= Rational(1, 2)) continue;
            RationalInterval J = RationalInterval::closed(rho, 1 - rho);
            if (image_interval(g, image_interval(g, J)) == whole) {
                row.best_rho = rho;
                break;
            }
        }
        if (e && *e > 0 && *e < 1) {
            Rational rho = rhos.front();
            if (*e - rho > rho) {
                RationalInterval J = RationalInterval::closed(rho, *e - rho);
                RationalInterval g4 = J, g5;
                for (int i = 0; i < 4; ++i) g4 = image_interval(g, g4);
                g5 = image_interval(g, g4);
                row.composite_cover = union_covers(g4, g5, whole);
            }
        }
        rep.samples.push_back(row);
    }

    // the largest grid rho every sample passes
    std::optional<Rational> rho_star;
    for (auto& row : rep.samples) {
        if (!row.best_rho) {
            rho_star.reset();
            break;
        }
        if (!rho_star || *row.best_rho < *rho_star) rho_star = row.best_rho;
    }
    rep.rho = rho_star;
    rep.all_pass = rho_star.has_value();
    for (auto& row : rep.samples) row.pass = rho_star && row.best_rho && *row.best_rho >= *rho_star;
    return rep;
}

std::optional<std::pair<int, Rational>> decomposed_leo_constant(const PLMap& f,
                                                                const Rational& eps,
                                                                int k_max) {
    std::optional<Rational> e;
    try {
        e = unique_fixed_point(f);
    } catch (const DiagonalSegmentError&) {
    }
    if (!e || !(*e > 0 && *e < 1))
        throw PreconditionError("decomposed_leo_constant: map has no unique interior fixed point");
    RationalInterval left = RationalInterval::closed(0, *e);
    RationalInterval right = RationalInterval::closed(*e, 1);
    if (!(image_interval(f, left) == right && image_interval(f, right) == left))
        throw PreconditionError("decomposed_leo_constant: halves are not interchanged exactly");

    int k_needed = 0;
    for (auto& J : grid_windows(0, 1, eps)) {
        bool done = false;
        RationalInterval img = J;
        // img tracks f^{2k}(J); test f^{2k} and f^{2k+1} at each k
        for (int k = 0; k <= k_max; ++k) {
            if (img == left || image_interval(f, img) == left) {
                k_needed = std::max(k_needed, k);
                done = true;
                break;
            }
            img = image_interval(f, image_interval(f, img));
        }
        if (!done) return std::nullopt;
    }
    return std::make_pair(k_needed, *e);
}

std::vector<ModulusRow> equicontinuity_modulus(const std::vector<MonotoneCDF>& family,
                                               const std::vector<Rational>& eps_list) {
    if (family.empty()) throw DomainError("equicontinuity_modulus: empty family");
    std::vector<ModulusRow> out;
    for (auto& eps : eps_list) {
        ModulusRow row;
        row.eps = eps;
        bool first = true;
        for (size_t i = 0; i < family.size(); ++i) {
            auto table = flatness_diagnostics(family[i], {eps});
            const Rational& delta = table[0].second;
            if (first || delta < row.delta) {
                row.delta = delta;
                row.argmin = static_cast<int>(i);
                first = false;
            }
        }
        out.push_back(row);
    }
    return out;
}

std::string verdict_to_json(const TransitivityVerdict& v) {
    nlohmann::json j;
    j["status"] = transitivity_status_name(v.status);
    if (v.leo_epsilon) j["leo_epsilon"] = rational_to_string(*v.leo_epsilon);
    if (v.leo_k) j["leo_k"] = *v.leo_k;
    if (v.fixed_point) j["fixed_point"] = rational_to_string(*v.fixed_point);
    if (v.half_leo_k) j["half_leo_k"] = *v.half_leo_k;
    if (v.invariant_subinterval) {
        j["invariant_subinterval"] = {
            {"lo", rational_to_string(v.invariant_subinterval->lo)},
            {"hi", rational_to_string(v.invariant_subinterval->hi)}};
    }
    if (!v.note.empty()) j["note"] = v.note;
    return j.dump(2);
}

}  // namespace plim
