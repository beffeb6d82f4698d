#pragma once

#include "plim/plmap.hpp"

namespace plim {

// Nondecreasing piecewise-linear surjection [0,1] -> [0,1] with endpoints
// (0,0) and (1,1). Dots are exact rationals; `exact` records whether they
// came from an exact construction or from float iteration (in which case
// they are the exact dyadic values of the computed doubles).
struct MonotoneCDF {
    std::vector<Dot> dots;
    bool exact = true;

    static MonotoneCDF identity();
    static MonotoneCDF from_dots(std::vector<Dot> dots, bool exact = true);
    static MonotoneCDF from_plmap(const PLMap& f, bool exact = true);

    Rational operator()(const Rational& x) const;

    // min segment slope; 0 when there is a flat segment
    Rational min_slope() const;
    bool is_homeomorphism() const { return min_slope() > 0; }

    // Inverse as a CDF. Requires strictly increasing (throws otherwise);
    // use collapse_flats() + inverse for the pseudo-inverse of a near-flat
    // fixed point.
    MonotoneCDF inverse() const;

    PLMap to_plmap() const;

    bool operator==(const MonotoneCDF& o) const { return dots == o.dots; }
};

}  // namespace plim
