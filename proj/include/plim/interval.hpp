#pragma once

#include <string>

#include "plim/rational.hpp"

namespace plim {

// Interval with exact rational endpoints and open/closed flags on each end.
// Follower sets, lap interiors and interval images all live here. The empty
// interval is a distinguished state (lo/hi meaningless).
struct RationalInterval {
    Rational lo, hi;
    bool lo_open = false;
    bool hi_open = false;
    bool is_empty = true;

    RationalInterval() = default;
    RationalInterval(Rational lo_, Rational hi_, bool lo_open_, bool hi_open_);

    static RationalInterval empty() { return {}; }
    static RationalInterval closed(const Rational& a, const Rational& b) {
        return {a, b, false, false};
    }
    static RationalInterval open(const Rational& a, const Rational& b) {
        return {a, b, true, true};
    }
    static RationalInterval point(const Rational& a) { return {a, a, false, false}; }

    bool empty_set() const { return is_empty; }
    bool degenerate() const { return !is_empty && lo == hi; }
    Rational length() const { return is_empty ? Rational(0) : hi - lo; }

    bool contains(const Rational& x) const;
    // subset-or-equal, exact on flags
    bool subset_of(const RationalInterval& o) const;
    bool strict_subset_of(const RationalInterval& o) const;

    RationalInterval intersect(const RationalInterval& o) const;
    // smallest interval containing both (flags from the extremes)
    RationalInterval hull(const RationalInterval& o) const;
    bool disjoint_from(const RationalInterval& o) const {
        return intersect(o).empty_set();
    }
    // disjoint interiors (may share an endpoint)
    bool interior_disjoint_from(const RationalInterval& o) const;

    bool operator==(const RationalInterval& o) const;

    std::string str() const;
};

}  // namespace plim
