#include "plim/interval.hpp"

#include <sstream>

#include "plim/error.hpp"

namespace plim {

RationalInterval::RationalInterval(Rational lo_, Rational hi_, bool lo_open_, bool hi_open_)
    : lo(std::move(lo_)), hi(std::move(hi_)), lo_open(lo_open_), hi_open(hi_open_) {
    if (lo > hi || (lo == hi && (lo_open || hi_open))) {
        is_empty = true;
    } else {
        is_empty = false;
    }
}

bool RationalInterval::contains(const Rational& x) const {
    if (is_empty) return false;
    if (x < lo || x > hi) return false;
    if (x == lo && lo_open) return false;
    if (x == hi && hi_open) return false;
    return true;
}

bool RationalInterval::subset_of(const RationalInterval& o) const {
    if (is_empty) return true;
    if (o.is_empty) return false;
    if (lo < o.lo || (lo == o.lo && o.lo_open && !lo_open)) return false;
    if (hi > o.hi || (hi == o.hi && o.hi_open && !hi_open)) return false;
    return true;
}

bool RationalInterval::strict_subset_of(const RationalInterval& o) const {
    return subset_of(o) && !(*this == o);
}

RationalInterval RationalInterval::intersect(const RationalInterval& o) const {
    if (is_empty || o.is_empty) return empty();
    Rational nlo = lo, nhi = hi;
    bool nlo_open = lo_open, nhi_open = hi_open;
    if (o.lo > nlo || (o.lo == nlo && o.lo_open)) {
        nlo = o.lo;
        nlo_open = (o.lo == lo) ? (lo_open || o.lo_open) : o.lo_open;
    }
    if (o.hi < nhi || (o.hi == nhi && o.hi_open)) {
        nhi = o.hi;
        nhi_open = (o.hi == hi) ? (hi_open || o.hi_open) : o.hi_open;
    }
    return {nlo, nhi, nlo_open, nhi_open};
}

RationalInterval RationalInterval::hull(const RationalInterval& o) const {
    if (is_empty) return o;
    if (o.is_empty) return *this;
    Rational nlo = lo, nhi = hi;
    bool nlo_open = lo_open, nhi_open = hi_open;
    if (o.lo < nlo) {
        nlo = o.lo;
        nlo_open = o.lo_open;
    } else if (o.lo == nlo) {
        nlo_open = nlo_open && o.lo_open;
    }
    if (o.hi > nhi) {
        nhi = o.hi;
        nhi_open = o.hi_open;
    } else if (o.hi == nhi) {
        nhi_open = nhi_open && o.hi_open;
    }
    return {nlo, nhi, nlo_open, nhi_open};
}

bool RationalInterval::interior_disjoint_from(const RationalInterval& o) const {
    if (is_empty || o.is_empty) return true;
    RationalInterval i = intersect(o);
    if (i.empty_set()) return true;
    return i.degenerate();
}

bool RationalInterval::operator==(const RationalInterval& o) const {
    if (is_empty || o.is_empty) return is_empty == o.is_empty;
    return lo == o.lo && hi == o.hi && lo_open == o.lo_open && hi_open == o.hi_open;
}

std::string RationalInterval::str() const {
    if (is_empty) return "{}";
    std::ostringstream os;
    os << (lo_open ? '(' : '[') << rational_to_string(lo) << ", " << rational_to_string(hi)
       << (hi_open ? ')' : ']');
    return os.str();
}

}  // namespace plim
