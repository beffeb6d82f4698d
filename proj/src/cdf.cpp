#include "plim/cdf.hpp"

#include "plim/error.hpp"

namespace plim {

MonotoneCDF MonotoneCDF::identity() {
    MonotoneCDF c;
    c.dots = {{0, 0}, {1, 1}};
    return c;
}

MonotoneCDF MonotoneCDF::from_dots(std::vector<Dot> dots, bool exact) {
    if (dots.size() < 2) throw DomainError("cdf: need at least two dots");
    if (dots.front().x != 0 || dots.front().y != 0 || dots.back().x != 1 ||
        dots.back().y != 1)
        throw DomainError("cdf: endpoints must be (0,0) and (1,1)");
    for (size_t i = 0; i + 1 < dots.size(); ++i) {
        if (!(dots[i].x < dots[i + 1].x)) throw DomainError("cdf: x not strictly increasing");
        if (dots[i].y > dots[i + 1].y) throw DomainError("cdf: y not nondecreasing");
    }
    MonotoneCDF c;
    c.dots = std::move(dots);
    c.exact = exact;
    return c;
}

MonotoneCDF MonotoneCDF::from_plmap(const PLMap& f, bool exact) {
    return from_dots(f.dots, exact);
}

Rational MonotoneCDF::operator()(const Rational& x) const { return eval_at(dots, x); }

Rational MonotoneCDF::min_slope() const {
    Rational best = -1;
    for (size_t i = 0; i + 1 < dots.size(); ++i) {
        Rational s = (dots[i + 1].y - dots[i].y) / (dots[i + 1].x - dots[i].x);
        if (best < 0 || s < best) best = s;
    }
    return best;
}

MonotoneCDF MonotoneCDF::inverse() const {
    if (!is_homeomorphism()) throw DomainError("cdf: not invertible (flat segment)");
    std::vector<Dot> inv;
    inv.reserve(dots.size());
    for (auto& d : dots) inv.push_back({d.y, d.x});
    MonotoneCDF c;
    c.dots = std::move(inv);
    c.exact = exact;
    return c;
}

PLMap MonotoneCDF::to_plmap() const {
    PLMap f;
    f.dots = dots;  // already valid and canonical-enough for evaluation
    return f;
}

}  // namespace plim
