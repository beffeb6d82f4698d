#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <optional>
#include <string>

namespace plim {

// Exact arbitrary-precision arithmetic. The rational backend keeps values
// reduced with positive denominator, which is the canonical form we rely
// on for equality tests everywhere. Expression templates are off: the
// shipped boost 1.74 miscompiles the et_on add path for rationals (caught
// by ASan), and plain value semantics are what this code wants anyway.
using BigInt =
    boost::multiprecision::number<boost::multiprecision::backends::cpp_int_backend<>,
                                  boost::multiprecision::et_off>;
using Rational = boost::multiprecision::number<
    boost::multiprecision::backends::rational_adaptor<
        boost::multiprecision::backends::cpp_int_backend<>>,
    boost::multiprecision::et_off>;

inline double to_double(const Rational& r) { return r.convert_to<double>(); }

// Exact: every finite double is a dyadic rational.
inline Rational rational_from_double(double d) { return Rational(d); }

// Accepts "p", "-p", "p/q" with decimal integers. No decimals, no exponents.
std::optional<Rational> rational_from_string(const std::string& s);

// Reduced "p/q", or just "p" when the denominator is 1.
std::string rational_to_string(const Rational& r);

}  // namespace plim
