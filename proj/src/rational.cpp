#include "plim/rational.hpp"

#include <cctype>

namespace plim {

static bool parse_int(const std::string& s, BigInt& out) {
    if (s.empty()) return false;
    size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
    if (i == s.size()) return false;
    for (size_t j = i; j < s.size(); ++j)
        if (!std::isdigit(static_cast<unsigned char>(s[j]))) return false;
    out = BigInt(s);
    return true;
}

std::optional<Rational> rational_from_string(const std::string& s) {
    auto slash = s.find('/');
    BigInt num, den;
    if (slash == std::string::npos) {
        if (!parse_int(s, num)) return std::nullopt;
        return Rational(num);
    }
    if (!parse_int(s.substr(0, slash), num)) return std::nullopt;
    if (!parse_int(s.substr(slash + 1), den)) return std::nullopt;
    if (den == 0) return std::nullopt;
    return Rational(num, den);
}

std::string rational_to_string(const Rational& r) {
    std::string n = numerator(r).str();
    if (denominator(r) == 1) return n;
    return n + "/" + denominator(r).str();
}

}  // namespace plim
