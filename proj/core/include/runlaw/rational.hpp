#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace runlaw {

using Integer = mpz_class;
using Rational = mpq_class;

/// Parses "3/10", "-7", "0.3", ".25", "1e-3" or "2.5E+2" into an exact
/// rational. Decimal inputs convert exactly (0.1 is 1/10).
Rational parse_rational(std::string_view text);

/// Comma-separated list of parse_rational values.
std::vector<Rational> parse_rational_list(std::string_view text);

/// "num/den", or just "num" when the denominator is 1.
std::string to_string(const Rational& q);

/// Scientific notation with `digits` significant digits, rounded half-even on
/// the exact value, e.g. "7.17960e-09". Zero formats as "0".
std::string format_scientific(const Rational& q, int digits);

/// Fixed notation with `decimals` digits after the point, rounded half-even.
std::string format_fixed(const Rational& q, int decimals);

Rational pow(const Rational& base, std::size_t exponent);

inline bool is_zero(const Rational& q) { return sgn(q) == 0; }

}  // namespace runlaw
