#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace cfs {

/// Exact arbitrary-precision rational. All probabilities are carried in this
/// type; there is no floating point anywhere in the evaluation paths.
using Rational = mpq_class;

/// Parses "p/q", an integer, or a decimal such as "0.32" (read exactly as
/// 32/100). Throws std::invalid_argument on malformed text.
Rational parse_rational(std::string_view text);

/// Reduced "p/q" rendering; integers render without a denominator.
std::string to_string(const Rational& value);

/// Decimal rendering rounded half away from zero to `places` digits.
std::string to_decimal(const Rational& value, int places = 6);

}  // namespace cfs
