#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace binpack {

using Integer = mpz_class;
using Rational = mpq_class;

/// Builds num/den in lowest terms. `den` must be nonzero.
Rational make_rational(long num, long den = 1);
Rational make_rational(const Integer& num, const Integer& den);

/// Accepts "p/q", an integer, or a decimal literal such as "0.125" (converted
/// exactly). Surrounding whitespace is ignored. Throws ParseError.
Rational parse_rational(std::string_view text);

/// "p/q", or "p" when the denominator is one.
std::string to_string(const Rational& q);

Integer floor(const Rational& q);
Integer ceil(const Rational& q);

}  // namespace binpack
