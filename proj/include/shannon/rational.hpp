#pragma once

#include <string>
#include <string_view>

#include <gmpxx.h>

namespace shannon {

using Integer = mpz_class;
using Rational = mpq_class;

/// Parses "p" or "p/q" (optional sign, surrounding blanks allowed).
Rational parse_rational(std::string_view text);

/// "p" when the denominator is one, otherwise "p/q".
std::string to_string(const Rational& value);
std::string to_string(const Integer& value);

/// Decimal rendering with `digits` digits after the point, truncated toward zero.
std::string to_decimal(const Rational& value, unsigned digits);

Integer floor(const Rational& value);
Integer ceil(const Rational& value);
Rational abs(const Rational& value);

Rational pow2(long exponent);

} // namespace shannon
