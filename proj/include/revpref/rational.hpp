#pragma once

#include <gmpxx.h>

#include <span>
#include <string>
#include <string_view>

namespace revpref {

// All relation construction and all verification sweeps run on exact
// rationals.  Boundary cases (a bundle costing exactly as much as the chosen
// one) are meaningful and must not depend on floating-point rounding.
using Rational = mpq_class;

Rational make_rational(long num, long den = 1);

// Accepts integer ("7"), fraction ("-2/3") and decimal ("0.125") literals.
// Throws std::invalid_argument on anything else.
Rational parse_rational(std::string_view text);

// Canonical wire form "num/den", denominator always explicit and positive.
std::string to_fraction(const Rational& value);

Rational dot(std::span<const Rational> a, std::span<const Rational> b);

}  // namespace revpref
