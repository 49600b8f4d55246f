#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <optional>
#include <string>
#include <string_view>

namespace epsitop {

using Int = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// Parses an exact numeric literal: integer ("42"), fraction ("3/4"),
/// decimal ("1.25") or decimal with exponent ("25e-2"). No float rounding
/// ever happens; returns nullopt on malformed input.
std::optional<Rational> parse_rational(std::string_view text);

/// Canonical string form: integers print bare, terminating decimals print
/// as decimals ("1.5"), everything else prints as "p/q". Deterministic, so
/// reports built from it are byte-stable.
std::string format_rational(const Rational& value);

/// floor(value) as an exact integer (rounds toward -inf).
Int rational_floor(const Rational& value);

/// value^exponent for exponent >= 0.
Rational rational_pow(const Rational& value, unsigned exponent);

inline Int numerator_of(const Rational& value) { return numerator(value); }
inline Int denominator_of(const Rational& value) { return denominator(value); }

}  // namespace epsitop
