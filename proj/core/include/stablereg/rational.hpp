#pragma once

#include <optional>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace stablereg {

/// Exact arbitrary-precision arithmetic. All measure and threshold math in the
/// library is carried out on these types; floating point never enters a verdict.
using Int = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// Canonical "p/q" form with q >= 1 and gcd(p,q) = 1, e.g. "0/1", "2/3", "-1/4".
std::string to_fraction_string(const Rational& r);

/// Parses "p/q" (or a bare integer "p"). Returns nullopt on malformed input or q = 0.
std::optional<Rational> parse_rational(const std::string& text);

/// Smallest rational of the form s / 10^digits that is >= sqrt(x). Exact when
/// sqrt(x) itself has such a representation. Requires x >= 0.
Rational sqrt_upper_bound(const Rational& x, unsigned digits = 9);

}  // namespace stablereg
