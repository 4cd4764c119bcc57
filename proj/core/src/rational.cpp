#include "stablereg/rational.hpp"

#include <cctype>
#include <stdexcept>

#include "stablereg/errors.hpp"

namespace stablereg {

std::string to_fraction_string(const Rational& r) {
  return numerator(r).str() + "/" + denominator(r).str();
}

namespace {

bool is_integer_text(const std::string& s) {
  if (s.empty()) return false;
  std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  if (i == s.size()) return false;
  for (; i < s.size(); ++i)
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
  return true;
}

}  // namespace

std::optional<Rational> parse_rational(const std::string& text) {
  const auto slash = text.find('/');
  try {
    if (slash == std::string::npos) {
      if (!is_integer_text(text)) return std::nullopt;
      return Rational(Int(text));
    }
    const std::string num = text.substr(0, slash);
    const std::string den = text.substr(slash + 1);
    if (!is_integer_text(num) || !is_integer_text(den)) return std::nullopt;
    Int d(den);
    if (d == 0) return std::nullopt;
    return Rational(Int(num), d);
  } catch (const std::exception&) {
    return std::nullopt;
  }
}

Rational sqrt_upper_bound(const Rational& x, unsigned digits) {
  require(x >= 0, Errc::invalid_epsilon, "sqrt_upper_bound requires a nonnegative argument");
  if (x == 0) return Rational(0);
  Int scale = 1;
  for (unsigned i = 0; i < digits; ++i) scale *= 10;
  // Smallest s with (s/scale)^2 >= x, i.e. s^2 * q >= p * scale^2.
  const Int p = numerator(x);
  const Int q = denominator(x);
  const Int target = p * scale * scale;
  Int s = sqrt(Int(target / q));  // floor sqrt, at most the answer
  while (s * s * q < target) ++s;
  return Rational(s, scale);
}

}  // namespace stablereg
