#include "epsitop/rational.hpp"

#include <cctype>
#include <sstream>

namespace epsitop {

namespace {

bool is_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s)
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  return true;
}

Int pow10(long long e) {
  Int r = 1;
  for (long long i = 0; i < e; ++i) r *= 10;
  return r;
}

}  // namespace

std::optional<Rational> parse_rational(std::string_view text) {
  if (text.empty()) return std::nullopt;
  bool negative = false;
  if (text.front() == '+' || text.front() == '-') {
    negative = text.front() == '-';
    text.remove_prefix(1);
  }
  if (text.empty()) return std::nullopt;

  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    std::string_view num = text.substr(0, slash);
    std::string_view den = text.substr(slash + 1);
    if (!is_digits(num) || !is_digits(den)) return std::nullopt;
    Int d{std::string(den)};
    if (d == 0) return std::nullopt;
    Rational r(Int{std::string(num)}, d);
    return negative ? Rational(-r) : r;
  }

  // [digits][.digits][e[+-]digits]
  long long exp10 = 0;
  if (auto epos = text.find_first_of("eE"); epos != std::string_view::npos) {
    std::string_view etail = text.substr(epos + 1);
    bool eneg = false;
    if (!etail.empty() && (etail.front() == '+' || etail.front() == '-')) {
      eneg = etail.front() == '-';
      etail.remove_prefix(1);
    }
    if (!is_digits(etail) || etail.size() > 6) return std::nullopt;
    exp10 = std::stoll(std::string(etail));
    if (eneg) exp10 = -exp10;
    text = text.substr(0, epos);
  }

  std::string_view whole = text, frac;
  if (auto dot = text.find('.'); dot != std::string_view::npos) {
    whole = text.substr(0, dot);
    frac = text.substr(dot + 1);
    if (whole.empty() && frac.empty()) return std::nullopt;
    if (!whole.empty() && !is_digits(whole)) return std::nullopt;
    if (!frac.empty() && !is_digits(frac)) return std::nullopt;
  } else if (!is_digits(whole)) {
    return std::nullopt;
  }

  Int mantissa = whole.empty() ? Int(0) : Int{std::string(whole)};
  for (char c : frac) mantissa = mantissa * 10 + (c - '0');
  exp10 -= static_cast<long long>(frac.size());

  Rational r(mantissa);
  if (exp10 > 0)
    r *= Rational(pow10(exp10));
  else if (exp10 < 0)
    r /= Rational(pow10(-exp10));
  return negative ? Rational(-r) : r;
}

std::string format_rational(const Rational& value) {
  Int num = numerator(value), den = denominator(value);
  if (den == 1) return num.str();

  // Terminating decimal iff den = 2^a * 5^b.
  Int d = den;
  long long twos = 0, fives = 0;
  while (d % 2 == 0) { d /= 2; ++twos; }
  while (d % 5 == 0) { d /= 5; ++fives; }
  if (d == 1) {
    long long digits = twos > fives ? twos : fives;
    Int scale = pow10(digits);
    Int scaled = num * scale / den;
    bool neg = scaled < 0;
    if (neg) scaled = -scaled;
    std::string s = scaled.str();
    if (static_cast<long long>(s.size()) <= digits)
      s.insert(0, static_cast<size_t>(digits + 1 - s.size()), '0');
    s.insert(s.size() - static_cast<size_t>(digits), ".");
    return neg ? "-" + s : s;
  }
  return num.str() + "/" + den.str();
}

Int rational_floor(const Rational& value) {
  Int num = numerator(value), den = denominator(value);
  Int q = num / den;
  if (num < 0 && q * den != num) --q;
  return q;
}

Rational rational_pow(const Rational& value, unsigned exponent) {
  Rational r = 1;
  for (unsigned i = 0; i < exponent; ++i) r *= value;
  return r;
}

}  // namespace epsitop
