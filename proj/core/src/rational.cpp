#include "gridcast/rational.hpp"

#include <cctype>
#include <cstdlib>

namespace gridcast {

namespace {

BigInt pow10(long e) {
  BigInt p = 1;
  for (long i = 0; i < e; ++i) p *= 10;
  return p;
}

[[noreturn]] void bad(std::string_view text) {
  throw std::invalid_argument("not a rational: '" + std::string(text) + "'");
}

}  // namespace

Rational parse_rational(std::string_view text) {
  size_t a = 0, b = text.size();
  while (a < b && std::isspace(static_cast<unsigned char>(text[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(text[b - 1]))) --b;
  std::string s(text.substr(a, b - a));
  if (s.empty()) bad(text);

  if (auto slash = s.find('/'); slash != std::string::npos) {
    std::string num = s.substr(0, slash), den = s.substr(slash + 1);
    if (num.empty() || den.empty()) bad(text);
    try {
      return Rational(BigInt(num), BigInt(den));
    } catch (const std::exception&) {
      bad(text);
    }
  }

  // [sign] digits [. digits] [eE [sign] digits]
  size_t i = 0;
  bool neg = false;
  if (s[i] == '+' || s[i] == '-') neg = (s[i++] == '-');
  std::string digits;
  long frac_len = 0;
  bool seen_digit = false, seen_dot = false;
  for (; i < s.size() && (std::isdigit(static_cast<unsigned char>(s[i])) || s[i] == '.'); ++i) {
    if (s[i] == '.') {
      if (seen_dot) bad(text);
      seen_dot = true;
    } else {
      digits.push_back(s[i]);
      if (seen_dot) ++frac_len;
      seen_digit = true;
    }
  }
  if (!seen_digit) bad(text);
  long exp10 = 0;
  if (i < s.size() && (s[i] == 'e' || s[i] == 'E')) {
    ++i;
    bool eneg = false;
    if (i < s.size() && (s[i] == '+' || s[i] == '-')) eneg = (s[i++] == '-');
    if (i == s.size()) bad(text);
    long v = 0;
    for (; i < s.size(); ++i) {
      if (!std::isdigit(static_cast<unsigned char>(s[i]))) bad(text);
      v = v * 10 + (s[i] - '0');
      if (v > 100000) bad(text);
    }
    exp10 = eneg ? -v : v;
  }
  if (i != s.size()) bad(text);

  BigInt mantissa(digits);
  if (neg) mantissa = -mantissa;
  long e = exp10 - frac_len;
  if (e >= 0) return Rational(mantissa * pow10(e), 1);
  return Rational(mantissa, pow10(-e));
}

Rational snap_to_denominator(const Rational& x, std::uint64_t max_den) {
  if (denominator(x) <= BigInt(max_den)) return x;
  // Continued-fraction convergents of |x|; the last one with denominator in
  // range is the best approximation among all fractions with den <= max_den
  // that we need here (semiconvergent refinement is unnecessary: inputs are
  // decimals being rounded back, and convergent error < 1/(den*max_den)).
  BigInt p0 = 0, q0 = 1, p1 = 1, q1 = 0;
  BigInt num = abs(numerator(x)), den = denominator(x);
  while (den != 0) {
    BigInt q = num / den, rem = num % den;
    BigInt p2 = q * p1 + p0, q2 = q * q1 + q0;
    if (q2 > BigInt(max_den)) break;
    p0 = p1; q0 = q1; p1 = p2; q1 = q2;
    num = den; den = rem;
  }
  Rational r(p1, q1);
  return x < 0 ? Rational(-r) : r;
}

double to_double(const Rational& x) { return x.convert_to<double>(); }

std::string to_string(const Rational& x) {
  std::string s = numerator(x).str();
  if (denominator(x) != 1) s += "/" + denominator(x).str();
  return s;
}

}  // namespace gridcast
