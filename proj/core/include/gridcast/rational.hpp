#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace gridcast {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

// Thrown when a computation would exceed a stated size cap (k_max, L cap, ...).
// The CLI maps this to its resource-limit exit code.
class resource_limit_error : public std::runtime_error {
public:
  explicit resource_limit_error(const std::string& what) : std::runtime_error(what) {}
};

// Exact parse of "p/q", "-3", "1.9991", "5e-3", "1.25E+2". Decimal and scientific
// inputs convert via powers of ten, never through binary floats.
Rational parse_rational(std::string_view text);

// Best rational approximation with denominator <= max_den (continued fractions).
// Identity whenever the input already satisfies the bound.
Rational snap_to_denominator(const Rational& x, std::uint64_t max_den);

double to_double(const Rational& x);

// Canonical display form: "p" when q == 1, else "p/q".
std::string to_string(const Rational& x);

}  // namespace gridcast
