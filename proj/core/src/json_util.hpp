#pragma once

// Build-internal JSON helpers (vendored header; not part of the installed API).

#include <json.hpp>

#include <cstdint>
#include <limits>

#include "gridcast/rational.hpp"

namespace gridcast::jsonutil {

using nlohmann::json;

// {"num": i, "den": j} with int64 payloads, falling back to decimal strings
// for values that do not fit.
inline json rational_to_json(const Rational& r) {
  const BigInt num = numerator(r), den = denominator(r);
  json j;
  if (num >= std::numeric_limits<std::int64_t>::min() &&
      num <= std::numeric_limits<std::int64_t>::max() &&
      den <= std::numeric_limits<std::int64_t>::max()) {
    j["num"] = num.convert_to<std::int64_t>();
    j["den"] = den.convert_to<std::int64_t>();
  } else {
    j["num"] = num.str();
    j["den"] = den.str();
  }
  return j;
}

inline BigInt bigint_from_json(const json& j, const char* what) {
  if (j.is_number_integer()) return BigInt(j.get<std::int64_t>());
  if (j.is_string()) return BigInt(j.get<std::string>());
  throw std::invalid_argument(std::string(what) + ": expected integer or decimal string");
}

inline Rational rational_from_json(const json& j) {
  if (j.is_number_integer()) return Rational(BigInt(j.get<std::int64_t>()), 1);
  if (j.is_string()) return parse_rational(j.get<std::string>());
  if (j.is_object() && j.contains("num") && j.contains("den")) {
    BigInt den = bigint_from_json(j.at("den"), "den");
    if (den == 0) throw std::invalid_argument("rational with zero denominator");
    return Rational(bigint_from_json(j.at("num"), "num"), den);
  }
  throw std::invalid_argument("expected rational as {\"num\",\"den\"}, integer, or string");
}

}  // namespace gridcast::jsonutil
