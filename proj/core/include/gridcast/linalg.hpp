#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "gridcast/rational.hpp"

namespace gridcast {

using RationalVector = std::vector<Rational>;

// Dense row-major rational matrix; exact arithmetic throughout.
struct RationalMatrix {
  std::size_t rows = 0, cols = 0;
  std::vector<Rational> data;

  RationalMatrix() = default;
  RationalMatrix(std::size_t r, std::size_t c) : rows(r), cols(c), data(r * c, Rational(0)) {}

  Rational& at(std::size_t i, std::size_t j) { return data[i * cols + j]; }
  const Rational& at(std::size_t i, std::size_t j) const { return data[i * cols + j]; }
};

RationalMatrix multiply(const RationalMatrix& a, const RationalMatrix& b);
RationalVector matvec(const RationalMatrix& a, const RationalVector& x);

std::size_t matrix_rank(RationalMatrix a);  // by value: eliminates in place

// One solution of A x = b when the system is consistent (free variables set
// to zero); nullopt when inconsistent.
std::optional<RationalVector> solve_linear(RationalMatrix a, RationalVector b);

}  // namespace gridcast
