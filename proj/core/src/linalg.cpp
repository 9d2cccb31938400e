#include "gridcast/linalg.hpp"

#include <stdexcept>

namespace gridcast {

RationalMatrix multiply(const RationalMatrix& a, const RationalMatrix& b) {
  if (a.cols != b.rows) throw std::invalid_argument("matrix shape mismatch");
  RationalMatrix c(a.rows, b.cols);
  for (size_t i = 0; i < a.rows; ++i) {
    for (size_t k = 0; k < a.cols; ++k) {
      const Rational& f = a.at(i, k);
      if (f == 0) continue;
      for (size_t j = 0; j < b.cols; ++j) {
        const Rational& g = b.at(k, j);
        if (g != 0) c.at(i, j) += f * g;
      }
    }
  }
  return c;
}

RationalVector matvec(const RationalMatrix& a, const RationalVector& x) {
  if (a.cols != x.size()) throw std::invalid_argument("matrix/vector shape mismatch");
  RationalVector y(a.rows, Rational(0));
  for (size_t i = 0; i < a.rows; ++i) {
    for (size_t j = 0; j < a.cols; ++j) {
      const Rational& f = a.at(i, j);
      if (f != 0 && x[j] != 0) y[i] += f * x[j];
    }
  }
  return y;
}

namespace {

// Row echelon elimination; returns pivot columns. Optionally carries b along.
std::vector<size_t> eliminate(RationalMatrix& a, RationalVector* b) {
  std::vector<size_t> pivots;
  size_t row = 0;
  for (size_t col = 0; col < a.cols && row < a.rows; ++col) {
    size_t p = row;
    while (p < a.rows && a.at(p, col) == 0) ++p;
    if (p == a.rows) continue;
    if (p != row) {
      for (size_t j = col; j < a.cols; ++j) std::swap(a.at(p, j), a.at(row, j));
      if (b) std::swap((*b)[p], (*b)[row]);
    }
    const Rational inv = Rational(1) / a.at(row, col);
    for (size_t j = col; j < a.cols; ++j) a.at(row, j) *= inv;
    if (b) (*b)[row] *= inv;
    for (size_t i = 0; i < a.rows; ++i) {
      if (i == row) continue;
      const Rational f = a.at(i, col);
      if (f == 0) continue;
      for (size_t j = col; j < a.cols; ++j) a.at(i, j) -= f * a.at(row, j);
      if (b) (*b)[i] -= f * (*b)[row];
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

}  // namespace

std::size_t matrix_rank(RationalMatrix a) { return eliminate(a, nullptr).size(); }

std::optional<RationalVector> solve_linear(RationalMatrix a, RationalVector b) {
  if (a.rows != b.size()) throw std::invalid_argument("matrix/vector shape mismatch");
  std::vector<size_t> pivots = eliminate(a, &b);
  for (size_t i = pivots.size(); i < a.rows; ++i) {
    if (b[i] != 0) return std::nullopt;  // 0 = nonzero: inconsistent
  }
  RationalVector x(a.cols, Rational(0));
  for (size_t r = 0; r < pivots.size(); ++r) x[pivots[r]] = b[r];
  return x;
}

}  // namespace gridcast
