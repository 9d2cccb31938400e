#include "gridcast/xor_code.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>
#include <string>

#include "gridcast/gates.hpp"

namespace gridcast {

std::size_t gf2_rank(BitMatrix m) {
  std::size_t rank = 0;
  for (std::size_t col = 0; col < m.cols && rank < m.rows; ++col) {
    std::size_t pivot = m.rows;
    for (std::size_t i = rank; i < m.rows; ++i) {
      if (m.get(i, col)) {
        pivot = i;
        break;
      }
    }
    if (pivot == m.rows) continue;
    if (pivot != rank) {
      for (std::size_t w = 0; w < m.words_per_row; ++w) {
        std::swap(m.bits[pivot * m.words_per_row + w],
                  m.bits[rank * m.words_per_row + w]);
      }
    }
    for (std::size_t i = 0; i < m.rows; ++i) {
      if (i != rank && m.get(i, col)) m.xor_rows(i, rank);
    }
    ++rank;
  }
  return rank;
}

std::vector<bool> gf2_matvec(const BitMatrix& m, const std::vector<bool>& x) {
  if (x.size() != m.cols) throw std::invalid_argument("gf2_matvec: size mismatch");
  // Pack x once so each row reduces to AND + popcount parity.
  std::vector<std::uint64_t> packed(m.words_per_row, 0);
  for (std::size_t j = 0; j < m.cols; ++j) {
    if (x[j]) packed[j / 64] |= std::uint64_t(1) << (j % 64);
  }
  std::vector<bool> out(m.rows, false);
  for (std::size_t i = 0; i < m.rows; ++i) {
    std::uint64_t acc = 0;
    for (std::size_t w = 0; w < m.words_per_row; ++w) {
      acc ^= m.bits[i * m.words_per_row + w] & packed[w];
    }
    out[i] = std::popcount(acc) & 1u;
  }
  return out;
}

int lucas_parity(std::uint64_t k, std::uint64_t j) {
  if (j > k) throw std::invalid_argument("lucas_parity: j must be in [0, k]");
  return (j & k) == j ? 1 : 0;
}

std::size_t ParityMatrix::edge_column(int level, int pos, ParentSide side) const {
  if (level < 1 || level > k || pos < 0 || pos > level) {
    throw std::invalid_argument("edge_column: vertex out of range");
  }
  if ((pos == 0 && side == ParentSide::Left) ||
      (pos == level && side == ParentSide::Right)) {
    throw std::invalid_argument("edge_column: boundary vertex lacks that parent");
  }
  // Level t starts after the root column and the 2*tau edges of each earlier
  // level tau; within a level, columns run right(0), left(1), right(1), ...
  std::size_t base = 1 + static_cast<std::size_t>(level) * (level - 1);
  if (pos == 0) return base;
  std::size_t off = static_cast<std::size_t>(2 * pos) - 1;
  if (side == ParentSide::Right) ++off;
  return base + off;
}

ParityMatrix build_parity_matrix(int k) {
  if (k < 1 || k > 64) throw std::invalid_argument("build_parity_matrix: k must be in [1, 64]");
  ParityMatrix pm;
  pm.k = k;
  const std::size_t cols = 1 + static_cast<std::size_t>(k) * (k + 1);
  pm.h = BitMatrix(static_cast<std::size_t>(k) + 1, cols);

  // rep holds the level-t rows; the full matrix is only the final level.
  BitMatrix rep(static_cast<std::size_t>(k) + 1, cols);
  rep.flip(0, 0);  // X_{0,0} = X_0
  for (int t = 1; t <= k; ++t) {
    // Sweep positions high to low so parent rows at t-1 are still intact.
    for (int j = t; j >= 0; --j) {
      std::size_t dst = static_cast<std::size_t>(j);
      if (j == t) {
        rep.xor_rows(dst, dst - 1);  // row j was all-zero before this level
        rep.flip(dst, pm.edge_column(t, j, ParentSide::Left));
      } else if (j == 0) {
        rep.flip(dst, pm.edge_column(t, j, ParentSide::Right));
      } else {
        rep.xor_rows(dst, dst - 1);
        rep.flip(dst, pm.edge_column(t, j, ParentSide::Left));
        rep.flip(dst, pm.edge_column(t, j, ParentSide::Right));
      }
    }
  }
  pm.h.bits = rep.bits;
  return pm;
}

SpecialCodeword special_codeword(int k) {
  if (k < 2 || (k & (k - 1)) != 0) {
    throw std::invalid_argument("special_codeword: k must be a power of two, k >= 2");
  }
  ParityMatrix pm = build_parity_matrix(k);
  SpecialCodeword cw;
  cw.bits.assign(pm.h.cols, false);
  cw.bits[0] = true;
  cw.bits[pm.edge_column(k, 0, ParentSide::Right)] = true;
  cw.bits[pm.edge_column(k, k, ParentSide::Left)] = true;
  std::vector<bool> prod = gf2_matvec(pm.h, cw.bits);
  cw.verified = true;
  for (bool b : prod) {
    if (b) cw.verified = false;
  }
  return cw;
}

double exact_ml_error_xor(double delta, int k, int k_max) {
  return 0.5 * (1.0 - exact_tv_distance(GateRule::get(GateKind::Xor), delta, k, k_max));
}

double erasure_error_lower_bound(double delta, int m) {
  if (m < 1) throw std::invalid_argument("erasure_error_lower_bound: m must be >= 1");
  if (!(delta > 0.0) || !(delta < 0.5)) {
    throw std::invalid_argument("erasure_error_lower_bound: delta must be in (0, 1/2)");
  }
  return 0.5 * (1.0 - std::pow(1.0 - 4.0 * delta * delta, m));
}

std::string parity_matrix_to_text(const ParityMatrix& pm) {
  std::string out;
  out.reserve(pm.h.rows * (pm.h.cols + 1));
  for (std::size_t i = 0; i < pm.h.rows; ++i) {
    for (std::size_t j = 0; j < pm.h.cols; ++j) {
      out.push_back(pm.h.get(i, j) ? '1' : '0');
    }
    out.push_back('\n');
  }
  return out;
}

std::vector<std::uint8_t> parity_matrix_to_packed(const ParityMatrix& pm) {
  std::vector<std::uint8_t> out;
  out.reserve(16 + pm.h.bits.size() * 8);
  auto push_u32 = [&](std::uint32_t v) {
    for (int b = 0; b < 4; ++b) out.push_back(static_cast<std::uint8_t>(v >> (8 * b)));
  };
  push_u32(PARITY_MAGIC);
  push_u32(static_cast<std::uint32_t>(pm.k));
  push_u32(static_cast<std::uint32_t>(pm.h.rows));
  push_u32(static_cast<std::uint32_t>(pm.h.cols));
  for (std::uint64_t word : pm.h.bits) {
    for (int b = 0; b < 8; ++b) out.push_back(static_cast<std::uint8_t>(word >> (8 * b)));
  }
  return out;
}

}  // namespace gridcast
