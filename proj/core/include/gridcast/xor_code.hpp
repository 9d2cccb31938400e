#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "gridcast/exact_engine.hpp"

namespace gridcast {

// Dense GF(2) matrix, row-major, packed into 64-bit words per row.
struct BitMatrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::size_t words_per_row = 0;
  std::vector<std::uint64_t> bits;

  BitMatrix() = default;
  BitMatrix(std::size_t r, std::size_t c)
      : rows(r), cols(c), words_per_row((c + 63) / 64), bits(r * words_per_row, 0) {}

  bool get(std::size_t i, std::size_t j) const {
    return (bits[i * words_per_row + j / 64] >> (j % 64)) & 1u;
  }
  void flip(std::size_t i, std::size_t j) {
    bits[i * words_per_row + j / 64] ^= std::uint64_t(1) << (j % 64);
  }
  // row dst ^= row src
  void xor_rows(std::size_t dst, std::size_t src) {
    for (std::size_t w = 0; w < words_per_row; ++w) {
      bits[dst * words_per_row + w] ^= bits[src * words_per_row + w];
    }
  }
};

// Rank over GF(2); deterministic elimination, leftmost pivot first.
std::size_t gf2_rank(BitMatrix m);

std::vector<bool> gf2_matvec(const BitMatrix& m, const std::vector<bool>& x);

// Parity of binom(k, j): 1 iff every base-2 digit of j is <= that of k.
int lucas_parity(std::uint64_t k, std::uint64_t j);

enum class ParentSide { Left, Right };

// Parity-check structure of the depth-k XOR grid: row j writes the level-k
// vertex value X_{k,j} as (root coefficient) XOR (a subset of edge noises).
// Column 0 is the root; edge columns are level-major, position-major, with a
// left-parent edge preceding the right-parent edge of the same vertex.
struct ParityMatrix {
  int k = 0;
  BitMatrix h;  // (k+1) x (1 + k(k+1))

  // Column of the edge into vertex (level, pos) from its left or right
  // parent. Vertex (t, 0) has only a right-parent edge, (t, t) only a left.
  std::size_t edge_column(int level, int pos, ParentSide side) const;
};

// Forward GF(2) recursion over levels: a boundary vertex copies its single
// parent row plus the incident edge indicator, an interior vertex XORs both
// parent rows and both incident edges.
ParityMatrix build_parity_matrix(int k);

struct SpecialCodeword {
  std::vector<bool> bits;  // length 1 + k(k+1)
  bool verified = false;   // H_k * bits == 0 over GF(2)
};

// Codeword supported on the root, the edge into (k, 0) and the edge into
// (k, k). Defined for k a power of two, where the Lucas pattern makes the
// root column vanish against the two boundary chains.
SpecialCodeword special_codeword(int k);

// Exact ML error of guessing the root from level k under the XOR rule:
// (1 - total variation)/2, computed by the forward distribution engine.
double exact_ml_error_xor(double delta, int k, int k_max = DEFAULT_K_MAX);

// (1/2) P(A_m) with P(A_m) = 1 - (1 - 4 delta^2)^m: probability that some
// doubling step erases both boundary observations, forcing a fair guess.
// Lower-bounds the ML error at level 2^m.
double erasure_error_lower_bound(double delta, int m);

// One "0"/"1" row per line.
std::string parity_matrix_to_text(const ParityMatrix& pm);
// 16-byte header {magic, k, rows, cols} as little-endian u32, then each row
// as little-endian u64 words.
std::vector<std::uint8_t> parity_matrix_to_packed(const ParityMatrix& pm);

inline constexpr std::uint32_t PARITY_MAGIC = 0x4D505247;  // "GRPM"

}  // namespace gridcast
