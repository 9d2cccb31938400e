#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "gridcast/forms.hpp"
#include "gridcast/linalg.hpp"
#include "gridcast/rational.hpp"

namespace gridcast {

// De Bruijn-style graph over Y^rank: vertex v has edges to every z whose
// first rank-1 letters equal the last rank-1 letters of v. All three edges
// leaving v carry the weight of v. Vertices are indexed by clause_index.
struct FormGraph {
  int rank = 0;
  std::vector<Rational> weights;  // size 3^rank

  std::size_t vertex_count() const { return weights.size(); }
  // Successor reached by shifting out the first letter and appending c.
  std::size_t successor(std::size_t v, int c) const;
};

// Graph of the pure form's coefficients. Throws std::invalid_argument when w
// is not pure (extend it to its rank first).
FormGraph build_graph(const CountingForm& w);

// A directed cycle with negative total weight. Consecutive vertices (and the
// wrap-around pair) are edges of the graph; total_weight sums the source
// vertex weight of every edge, including any slack in force during the search.
struct CycleCertificate {
  std::vector<LetterString> vertices;
  Rational total_weight = 0;
};

std::string certificate_to_json(const CycleCertificate& cert);

// Cyclic string that replays the certificate: first letters around the cycle,
// concatenated rank times so every window wraps onto a cycle edge. Evaluating
// the original form cyclically on it gives rank * total_weight.
LetterString certificate_witness_string(const CycleCertificate& cert);

enum class CycleMode { ExactRational, FloatWithEpsilon };

struct CyclicCheckOptions {
  CycleMode mode = CycleMode::ExactRational;
  // Float mode only: weights with |value| < epsilon are treated as zero.
  double epsilon = 1e-9;
  // Added to every vertex weight; a positive slack tolerates rounded inputs.
  Rational slack = 0;
  // Alternate fixed relaxation order; the verdict must not depend on it.
  bool reverse_edge_order = false;
};

struct CyclicCheckResult {
  bool nonneg = false;
  std::optional<CycleCertificate> certificate;  // present iff !nonneg
};

// Whether the form is cyclically nonnegative: no negative cycle in the graph
// of its pure extension. Bellman-Ford from the all-u vertex; on failure the
// certificate names an explicit negative cycle. In float mode the verdict
// refers to the epsilon-rounded weights while the certificate's total_weight
// is still the exact sum.
CyclicCheckResult is_cyclically_nonneg(const CountingForm& w,
                                       const CyclicCheckOptions& options = {});

// Whether every cycle has total weight zero: nonneg for both w and -w.
bool is_cyclically_zero(const CountingForm& w);

// Expresses a pure form of rank s >= 2 in span{rho_v : v in Y^(s-1)}.
// Returns the coefficient vector indexed by clause_index over Y^(s-1), or
// nullopt when w lies outside the span.
std::optional<RationalVector> rho_span_membership(const CountingForm& w);

// Exhaustive oracle: minimum of eval_cyclic(w, y) over all strings of length
// rank(w) through max_len. Requires max_len >= rank(w); lengths above 12 are
// refused as a resource limit.
Rational brute_force_min_cyclic(const CountingForm& w, int max_len);

struct NonnegRhoDecomposition {
  CountingForm nonneg_part;        // coefficientwise nonnegative, pure
  RationalVector rho_coefficients; // indexed by clause_index over Y^(s-1)
};

// Searches for w = nonneg_part + sum_v c_v rho_v at pure rank s = rank(w).
// Existence is sufficient for cyclic nonnegativity; absence decides nothing.
std::optional<NonnegRhoDecomposition> find_nonneg_rho_decomposition(
    const CountingForm& w);

}  // namespace gridcast
