#pragma once

#include <vector>

#include "gridcast/gates.hpp"

namespace gridcast {

// Exact joint distributions of one level of the (marginal) grid chain, one
// array per root value. Index bit j of a state is vertex j of the level.
struct LevelDistributions {
  int k = 0;
  std::vector<double> plus;   // conditioned on root = 1
  std::vector<double> minus;  // conditioned on root = 0
};

inline constexpr int DEFAULT_K_MAX = 18;

// Forward propagation by a child-by-child sweep: each step emits one child
// and marginalizes out its left parent, so the live state never exceeds
// k+2 bits. Cost per level is O((k+2) * 2^{k+2}); memory is two arrays of
// 2^{k+2} doubles. Throws resource_limit_error when k > k_max.
LevelDistributions forward_distributions(const GateRule& rule, double delta,
                                         int k, int k_max = DEFAULT_K_MAX);

// Total variation distance between the two root-conditional level-k laws.
double exact_tv_distance(const GateRule& rule, double delta, int k,
                         int k_max = DEFAULT_K_MAX);

// Minimum achievable probability of error for guessing the root from level k:
// (1 - TV)/2 under the uniform root prior.
double exact_ml_error(const GateRule& rule, double delta, int k,
                      int k_max = DEFAULT_K_MAX);

// Mutual information I(root; level k) in nats, from the same distributions.
double mutual_information(const GateRule& rule, double delta, int k,
                          int k_max = DEFAULT_K_MAX);

// log(2) * (2*(1-2*delta)^2)^k: the aggregate contraction bound on I(root;
// level k) in nats. Decreasing in k exactly when delta is above the
// strong-data-processing threshold (1 - 1/sqrt(2))/2 ~ 0.146447.
double mi_upper_bound(double delta, int k);

// log(k) / (d * log(1/(2*delta))): the layer-size threshold below which
// reconstruction fails on any DAG of bounded indegree d. k may be fractional;
// requires k >= 2, d >= 1, 0 < delta < 1/2.
double layer_growth_bound(double delta, int d, double k);

}  // namespace gridcast
