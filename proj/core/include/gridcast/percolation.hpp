#pragma once

#include <cstdint>
#include <vector>

namespace gridcast {

// Per-level survival record of oriented bond percolation on the grid DAG.
// r_k / l_k are the extreme open-cluster positions, -1 once the cluster dies.
struct PercolationLevel {
  bool alive = false;
  int r_k = -1;
  int l_k = -1;
};

// Each of the 2(k+1) edges out of level k is open independently with
// probability p; a vertex is in the cluster when some open edge connects it
// to a cluster vertex above. Record 0 is the root (alive, r=l=0). Edge order
// matches the coupled simulator (left to right, lower before upper).
std::vector<PercolationLevel> simulate_percolation(double p, int max_depth,
                                                   std::uint64_t seed);

}  // namespace gridcast
