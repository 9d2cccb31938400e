#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "gridcast/gates.hpp"
#include "gridcast/rng.hpp"

namespace gridcast {

// One level of the coupled chain: level k holds k+1 letters.
struct CoupledLayer {
  int level = 0;
  std::vector<Letter> letters;
};

struct TrajectoryStats {
  std::vector<std::uint64_t> n_u_per_level;  // N_k for k = 0..max_depth
  std::optional<int> coupling_time;          // first level with N_k == 0
  int max_depth = 0;
  std::uint64_t seed = 0;
};

// One pass of the coupled edge channel: keeps a definite letter with
// probability 1-delta (flips it w.p. delta); from U goes to Zero or One
// w.p. delta each and stays U w.p. 1-2*delta. Throws std::invalid_argument
// unless 0 <= delta <= 1/2.
Letter coupled_channel_step(Letter letter, double delta, Rng& rng);

// Runs the coupled chain from the root mark down to max_depth levels.
// Boundary vertices copy their single noisy parent; interior vertices apply
// the rule's coupled gate to (left parent output, right parent output).
// Per-level noise order is fixed (parents left to right, lower edge before
// upper edge) so a seed pins the whole trajectory. Once a level has no U the
// chain is deterministic-equal in both runs; remaining levels are recorded
// as zero without further sampling.
TrajectoryStats simulate_coupled_grid(const GateRule& rule, double delta,
                                      int max_depth, std::uint64_t seed);

}  // namespace gridcast
