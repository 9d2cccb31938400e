#include "gridcast/grid.hpp"

#include <algorithm>
#include <stdexcept>

namespace gridcast {

Letter coupled_channel_step(Letter letter, double delta, Rng& rng) {
  if (!(delta >= 0.0 && delta <= 0.5)) {
    throw std::invalid_argument("delta out of range [0, 1/2]");
  }
  double x = rng.next_u01();
  if (letter == Letter::U) {
    if (x < delta) return Letter::Zero;
    if (x < 2 * delta) return Letter::One;
    return Letter::U;
  }
  if (x < delta) return letter == Letter::Zero ? Letter::One : Letter::Zero;
  return letter;
}

TrajectoryStats simulate_coupled_grid(const GateRule& rule, double delta,
                                      int max_depth, std::uint64_t seed) {
  if (max_depth < 1) throw std::invalid_argument("max_depth must be >= 1");
  if (!(delta >= 0.0 && delta <= 0.5)) {
    throw std::invalid_argument("delta out of range [0, 1/2]");
  }

  TrajectoryStats stats;
  stats.max_depth = max_depth;
  stats.seed = seed;
  stats.n_u_per_level.assign(static_cast<size_t>(max_depth) + 1, 0);

  Rng rng(seed);
  std::vector<Letter> cur{rule.root_letter()}, nxt;
  stats.n_u_per_level[0] = 1;

  for (int k = 0; k < max_depth; ++k) {
    const int n = static_cast<int>(cur.size());  // n == k+1
    nxt.assign(static_cast<size_t>(n) + 1, Letter::Zero);
    // lower[j] feeds child j, upper[j] feeds child j+1.
    Letter prev_upper = Letter::Zero;
    for (int j = 0; j < n; ++j) {
      Letter lower = coupled_channel_step(cur[j], delta, rng);
      Letter upper = coupled_channel_step(cur[j], delta, rng);
      nxt[j] = (j == 0) ? lower : rule.coupled(prev_upper, lower);
      prev_upper = upper;
    }
    nxt[n] = prev_upper;

    std::uint64_t n_u = static_cast<std::uint64_t>(
        std::count(nxt.begin(), nxt.end(), Letter::U));
    stats.n_u_per_level[static_cast<size_t>(k) + 1] = n_u;
    if (n_u == 0) {
      stats.coupling_time = k + 1;
      break;  // U can never reappear; remaining levels stay zero
    }
    cur.swap(nxt);
  }

  return stats;
}

}  // namespace gridcast
