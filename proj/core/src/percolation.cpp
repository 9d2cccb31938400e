#include "gridcast/percolation.hpp"

#include <stdexcept>

#include "gridcast/rng.hpp"

namespace gridcast {

std::vector<PercolationLevel> simulate_percolation(double p, int max_depth,
                                                   std::uint64_t seed) {
  if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("p out of range [0, 1]");
  if (max_depth < 1) throw std::invalid_argument("max_depth must be >= 1");

  std::vector<PercolationLevel> out;
  out.reserve(static_cast<size_t>(max_depth) + 1);
  out.push_back({true, 0, 0});

  Rng rng(seed);
  std::vector<char> cur{1}, nxt;
  for (int k = 0; k < max_depth; ++k) {
    const int n = static_cast<int>(cur.size());
    nxt.assign(static_cast<size_t>(n) + 1, 0);
    for (int j = 0; j < n; ++j) {
      bool lower = rng.bernoulli(p);  // edge to child j
      bool upper = rng.bernoulli(p);  // edge to child j+1
      if (cur[j]) {
        if (lower) nxt[j] = 1;
        if (upper) nxt[j + 1] = 1;
      }
    }
    PercolationLevel rec;
    for (int j = 0; j <= n; ++j) {
      if (!nxt[j]) continue;
      if (!rec.alive) rec.l_k = j;
      rec.r_k = j;
      rec.alive = true;
    }
    out.push_back(rec);
    if (!rec.alive) {
      // Dead cluster stays dead; fill the remaining levels without sampling.
      out.resize(static_cast<size_t>(max_depth) + 1, rec);
      break;
    }
    cur.swap(nxt);
  }
  return out;
}

}  // namespace gridcast
