#include "gridcast/toom.hpp"

#include <stdexcept>
#include <vector>

#include "gridcast/rng.hpp"

namespace gridcast {

namespace {

// Noise slots per (level k, site (x1,x2)): 0 feeds the parent below in
// direction 1, 1 the parent in direction 2, 2 the vertical/self parent,
// 3 is the tie-break coin for two-parent sites.
constexpr std::uint64_t SLOT_D1 = 0, SLOT_D2 = 1, SLOT_SELF = 2, SLOT_COIN = 3;

struct NoiseStream {
  std::uint64_t seed;
  std::uint64_t salt;
  double delta;

  bool noise(int k, int x1, int x2, std::uint64_t slot) const {
    std::uint64_t h = hash_key(seed, salt, static_cast<std::uint64_t>(k),
                               static_cast<std::uint64_t>(x1),
                               static_cast<std::uint64_t>(x2), slot);
    return static_cast<double>(h >> 11) * 0x1.0p-53 < delta;
  }

  int coin(int k, int x1, int x2) const {
    return static_cast<int>(hash_key(seed, salt, static_cast<std::uint64_t>(k),
                                     static_cast<std::uint64_t>(x1),
                                     static_cast<std::uint64_t>(x2), SLOT_COIN) & 1);
  }
};

inline int maj3(int a, int b, int c) { return (a + b + c) >= 2 ? 1 : 0; }

// Triangle of bits indexed by (a, b) with a + b <= k; both processes happen
// to live on the same index set at level k.
struct Tri {
  int k = 0;
  std::vector<char> bits;

  explicit Tri(int level) : k(level), bits(static_cast<size_t>(level + 1) * (level + 2) / 2, 0) {}
  static size_t off(int a, int b, int k) {
    // rows by a: row a starts after sum_{i<a} (k+1-i)
    return static_cast<size_t>(a) * (2 * k + 3 - a) / 2 + static_cast<size_t>(b);
  }
  char get(int a, int b) const { return bits[off(a, b, k)]; }
  void set(int a, int b, char v) { bits[off(a, b, k)] = v; }
};

// 3D lattice side. Vertex v = (v1, v2, v3) at coordinate sum k+1, stored at
// (v1, v2). Cases follow the zero pattern of v; every vertex keys its noise
// by (k, v1, v2) regardless of which parents it ends up reading.
Tri step_lattice(const Tri& prev, const NoiseStream& ns) {
  const int k = prev.k;
  Tri next(k + 1);
  for (int v1 = 0; v1 <= k + 1; ++v1) {
    for (int v2 = 0; v1 + v2 <= k + 1; ++v2) {
      const int v3 = k + 1 - v1 - v2;
      int bit;
      if (v1 == 0 && v2 == 0) {
        bit = prev.get(0, 0) ^ ns.noise(k, v1, v2, SLOT_SELF);  // v - e3
      } else if (v1 == k + 1) {
        bit = prev.get(v1 - 1, 0) ^ ns.noise(k, v1, v2, SLOT_D1);
      } else if (v2 == k + 1) {
        bit = prev.get(0, v2 - 1) ^ ns.noise(k, v1, v2, SLOT_D2);
      } else if (v2 == 0 && v1 > 0 && v3 > 0) {
        bit = ns.coin(k, v1, v2) == 0
                  ? prev.get(v1, 0) ^ ns.noise(k, v1, v2, SLOT_SELF)
                  : prev.get(v1 - 1, 0) ^ ns.noise(k, v1, v2, SLOT_D1);
      } else if (v1 == 0 && v2 > 0 && v3 > 0) {
        bit = ns.coin(k, v1, v2) == 0
                  ? prev.get(0, v2) ^ ns.noise(k, v1, v2, SLOT_SELF)
                  : prev.get(0, v2 - 1) ^ ns.noise(k, v1, v2, SLOT_D2);
      } else if (v3 == 0) {  // v1, v2 > 0
        bit = ns.coin(k, v1, v2) == 0
                  ? prev.get(v1 - 1, v2) ^ ns.noise(k, v1, v2, SLOT_D1)
                  : prev.get(v1, v2 - 1) ^ ns.noise(k, v1, v2, SLOT_D2);
      } else {  // all three positive: noisy majority of the three parents
        bit = maj3(prev.get(v1 - 1, v2) ^ ns.noise(k, v1, v2, SLOT_D1),
                   prev.get(v1, v2 - 1) ^ ns.noise(k, v1, v2, SLOT_D2),
                   prev.get(v1, v2) ^ ns.noise(k, v1, v2, SLOT_SELF));
      }
      next.set(v1, v2, static_cast<char>(bit));
    }
  }
  return next;
}

// Triangular automaton side. Site x in the hat {x1 + x2 <= k+1}; the update
// is chosen by where x sits in the hat: origin and extreme corners copy one
// parent, hat edges flip a coin between two, the interior takes a noisy
// majority of {x - e1, x - e2, x}.
Tri step_automaton(const Tri& prev, const NoiseStream& ns) {
  const int k = prev.k;
  Tri next(k + 1);
  for (int x1 = 0; x1 <= k + 1; ++x1) {
    for (int x2 = 0; x1 + x2 <= k + 1; ++x2) {
      int bit;
      const bool on_diag = (x1 + x2 == k + 1);
      if (x1 == 0 && x2 == 0) {
        bit = prev.get(0, 0) ^ ns.noise(k, 0, 0, SLOT_SELF);
      } else if (x1 == k + 1) {
        bit = prev.get(k, 0) ^ ns.noise(k, x1, x2, SLOT_D1);
      } else if (x2 == k + 1) {
        bit = prev.get(0, k) ^ ns.noise(k, x1, x2, SLOT_D2);
      } else if (x2 == 0 && !on_diag) {  // bottom edge, 0 < x1 <= k
        bit = ns.coin(k, x1, x2) == 0
                  ? prev.get(x1, 0) ^ ns.noise(k, x1, x2, SLOT_SELF)
                  : prev.get(x1 - 1, 0) ^ ns.noise(k, x1, x2, SLOT_D1);
      } else if (x1 == 0 && !on_diag) {  // left edge, 0 < x2 <= k
        bit = ns.coin(k, x1, x2) == 0
                  ? prev.get(0, x2) ^ ns.noise(k, x1, x2, SLOT_SELF)
                  : prev.get(0, x2 - 1) ^ ns.noise(k, x1, x2, SLOT_D2);
      } else if (on_diag) {  // x1, x2 > 0
        bit = ns.coin(k, x1, x2) == 0
                  ? prev.get(x1 - 1, x2) ^ ns.noise(k, x1, x2, SLOT_D1)
                  : prev.get(x1, x2 - 1) ^ ns.noise(k, x1, x2, SLOT_D2);
      } else {  // strict interior of the hat
        bit = maj3(prev.get(x1 - 1, x2) ^ ns.noise(k, x1, x2, SLOT_D1),
                   prev.get(x1, x2 - 1) ^ ns.noise(k, x1, x2, SLOT_D2),
                   prev.get(x1, x2) ^ ns.noise(k, x1, x2, SLOT_SELF));
      }
      next.set(x1, x2, static_cast<char>(bit));
    }
  }
  return next;
}

}  // namespace

ToomReport toom_coupled_check(double delta, int K, std::uint64_t seed,
                              bool share_noise) {
  if (!(delta >= 0.0 && delta <= 0.5)) {
    throw std::invalid_argument("delta out of range [0, 1/2]");
  }
  if (K < 1) throw std::invalid_argument("K must be >= 1");

  NoiseStream lattice_ns{seed, 0, delta};
  NoiseStream automaton_ns{seed, share_noise ? 0ull : 1ull, delta};

  ToomReport report;
  Tri lattice(0), automaton(0);  // shared root bit 0
  for (int k = 1; k <= K; ++k) {
    lattice = step_lattice(lattice, lattice_ns);
    automaton = step_automaton(automaton, automaton_ns);
    for (int a = 0; a <= k && !report.first_mismatch; ++a) {
      for (int b = 0; a + b <= k; ++b) {
        if (lattice.get(a, b) != automaton.get(a, b)) {
          report.first_mismatch = ToomMismatch{k, a, b};
          break;
        }
      }
    }
    report.levels_checked = k;
    if (report.first_mismatch) break;
  }
  report.all_equal = !report.first_mismatch;
  return report;
}

}  // namespace gridcast
