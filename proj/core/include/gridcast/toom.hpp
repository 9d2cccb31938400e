#pragma once

#include <cstdint>
#include <optional>

namespace gridcast {

struct ToomMismatch {
  int level = 0;
  int x1 = 0;
  int x2 = 0;
};

struct ToomReport {
  bool all_equal = false;
  std::optional<ToomMismatch> first_mismatch;
  int levels_checked = 0;
};

// Runs the noisy 3-majority dynamics twice: once as the 3D lattice process
// (vertices classified by their zero coordinates) and once as the triangular
// 2D automaton with boundary self-copies (sites classified by their position
// in the hat). Both consume noise and tie-break coins from the same keyed
// stream, so the two case analyses must produce identical bits at every
// vertex (X_v == xi_{v1+v2+v3}(v1, v2)) up to coordinate sum K.
// share_noise=false salts the automaton's stream differently: the negative
// control, expected to diverge quickly for delta > 0.
ToomReport toom_coupled_check(double delta, int K, std::uint64_t seed,
                              bool share_noise = true);

}  // namespace gridcast
