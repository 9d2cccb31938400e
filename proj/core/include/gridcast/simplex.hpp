#pragma once

#include <cstddef>
#include <vector>

#include "gridcast/linalg.hpp"

namespace gridcast {

enum class LpStatus { Optimal, Infeasible, Unbounded };

struct SimplexOptions {
  // Pure Bland pricing from the first pivot (reference anticycling mode).
  bool bland_only = false;
  // Consecutive non-improving pivots tolerated under Dantzig pricing before
  // switching to Bland's rule; reverts once the objective moves.
  long degenerate_switch = 40;
};

struct LpResult {
  LpStatus status = LpStatus::Infeasible;
  RationalVector x;        // size n on Optimal
  Rational objective = 0;  // c.x on Optimal; phase-1 infeasibility gap otherwise
  // On Infeasible: y with y.A <= 0 componentwise and y.b > 0 (for the
  // original row orientation), certifying that Ax = b, x >= 0 is empty.
  RationalVector farkas;
  long pivots = 0;
};

// min c.x subject to A x = b, x >= 0, by two-phase primal simplex on exact
// rationals. Rows with negative b are flipped internally; singleton columns
// seed the initial basis so artificials are only created where needed.
LpResult simplex_solve(const RationalMatrix& a, const RationalVector& b,
                       const RationalVector& c, const SimplexOptions& options = {});

struct IneqResult {
  LpStatus status = LpStatus::Infeasible;
  RationalVector x;        // size = a.cols, pinned entries zero
  RationalVector farkas;   // on Infeasible: y >= 0, y.A = 0 on free cols, y.b > 0
  Rational objective = 0;  // sum of |x_j| over l1_min_cols when requested
  long pivots = 0;
};

// Feasibility of A x >= b with all variables free (split into differences of
// nonnegative parts internally); columns in pinned_zero_cols are forced to 0.
// When l1_min_cols is nonempty, a second phase minimizes sum |x_j| over them.
IneqResult solve_inequalities(const RationalMatrix& a, const RationalVector& b,
                              const std::vector<std::size_t>& pinned_zero_cols,
                              const std::vector<std::size_t>& l1_min_cols = {},
                              const SimplexOptions& options = {});

}  // namespace gridcast
