#include "gridcast/simplex.hpp"

#include <algorithm>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "gridcast/rational.hpp"

namespace gridcast {
namespace {

constexpr long PIVOT_CAP = 200000;

// Dense tableau for the revised standard form min c.x, Ax = b, x >= 0 with
// b >= 0. Maintains T = B^-1 A row-major, rhs = B^-1 b, the reduced cost row
// and the current objective value.
struct Tableau {
  std::size_t m = 0;
  std::size_t n = 0;
  std::vector<Rational> t;  // m * n
  std::vector<Rational> rhs;
  std::vector<Rational> cost;
  Rational obj = 0;
  std::vector<std::size_t> basis;  // column basic in each row

  Rational& at(std::size_t i, std::size_t j) { return t[i * n + j]; }
  const Rational& at(std::size_t i, std::size_t j) const { return t[i * n + j]; }

  // Installs a fresh cost vector: reduced costs d = c - c_B T, obj = c_B rhs.
  void set_costs(const std::vector<Rational>& raw) {
    cost = raw;
    cost.resize(n, Rational(0));
    obj = 0;
    for (std::size_t i = 0; i < m; ++i) {
      const Rational f = raw.size() > basis[i] ? raw[basis[i]] : Rational(0);
      if (f == 0) continue;
      obj += f * rhs[i];
      const Rational* row = &t[i * n];
      for (std::size_t j = 0; j < n; ++j) {
        if (row[j] != 0) cost[j] -= f * row[j];
      }
    }
  }

  void pivot(std::size_t r, std::size_t c) {
    Rational piv = at(r, c);
    if (piv != 1) {
      Rational* row = &t[r * n];
      for (std::size_t j = 0; j < n; ++j) {
        if (row[j] != 0) row[j] /= piv;
      }
      rhs[r] /= piv;
    }
    const Rational* prow = &t[r * n];
    for (std::size_t i = 0; i < m; ++i) {
      if (i == r) continue;
      Rational f = at(i, c);
      if (f == 0) continue;
      Rational* row = &t[i * n];
      for (std::size_t j = 0; j < n; ++j) {
        if (prow[j] != 0) row[j] -= f * prow[j];
      }
      row[c] = 0;  // cancel exactly, no residual from the loop above
      if (rhs[r] != 0) rhs[i] -= f * rhs[r];
    }
    Rational f = cost[c];
    if (f != 0) {
      obj += f * rhs[r];
      for (std::size_t j = 0; j < n; ++j) {
        if (prow[j] != 0) cost[j] -= f * prow[j];
      }
      cost[c] = 0;
    }
    basis[r] = c;
  }

  // Entering column: Dantzig picks the most negative reduced cost, Bland the
  // lowest-index negative one. Returns n when optimal.
  std::size_t price(bool bland) const {
    std::size_t best = n;
    for (std::size_t j = 0; j < n; ++j) {
      if (cost[j] >= 0) continue;
      if (bland) return j;
      if (best == n || cost[j] < cost[best]) best = j;
    }
    return best;
  }

  // Leaving row by minimum ratio; ties broken toward the smallest basic
  // column index, which together with Bland pricing prevents cycling.
  std::size_t ratio_row(std::size_t c) const {
    std::size_t best = m;
    Rational best_ratio = 0;
    for (std::size_t i = 0; i < m; ++i) {
      const Rational& tic = at(i, c);
      if (tic <= 0) continue;
      Rational ratio = rhs[i] / tic;
      if (best == m || ratio < best_ratio ||
          (ratio == best_ratio && basis[i] < basis[best])) {
        best = i;
        best_ratio = ratio;
      }
    }
    return best;
  }

  LpStatus run(const SimplexOptions& options, long& pivots) {
    bool bland = options.bland_only;
    long stalled = 0;
    for (;;) {
      std::size_t c = price(bland);
      if (c == n) return LpStatus::Optimal;
      std::size_t r = ratio_row(c);
      if (r == m) return LpStatus::Unbounded;
      Rational before = obj;
      pivot(r, c);
      if (++pivots > PIVOT_CAP) {
        throw resource_limit_error("simplex exceeded " + std::to_string(PIVOT_CAP) +
                                   " pivots");
      }
      if (!options.bland_only) {
        if (obj == before) {
          if (++stalled >= options.degenerate_switch) bland = true;
        } else {
          stalled = 0;
          bland = false;
        }
      }
    }
  }
};

}  // namespace

LpResult simplex_solve(const RationalMatrix& a, const RationalVector& b,
                       const RationalVector& c, const SimplexOptions& options) {
  const std::size_t m = a.rows;
  const std::size_t n = a.cols;
  if (b.size() != m) throw std::invalid_argument("simplex: rhs size mismatch");
  if (c.size() != n) throw std::invalid_argument("simplex: cost size mismatch");

  // Orient every row so the right-hand side is nonnegative.
  std::vector<Rational> mat(a.data);
  std::vector<Rational> rhs(b);
  std::vector<bool> flipped(m, false);
  for (std::size_t i = 0; i < m; ++i) {
    if (rhs[i] < 0) {
      flipped[i] = true;
      rhs[i] = -rhs[i];
      for (std::size_t j = 0; j < n; ++j) mat[i * n + j] = -mat[i * n + j];
    }
  }

  // Crash basis: a column whose single nonzero sits in an unclaimed row can
  // serve as that row's basic column when the implied value stays >= 0.
  std::vector<std::size_t> basis(m, SIZE_MAX);
  {
    std::vector<std::size_t> nnz_row(n, SIZE_MAX);
    std::vector<int> nnz_count(n, 0);
    for (std::size_t i = 0; i < m; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        if (mat[i * n + j] != 0) {
          ++nnz_count[j];
          nnz_row[j] = i;
        }
      }
    }
    for (std::size_t j = 0; j < n; ++j) {
      if (nnz_count[j] != 1) continue;
      std::size_t i = nnz_row[j];
      if (basis[i] != SIZE_MAX) continue;
      const Rational& q = mat[i * n + j];
      if (rhs[i] == 0 || q > 0) basis[i] = j;
    }
  }

  std::vector<std::size_t> artificial_rows;
  for (std::size_t i = 0; i < m; ++i) {
    if (basis[i] == SIZE_MAX) artificial_rows.push_back(i);
  }
  const std::size_t na = artificial_rows.size();

  Tableau tab;
  tab.m = m;
  tab.n = n + na;
  tab.t.assign(m * tab.n, Rational(0));
  tab.rhs = rhs;
  tab.basis = basis;
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < n; ++j) tab.at(i, j) = mat[i * n + j];
  }
  for (std::size_t k = 0; k < na; ++k) {
    std::size_t i = artificial_rows[k];
    tab.basis[i] = n + k;
    tab.at(i, n + k) = 1;
  }
  // Normalize crash rows so each basic entry is exactly 1; singleton columns
  // appear in no other row, so no cross-row elimination is required.
  for (std::size_t i = 0; i < m; ++i) {
    if (tab.basis[i] >= n) continue;
    Rational q = tab.at(i, tab.basis[i]);
    if (q == 1) continue;
    for (std::size_t j = 0; j < tab.n; ++j) {
      if (tab.at(i, j) != 0) tab.at(i, j) /= q;
    }
    tab.rhs[i] /= q;
  }

  LpResult result;

  // Phase 1: drive the artificial variables to zero.
  if (na > 0) {
    std::vector<Rational> phase1(tab.n, Rational(0));
    for (std::size_t k = 0; k < na; ++k) phase1[n + k] = 1;
    tab.set_costs(phase1);
    LpStatus st = tab.run(options, result.pivots);
    if (st == LpStatus::Unbounded) {
      throw std::logic_error("simplex: phase 1 cannot be unbounded");
    }
    if (tab.obj != 0) {
      result.status = LpStatus::Infeasible;
      result.objective = tab.obj;
      // Simplex multipliers y = c_B B^-1 read off the artificial columns:
      // the reduced cost of artificial k is 1 - y_{row(k)}. Rows without an
      // artificial column get y from solving y B = c_B on the stored basis.
      result.farkas.assign(m, Rational(0));
      std::vector<bool> have(m, false);
      for (std::size_t k = 0; k < na; ++k) {
        result.farkas[artificial_rows[k]] = Rational(1) - tab.cost[n + k];
        have[artificial_rows[k]] = true;
      }
      bool all = std::all_of(have.begin(), have.end(), [](bool v) { return v; });
      if (!all) {
        // Row i of bt is the basis column of tableau row i in the oriented
        // system, so bt = B^T and solving bt y = c_B yields y^T B = c_B^T.
        RationalMatrix bt(m, m);
        RationalVector cb(m, Rational(0));
        for (std::size_t i = 0; i < m; ++i) {
          std::size_t col = tab.basis[i];
          if (col < n) {
            for (std::size_t r = 0; r < m; ++r) bt.at(i, r) = mat[r * n + col];
          } else {
            bt.at(i, artificial_rows[col - n]) = 1;
            cb[i] = 1;
          }
        }
        auto y = solve_linear(bt, cb);
        if (!y) throw std::logic_error("simplex: singular basis in farkas recovery");
        result.farkas = *y;
      }
      for (std::size_t i = 0; i < m; ++i) {
        if (flipped[i]) result.farkas[i] = -result.farkas[i];
      }
      return result;
    }
    // Remove artificials that linger in the basis at level zero: pivot them
    // out where possible, drop rows that turn out to be redundant.
    for (std::size_t i = 0; i < tab.m;) {
      if (tab.basis[i] < n) {
        ++i;
        continue;
      }
      std::size_t enter = n;
      for (std::size_t j = 0; j < n; ++j) {
        if (tab.at(i, j) != 0) {
          enter = j;
          break;
        }
      }
      if (enter < n) {
        tab.pivot(i, enter);
        ++i;
        continue;
      }
      std::size_t last = tab.m - 1;
      if (i != last) {
        for (std::size_t j = 0; j < tab.n; ++j) std::swap(tab.at(i, j), tab.at(last, j));
        std::swap(tab.rhs[i], tab.rhs[last]);
        std::swap(tab.basis[i], tab.basis[last]);
      }
      tab.m = last;
    }
    tab.t.resize(tab.m * tab.n);
    tab.rhs.resize(tab.m);
    tab.basis.resize(tab.m);
    // Strip the artificial columns; all are nonbasic now.
    if (na > 0) {
      std::vector<Rational> packed(tab.m * n);
      for (std::size_t i = 0; i < tab.m; ++i) {
        for (std::size_t j = 0; j < n; ++j) packed[i * n + j] = tab.at(i, j);
      }
      tab.t = std::move(packed);
      tab.n = n;
    }
  }

  // Phase 2 on the real objective.
  tab.set_costs(c);
  LpStatus st = tab.run(options, result.pivots);
  if (st == LpStatus::Unbounded) {
    result.status = LpStatus::Unbounded;
    return result;
  }
  result.status = LpStatus::Optimal;
  result.x.assign(n, Rational(0));
  for (std::size_t i = 0; i < tab.m; ++i) result.x[tab.basis[i]] = tab.rhs[i];
  result.objective = tab.obj;
  return result;
}

IneqResult solve_inequalities(const RationalMatrix& a, const RationalVector& b,
                              const std::vector<std::size_t>& pinned_zero_cols,
                              const std::vector<std::size_t>& l1_min_cols,
                              const SimplexOptions& options) {
  const std::size_t rows = a.rows;
  const std::size_t cols = a.cols;
  if (b.size() != rows) throw std::invalid_argument("solve_inequalities: rhs size mismatch");

  std::vector<bool> pinned(cols, false);
  for (std::size_t j : pinned_zero_cols) {
    if (j >= cols) throw std::invalid_argument("solve_inequalities: pinned column out of range");
    pinned[j] = true;
  }
  std::vector<bool> l1(cols, false);
  for (std::size_t j : l1_min_cols) {
    if (j >= cols) throw std::invalid_argument("solve_inequalities: l1 column out of range");
    if (pinned[j]) throw std::invalid_argument("solve_inequalities: l1 column is pinned");
    l1[j] = true;
  }

  // Free variables split as x = x+ - x-, one surplus column per row:
  // [A_split | -I] z = b with z >= 0.
  std::vector<std::size_t> live;
  for (std::size_t j = 0; j < cols; ++j) {
    if (!pinned[j]) live.push_back(j);
  }
  const std::size_t f = live.size();
  RationalMatrix std_a(rows, 2 * f + rows);
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t k = 0; k < f; ++k) {
      const Rational& v = a.at(i, live[k]);
      if (v == 0) continue;
      std_a.at(i, 2 * k) = v;
      std_a.at(i, 2 * k + 1) = -v;
    }
    std_a.at(i, 2 * f + i) = -1;
  }
  RationalVector cost(2 * f + rows, Rational(0));
  for (std::size_t k = 0; k < f; ++k) {
    if (l1[live[k]]) cost[2 * k] = cost[2 * k + 1] = 1;
  }

  LpResult lp = simplex_solve(std_a, b, cost, options);
  IneqResult out;
  out.pivots = lp.pivots;
  if (lp.status == LpStatus::Infeasible) {
    out.status = LpStatus::Infeasible;
    out.farkas = lp.farkas;
    return out;
  }
  if (lp.status == LpStatus::Unbounded) {
    out.status = LpStatus::Unbounded;
    return out;
  }
  out.status = LpStatus::Optimal;
  out.objective = lp.objective;
  out.x.assign(cols, Rational(0));
  for (std::size_t k = 0; k < f; ++k) {
    out.x[live[k]] = lp.x[2 * k] - lp.x[2 * k + 1];
  }
  return out;
}

}  // namespace gridcast
