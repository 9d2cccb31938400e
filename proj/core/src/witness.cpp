#include "gridcast/witness.hpp"

#include <algorithm>
#include <array>
#include <sstream>
#include <stdexcept>
#include <utility>

#include "json_util.hpp"

namespace gridcast {

using jsonutil::rational_from_json;
using jsonutil::rational_to_json;

namespace {

std::size_t pow3sz(int n) {
  std::size_t p = 1;
  while (n-- > 0) p *= 3;
  return p;
}

using Poly = std::vector<Rational>;  // coefficients by ascending power of delta

Poly poly_mul(const Poly& a, const Poly& b) {
  if (a.empty() || b.empty()) return {};
  Poly out(a.size() + b.size() - 1, Rational(0));
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) {
      if (b[j] != 0) out[i + j] += a[i] * b[j];
    }
  }
  return out;
}

Rational poly_eval(const Poly& p, const Rational& x) {
  Rational acc = 0;
  for (std::size_t i = p.size(); i-- > 0;) acc = acc * x + p[i];
  return acc;
}

// Coupled channel as polynomials in delta, indexed [input][output] with the
// Letter encoding Zero=0, One=1, U=2. A pure letter flips with probability
// delta and never becomes u; u resolves to either pure letter with
// probability delta each.
std::array<std::array<Poly, 3>, 3> channel_polys() {
  Poly zero = {};
  Poly d = {Rational(0), Rational(1)};
  Poly one_minus_d = {Rational(1), Rational(-1)};
  Poly one_minus_2d = {Rational(1), Rational(-2)};
  return {{{one_minus_d, d, zero}, {d, one_minus_d, zero}, {d, d, one_minus_2d}}};
}

// Window kernel: probability that a child below the adjacent pair (a, b)
// reads g, as a polynomial in delta. Product of two channel draws pushed
// through the gate.
std::array<std::array<Poly, 3>, 9> window_polys(const GateRule& rule) {
  auto w = channel_polys();
  std::array<std::array<Poly, 3>, 9> out;
  for (int a = 0; a < 3; ++a) {
    for (int b = 0; b < 3; ++b) {
      for (int ap = 0; ap < 3; ++ap) {
        if (w[a][ap].empty()) continue;
        for (int bp = 0; bp < 3; ++bp) {
          if (w[b][bp].empty()) continue;
          Letter g = rule.coupled(static_cast<Letter>(ap), static_cast<Letter>(bp));
          Poly term = poly_mul(w[a][ap], w[b][bp]);
          Poly& slot = out[a * 3 + b][letter_digit(g)];
          if (slot.size() < term.size()) slot.resize(term.size(), Rational(0));
          for (std::size_t i = 0; i < term.size(); ++i) slot[i] += term[i];
        }
      }
    }
  }
  return out;
}

std::vector<int> index_digits(std::size_t index, int len) {
  std::vector<int> d(static_cast<std::size_t>(len));
  for (int i = len - 1; i >= 0; --i) {
    d[static_cast<std::size_t>(i)] = static_cast<int>(index % 3);
    index /= 3;
  }
  return d;
}

std::vector<std::size_t> all_pure_indices(int rank) {
  std::vector<std::size_t> out;
  for (std::size_t v = 0; v < pow3sz(rank); ++v) {
    std::size_t x = v;
    bool pure = true;
    while (x > 0) {
      if (x % 3 == 2) {
        pure = false;
        break;
      }
      x /= 3;
    }
    if (pure) out.push_back(v);
  }
  return out;
}

}  // namespace

TransitionMatrix build_transition_matrix(int s, const Rational& delta,
                                         const GateRule& rule) {
  if (s < 1) throw std::invalid_argument("build_transition_matrix: s must be >= 1");
  const std::size_t rows = pow3sz(s + 1);
  const std::size_t cols = pow3sz(s);
  TransitionMatrix tm;
  tm.s = s;
  tm.delta = delta;
  tm.entries = RationalMatrix(rows, cols);
  tm.coeffs.assign(static_cast<std::size_t>(2 * s + 1), RationalMatrix(rows, cols));

  auto win = window_polys(rule);
  for (std::size_t y = 0; y < rows; ++y) {
    std::vector<int> yd = index_digits(y, s + 1);
    for (std::size_t v = 0; v < cols; ++v) {
      std::vector<int> vd = index_digits(v, s);
      Poly p = {Rational(1)};
      for (int k = 0; k < s && !p.empty(); ++k) {
        p = poly_mul(p, win[yd[k] * 3 + yd[k + 1]][vd[k]]);
      }
      for (std::size_t i = 0; i < p.size(); ++i) {
        if (p[i] != 0) tm.coeffs[i].at(y, v) = p[i];
      }
      tm.entries.at(y, v) = poly_eval(p, delta);
    }
  }
  return tm;
}

RationalMatrix transition_at(const TransitionMatrix& tm, const Rational& delta) {
  RationalMatrix out(tm.entries.rows, tm.entries.cols);
  Rational power = 1;
  for (const RationalMatrix& c : tm.coeffs) {
    for (std::size_t i = 0; i < out.data.size(); ++i) {
      if (c.data[i] != 0) out.data[i] += c.data[i] * power;
    }
    power *= delta;
  }
  return out;
}

RationalMatrix build_purify_matrix(int s) {
  if (s < 1) throw std::invalid_argument("build_purify_matrix: s must be >= 1");
  RationalMatrix p(pow3sz(s + 1), pow3sz(s));
  for (std::size_t row = 0; row < p.rows; ++row) p.at(row, row / 3) = 1;
  return p;
}

IncidenceSet build_incidence(int r) {
  if (r < 1) throw std::invalid_argument("build_incidence: r must be >= 1");
  const std::size_t nv = pow3sz(r);
  const std::size_t ne = nv * 3;
  IncidenceSet inc;
  inc.r = r;
  inc.b_in = RationalMatrix(nv, ne);
  inc.b_out = RationalMatrix(nv, ne);
  inc.b = RationalMatrix(nv, ne);
  for (std::size_t e = 0; e < ne; ++e) {
    std::size_t src = e / 3;
    std::size_t dst = e % nv;
    inc.b_out.at(src, e) = 1;
    inc.b_in.at(dst, e) = 1;
    if (src != dst) {
      inc.b.at(src, e) = 1;
      inc.b.at(dst, e) = -1;
    }
  }
  return inc;
}

RationalVector build_psi(int r) {
  if (r < 1) throw std::invalid_argument("build_psi: r must be >= 1");
  const std::size_t nv = pow3sz(r);
  const std::size_t block = nv / 3;
  RationalVector psi(nv, Rational(0));
  for (std::size_t v = 2 * block; v < nv; ++v) psi[v] = 1;
  return psi;
}

WitnessLP assemble_lp(const Rational& delta, int r, const GateRule& rule) {
  if (r < 2) throw std::invalid_argument("assemble_lp: r must be >= 2");
  const std::size_t na = pow3sz(r - 1);
  const std::size_t nv = pow3sz(r);
  const std::size_t ne = nv * 3;

  TransitionMatrix tm = build_transition_matrix(r - 1, delta, rule);
  RationalMatrix purify = build_purify_matrix(r - 1);
  RationalVector psi = build_psi(r);

  WitnessLP lp;
  lp.delta = delta;
  lp.r = r;
  lp.a = RationalMatrix(2 * ne, na + 2 * nv);
  lp.xi.assign(2 * ne, Rational(0));

  for (std::size_t e = 0; e < ne; ++e) {
    const std::size_t src = e / 3;
    const std::size_t dst = e % nv;
    // Top block: edge weights of w - E(w) plus a potential difference.
    for (std::size_t j = 0; j < na; ++j) {
      Rational m = purify.at(src, j) - tm.entries.at(src, j);
      if (m != 0) lp.a.at(e, j) = m;
    }
    lp.a.at(e, na + src) += 1;
    lp.a.at(e, na + dst) -= 1;
    // Bottom block: edge weights of w - {u} plus the second potential.
    for (std::size_t j = 0; j < na; ++j) {
      const Rational& m = purify.at(src, j);
      if (m != 0) lp.a.at(ne + e, j) = m;
    }
    lp.a.at(ne + e, na + nv + src) += 1;
    lp.a.at(ne + e, na + nv + dst) -= 1;
    lp.xi[ne + e] = psi[src];
  }
  lp.pinned_zero_indices = all_pure_indices(r - 1);
  return lp;
}

WitnessSolveResult solve_feasibility(const WitnessLP& lp,
                                     const SolveFeasibilityOptions& options) {
  const std::size_t na = pow3sz(lp.r - 1);
  const std::size_t nv = pow3sz(lp.r);

  std::vector<std::size_t> l1_cols;
  if (options.minimize_l1_alpha) {
    std::vector<bool> pinned(na, false);
    for (std::size_t j : lp.pinned_zero_indices) pinned[j] = true;
    for (std::size_t j = 0; j < na; ++j) {
      if (!pinned[j]) l1_cols.push_back(j);
    }
  }

  IneqResult sol = solve_inequalities(lp.a, lp.xi, lp.pinned_zero_indices, l1_cols,
                                      options.simplex);
  WitnessSolveResult out;
  out.pivots = sol.pivots;
  if (sol.status != LpStatus::Optimal) {
    out.status = sol.status;
    out.farkas = sol.farkas;
    return out;
  }

  RationalVector residual = matvec(lp.a, sol.x);
  for (std::size_t i = 0; i < residual.size(); ++i) {
    if (residual[i] < lp.xi[i]) {
      throw std::logic_error("solve_feasibility: solver returned a violated row");
    }
  }

  out.status = LpStatus::Optimal;
  out.witness.delta = lp.delta;
  out.witness.alpha.rank = lp.r - 1;
  out.witness.alpha.entries.assign(sol.x.begin(),
                                   sol.x.begin() + static_cast<long>(na));
  out.witness.z1.assign(sol.x.begin() + static_cast<long>(na),
                        sol.x.begin() + static_cast<long>(na + nv));
  out.witness.z2.assign(sol.x.begin() + static_cast<long>(na + nv), sol.x.end());
  return out;
}

VerifyReport verify_witness(const CoeffVector& alpha, const Rational& delta,
                            const Rational& c, const Rational& tolerance,
                            const GateRule& rule) {
  if (c <= 0) throw std::invalid_argument("verify_witness: C must be positive");
  CountingForm w = from_coeff_vector(alpha);

  VerifyReport report;
  report.checks.push_back({"u_only", w.u_only(), std::nullopt});

  CyclicCheckOptions opt;
  opt.slack = tolerance;

  CountingForm super = w - cond_expectation(w, rule, delta);
  CyclicCheckResult r1 = is_cyclically_nonneg(super, opt);
  report.checks.push_back({"supermartingale", r1.nonneg, r1.certificate});

  CountingForm floor_u;
  floor_u.add("u", c);
  CyclicCheckResult r2 = is_cyclically_nonneg(w - floor_u, opt);
  report.checks.push_back({"minorize_u", r2.nonneg, r2.certificate});

  report.all_passed = std::all_of(report.checks.begin(), report.checks.end(),
                                  [](const VerifyCheck& ch) { return ch.passed; });
  return report;
}

namespace {

nlohmann::json report_json(const VerifyReport& report) {
  nlohmann::json checks = nlohmann::json::object();
  for (const auto& ch : report.checks) checks[ch.name] = ch.passed;
  checks["all"] = report.all_passed;
  return checks;
}

}  // namespace

std::string verify_report_to_json(const VerifyReport& report) {
  nlohmann::json j;
  j["all_passed"] = report.all_passed;
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& ch : report.checks) {
    nlohmann::json cj;
    cj["name"] = ch.name;
    cj["passed"] = ch.passed;
    if (ch.certificate) {
      cj["certificate"] = nlohmann::json::parse(certificate_to_json(*ch.certificate));
    }
    arr.push_back(std::move(cj));
  }
  j["checks"] = std::move(arr);
  return j.dump();
}

std::string witness_to_json(const Witness& w) {
  nlohmann::json j;
  j["delta"] = rational_to_json(w.delta);
  j["r"] = w.alpha.rank + 1;
  nlohmann::json alpha = nlohmann::json::array();
  for (const Rational& v : w.alpha.entries) alpha.push_back(rational_to_json(v));
  j["alpha"] = std::move(alpha);
  auto emit_vec = [&](const char* key, const RationalVector& vec) {
    if (vec.empty()) return;
    nlohmann::json arr = nlohmann::json::array();
    for (const Rational& v : vec) arr.push_back(rational_to_json(v));
    j[key] = std::move(arr);
  };
  emit_vec("z1", w.z1);
  emit_vec("z2", w.z2);
  if (w.verified) j["checks"] = report_json(*w.verified);
  return j.dump(2);
}

Witness witness_from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw std::invalid_argument(std::string("witness JSON: ") + e.what());
  }
  if (!j.is_object() || !j.contains("delta") || !j.contains("r") ||
      !j.contains("alpha")) {
    throw std::invalid_argument("witness JSON: need delta, r and alpha fields");
  }
  Witness w;
  w.delta = rational_from_json(j["delta"]);
  int r = j["r"].get<int>();
  if (r < 2) throw std::invalid_argument("witness JSON: r must be >= 2");
  w.alpha.rank = r - 1;
  const auto& alpha = j["alpha"];
  if (!alpha.is_array() || alpha.size() != pow3sz(r - 1)) {
    throw std::invalid_argument("witness JSON: alpha must have 3^(r-1) entries");
  }
  for (const auto& v : alpha) w.alpha.entries.push_back(rational_from_json(v));
  auto read_vec = [&](const char* key, RationalVector& vec) {
    if (!j.contains(key)) return;
    for (const auto& v : j[key]) vec.push_back(rational_from_json(v));
  };
  read_vec("z1", w.z1);
  read_vec("z2", w.z2);
  return w;
}

std::string witness_to_csv(const Witness& w) {
  std::ostringstream out;
  out << "index,pattern,num,den,value\n";
  for (std::size_t i = 0; i < w.alpha.entries.size(); ++i) {
    const Rational& v = w.alpha.entries[i];
    out << i << ',' << index_to_clause(i, w.alpha.rank) << ','
        << boost::multiprecision::numerator(v) << ','
        << boost::multiprecision::denominator(v) << ',' << to_double(v) << '\n';
  }
  return out.str();
}

RationalVector appendix_w0_star() {
  static const int raw[27] = {0, 0, 0, 0, 0, 1, -2, 0, 0, 0, 0, 0, 0, 0,
                              0, 1, 1, 1, 2, 2, 2, 4, 3, 3, 2, 2, 2};
  return RationalVector(std::begin(raw), std::end(raw));
}

RationalVector appendix_w1_star() {
  static const int raw[27] = {0, 0, 2, 0, 0, 4, 4, 4, 3, 0, 0, 4, 0, 0,
                              4, 4, 4, 4, 2, 4, 4, 4, 4, 4, 3, 4, 2};
  return RationalVector(std::begin(raw), std::end(raw));
}

namespace {

struct PerturbationData {
  RationalMatrix m;      // P3 - C3^(0), 81 x 27
  RationalMatrix d;      // rho generators at pure rank 4, 81 x 19
  RationalVector c1w0;   // C3^(1) w0*, 81
};

PerturbationData build_perturbation_data() {
  const GateRule& rule = GateRule::get(GateKind::Nand);
  TransitionMatrix tm = build_transition_matrix(3, 0, rule);
  RationalMatrix purify = build_purify_matrix(3);

  PerturbationData data;
  data.m = RationalMatrix(81, 27);
  for (std::size_t i = 0; i < 81; ++i) {
    for (std::size_t j = 0; j < 27; ++j) {
      data.m.at(i, j) = purify.at(i, j) - tm.coeffs[0].at(i, j);
    }
  }

  std::vector<bool> pure(27, false);
  for (std::size_t j : all_pure_indices(3)) pure[j] = true;
  data.d = RationalMatrix(81, 19);
  std::size_t col = 0;
  for (std::size_t v = 0; v < 27; ++v) {
    if (pure[v]) continue;
    CoeffVector rv = to_coeff_vector(rho(index_to_clause(v, 3)));
    for (std::size_t i = 0; i < 81; ++i) data.d.at(i, col) = rv.entries[i];
    ++col;
  }

  data.c1w0 = matvec(tm.coeffs[1], appendix_w0_star());
  return data;
}

}  // namespace

PerturbationResult perturbation_lp() {
  PerturbationData data = build_perturbation_data();
  RationalMatrix a(81, 27 + 19);
  for (std::size_t i = 0; i < 81; ++i) {
    for (std::size_t j = 0; j < 27; ++j) a.at(i, j) = data.m.at(i, j);
    for (std::size_t j = 0; j < 19; ++j) a.at(i, 27 + j) = data.d.at(i, j);
  }
  PerturbationResult out;
  IneqResult sol = solve_inequalities(a, data.c1w0, all_pure_indices(3));
  out.status = sol.status;
  out.pivots = sol.pivots;
  if (sol.status != LpStatus::Optimal) {
    out.farkas = sol.farkas;
    return out;
  }
  out.w_hat_1.assign(sol.x.begin(), sol.x.begin() + 27);
  out.x_1.assign(sol.x.begin() + 27, sol.x.end());
  return out;
}

std::optional<RationalVector> perturbation_x1_for(const RationalVector& w_hat_1) {
  if (w_hat_1.size() != 27) {
    throw std::invalid_argument("perturbation_x1_for: w_hat_1 must have 27 entries");
  }
  PerturbationData data = build_perturbation_data();
  RationalVector rhs = data.c1w0;
  RationalVector mw = matvec(data.m, w_hat_1);
  for (std::size_t i = 0; i < rhs.size(); ++i) rhs[i] -= mw[i];
  IneqResult sol = solve_inequalities(data.d, rhs, {});
  if (sol.status != LpStatus::Optimal) return std::nullopt;
  return sol.x;
}

std::optional<RationalVector> zeroth_order_rho_combination() {
  PerturbationData data = build_perturbation_data();
  RationalVector target = matvec(data.m, appendix_w0_star());
  return solve_linear(data.d, target);
}

}  // namespace gridcast
