#include "gridcast/exact_engine.hpp"

#include <cmath>
#include <stdexcept>

#include "gridcast/rational.hpp"

namespace gridcast {

namespace {

void check_delta(double delta) {
  if (!(delta >= 0.0 && delta <= 0.5)) {
    throw std::invalid_argument("delta out of range [0, 1/2]");
  }
}

struct Kernels {
  // pbound[p][b]: one noisy copy of parent bit p.
  double pbound[2][2];
  // pint[pl][pr][b]: gate applied to independently noised parent bits.
  double pint[2][2][2];
};

Kernels make_kernels(const GateRule& rule, double delta) {
  Kernels kk{};
  for (int p = 0; p < 2; ++p) {
    kk.pbound[p][p] = 1.0 - delta;
    kk.pbound[p][1 - p] = delta;
  }
  for (int pl = 0; pl < 2; ++pl)
    for (int pr = 0; pr < 2; ++pr)
      for (int na = 0; na < 2; ++na)
        for (int nb = 0; nb < 2; ++nb) {
          int out = rule.marginal(pl ^ na, pr ^ nb);
          kk.pint[pl][pr][out] += (na ? delta : 1.0 - delta) * (nb ? delta : 1.0 - delta);
        }
  return kk;
}

// Expands the level-k distribution (k+1 vertices, one per index bit) into the
// level-(k+1) distribution. Children are emitted left to right; emitting
// child j overwrites the bit of parent j-1, which no later child reads.
std::vector<double> advance_level(const std::vector<double>& level, int k,
                                  const Kernels& kk) {
  const size_t child_states = 1ull << (k + 2);
  std::vector<double> cur(child_states, 0.0), nxt(child_states, 0.0);
  for (size_t p = 0; p < level.size(); ++p) cur[p << 1] = level[p];  // parent i -> bit i+1

  for (int j = 0; j <= k + 1; ++j) {
    std::fill(nxt.begin(), nxt.end(), 0.0);
    const std::uint64_t jbit = 1ull << j;
    for (size_t s = 0; s < child_states; ++s) {
      const double w = cur[s];
      if (w == 0.0) continue;
      double pr0;
      if (j == 0) {
        pr0 = kk.pbound[(s >> 1) & 1][0];
      } else if (j == k + 1) {
        pr0 = kk.pbound[(s >> (k + 1)) & 1][0];
      } else {
        pr0 = kk.pint[(s >> j) & 1][(s >> (j + 1)) & 1][0];
      }
      const size_t base = s & ~jbit;
      nxt[base] += w * pr0;
      nxt[base | jbit] += w * (1.0 - pr0);
    }
    cur.swap(nxt);
  }
  return cur;  // children occupy bits 0..k+1

}

double kahan_sum(const std::vector<double>& terms) {
  double sum = 0.0, comp = 0.0;
  for (double t : terms) {
    double y = t - comp;
    double u = sum + y;
    comp = (u - sum) - y;
    sum = u;
  }
  return sum;
}

}  // namespace

LevelDistributions forward_distributions(const GateRule& rule, double delta,
                                         int k, int k_max) {
  check_delta(delta);
  if (k < 0) throw std::invalid_argument("k must be >= 0");
  if (k > k_max) {
    throw resource_limit_error(
        "level " + std::to_string(k) + " exceeds k_max=" + std::to_string(k_max) +
        " (2^{k+2} doubles per buffer); raise k_max explicitly to proceed");
  }
  const Kernels kk = make_kernels(rule, delta);
  LevelDistributions out;
  out.k = k;
  out.plus = {0.0, 1.0};
  out.minus = {1.0, 0.0};
  for (int level = 0; level < k; ++level) {
    out.plus = advance_level(out.plus, level, kk);
    out.minus = advance_level(out.minus, level, kk);
  }
  return out;
}

double exact_tv_distance(const GateRule& rule, double delta, int k, int k_max) {
  if (k < 1) throw std::invalid_argument("k must be >= 1");
  LevelDistributions d = forward_distributions(rule, delta, k, k_max);
  std::vector<double> terms(d.plus.size());
  for (size_t x = 0; x < d.plus.size(); ++x) terms[x] = std::abs(d.plus[x] - d.minus[x]);
  return 0.5 * kahan_sum(terms);
}

double exact_ml_error(const GateRule& rule, double delta, int k, int k_max) {
  return 0.5 * (1.0 - exact_tv_distance(rule, delta, k, k_max));
}

double mutual_information(const GateRule& rule, double delta, int k, int k_max) {
  LevelDistributions d = forward_distributions(rule, delta, k, k_max);
  std::vector<double> terms(d.plus.size());
  for (size_t x = 0; x < d.plus.size(); ++x) {
    const double p = d.plus[x], m = d.minus[x];
    const double mix = 0.5 * (p + m);
    double t = 0.0;
    if (p > 0.0) t += 0.5 * p * std::log(p / mix);
    if (m > 0.0) t += 0.5 * m * std::log(m / mix);
    terms[x] = t;
  }
  double mi = kahan_sum(terms);
  return mi < 0.0 ? 0.0 : mi;  // clamp -0.0-scale round-off
}

double mi_upper_bound(double delta, int k) {
  check_delta(delta);
  if (k < 0) throw std::invalid_argument("k must be >= 0");
  const double c = 1.0 - 2.0 * delta;
  return std::log(2.0) * std::pow(2.0 * c * c, k);
}

double layer_growth_bound(double delta, int d, double k) {
  if (!(delta > 0.0 && delta < 0.5)) {
    throw std::invalid_argument("delta must lie strictly inside (0, 1/2)");
  }
  if (d < 1) throw std::invalid_argument("indegree d must be >= 1");
  if (!(k >= 2.0)) throw std::invalid_argument("k must be >= 2");
  return std::log(k) / (d * std::log(1.0 / (2.0 * delta)));
}

}  // namespace gridcast
