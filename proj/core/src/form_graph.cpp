#include "gridcast/form_graph.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "gridcast/simplex.hpp"
#include "json_util.hpp"

namespace gridcast {

using jsonutil::rational_to_json;

namespace {

std::size_t pow3sz(int n) {
  std::size_t p = 1;
  while (n-- > 0) p *= 3;
  return p;
}

// Relaxation sweep order: all 3N edges, source-major. The reversed variant
// exists so tests can assert the verdict is order-independent.
template <typename Body>
void for_each_edge(std::size_t n, bool reversed, Body body) {
  if (!reversed) {
    for (std::size_t v = 0; v < n; ++v) {
      for (int c = 0; c < 3; ++c) body(v, c);
    }
  } else {
    for (std::size_t v = n; v-- > 0;) {
      for (int c = 2; c >= 0; --c) body(v, c);
    }
  }
}

// Bellman-Ford from the all-u vertex. Returns an empty vector when no
// negative cycle is reachable, otherwise the cycle in forward edge order.
template <typename T>
std::vector<std::size_t> negative_cycle(const FormGraph& graph,
                                        const std::vector<T>& weight,
                                        bool reversed) {
  const std::size_t n = graph.vertex_count();
  const std::size_t source = n - 1;
  const std::size_t suffix = n / 3;
  std::vector<T> dist(n, T(0));
  std::vector<bool> reached(n, false);
  std::vector<std::size_t> pred(n, SIZE_MAX);
  reached[source] = true;

  for (std::size_t round = 0; round + 1 < n; ++round) {
    bool changed = false;
    for_each_edge(n, reversed, [&](std::size_t v, int c) {
      if (!reached[v]) return;
      std::size_t z = (v % suffix) * 3 + static_cast<std::size_t>(c);
      T cand = dist[v] + weight[v];
      if (!reached[z] || cand < dist[z]) {
        reached[z] = true;
        dist[z] = cand;
        pred[z] = v;
        changed = true;
      }
    });
    if (!changed) return {};
  }

  std::size_t entry = SIZE_MAX;
  for_each_edge(n, reversed, [&](std::size_t v, int c) {
    if (entry != SIZE_MAX || !reached[v]) return;
    std::size_t z = (v % suffix) * 3 + static_cast<std::size_t>(c);
    if (dist[v] + weight[v] < dist[z]) entry = z;
  });
  if (entry == SIZE_MAX) return {};

  // Walk far enough back along predecessors to be inside the cycle, then
  // collect one full lap. The walk length rank * 3^rank is generous.
  std::size_t cur = entry;
  for (std::size_t i = 0; i < static_cast<std::size_t>(graph.rank) * n; ++i) {
    if (pred[cur] == SIZE_MAX) {
      throw std::logic_error("negative_cycle: predecessor chain broke");
    }
    cur = pred[cur];
  }
  std::vector<std::size_t> cycle{cur};
  for (std::size_t x = pred[cur]; x != cur; x = pred[x]) {
    cycle.push_back(x);
    if (cycle.size() > n + 1) {
      throw std::logic_error("negative_cycle: lap did not close");
    }
  }
  std::reverse(cycle.begin(), cycle.end());
  return cycle;
}

}  // namespace

std::size_t FormGraph::successor(std::size_t v, int c) const {
  std::size_t suffix = weights.size() / 3;
  return (v % suffix) * 3 + static_cast<std::size_t>(c);
}

FormGraph build_graph(const CountingForm& w) {
  if (w.empty()) {
    throw std::invalid_argument("build_graph: form is empty");
  }
  if (!w.pure_rank()) {
    throw std::invalid_argument("build_graph: form is not pure");
  }
  const int r = w.rank();
  FormGraph graph;
  graph.rank = r;
  graph.weights.assign(pow3sz(r), Rational(0));
  for (const auto& [clause, coeff] : w.terms()) {
    graph.weights[clause_index(clause)] = coeff;
  }
  return graph;
}

std::string certificate_to_json(const CycleCertificate& cert) {
  nlohmann::json j;
  j["cycle"] = cert.vertices;
  j["total_weight"] = rational_to_json(cert.total_weight);
  return j.dump();
}

LetterString certificate_witness_string(const CycleCertificate& cert) {
  if (cert.vertices.empty()) return {};
  const std::size_t rank = cert.vertices.front().size();
  LetterString lap;
  lap.reserve(cert.vertices.size());
  for (const auto& v : cert.vertices) lap.push_back(v.front());
  LetterString out;
  out.reserve(lap.size() * rank);
  for (std::size_t i = 0; i < rank; ++i) out += lap;
  return out;
}

CyclicCheckResult is_cyclically_nonneg(const CountingForm& w,
                                       const CyclicCheckOptions& options) {
  if (w.empty()) return {true, std::nullopt};
  CountingForm pure = extend_to_rank(w, w.rank(), Side::Right);
  FormGraph graph = build_graph(pure);
  const std::size_t n = graph.vertex_count();

  std::vector<std::size_t> cycle;
  if (options.mode == CycleMode::ExactRational) {
    std::vector<Rational> weight(n);
    for (std::size_t v = 0; v < n; ++v) weight[v] = graph.weights[v] + options.slack;
    cycle = negative_cycle(graph, weight, options.reverse_edge_order);
  } else {
    const double slack = to_double(options.slack);
    std::vector<double> weight(n);
    for (std::size_t v = 0; v < n; ++v) {
      double x = to_double(graph.weights[v]) + slack;
      weight[v] = std::fabs(x) < options.epsilon ? 0.0 : x;
    }
    cycle = negative_cycle(graph, weight, options.reverse_edge_order);
  }

  if (cycle.empty()) return {true, std::nullopt};
  CycleCertificate cert;
  cert.vertices.reserve(cycle.size());
  for (std::size_t v : cycle) {
    cert.vertices.push_back(index_to_clause(v, graph.rank));
    cert.total_weight += graph.weights[v] + options.slack;
  }
  return {false, std::move(cert)};
}

bool is_cyclically_zero(const CountingForm& w) {
  if (w.empty()) return true;
  return is_cyclically_nonneg(w).nonneg && is_cyclically_nonneg(-w).nonneg;
}

std::optional<RationalVector> rho_span_membership(const CountingForm& w) {
  if (w.empty() || !w.pure_rank() || w.rank() < 2) {
    throw std::invalid_argument("rho_span_membership: need a pure form of rank >= 2");
  }
  const int s = w.rank();
  const std::size_t rows = pow3sz(s);
  const std::size_t cols = pow3sz(s - 1);
  RationalMatrix gen(rows, cols);
  for (std::size_t j = 0; j < cols; ++j) {
    CoeffVector col = to_coeff_vector(rho(index_to_clause(j, s - 1)));
    for (std::size_t i = 0; i < rows; ++i) gen.at(i, j) = col.entries[i];
  }
  return solve_linear(gen, to_coeff_vector(w).entries);
}

Rational brute_force_min_cyclic(const CountingForm& w, int max_len) {
  if (w.empty()) return 0;
  const int r = w.rank();
  if (max_len < r) {
    throw std::invalid_argument("brute_force_min_cyclic: max_len below form rank");
  }
  if (max_len > 12) {
    throw resource_limit_error("brute_force_min_cyclic: max_len above 12");
  }

  struct Term {
    std::vector<int> digits;
    Rational coeff;
  };
  std::vector<Term> terms;
  for (const auto& [clause, coeff] : w.terms()) {
    Term t;
    t.coeff = coeff;
    for (char ch : clause) t.digits.push_back(letter_char_digit(ch));
    terms.push_back(std::move(t));
  }

  bool first = true;
  Rational best = 0;
  std::vector<int> y;
  for (int k = std::max(r, 1); k <= max_len; ++k) {
    y.assign(static_cast<std::size_t>(k), 0);
    const std::size_t total = pow3sz(k);
    for (std::size_t it = 0; it < total; ++it) {
      Rational value = 0;
      for (const Term& t : terms) {
        const int len = static_cast<int>(t.digits.size());
        int count = 0;
        for (int i = 0; i < k; ++i) {
          bool hit = true;
          for (int j = 0; j < len; ++j) {
            if (y[static_cast<std::size_t>((i + j) % k)] != t.digits[j]) {
              hit = false;
              break;
            }
          }
          if (hit) ++count;
        }
        if (count != 0) value += t.coeff * count;
      }
      if (first || value < best) {
        best = value;
        first = false;
      }
      for (int i = k - 1; i >= 0; --i) {
        if (++y[static_cast<std::size_t>(i)] < 3) break;
        y[static_cast<std::size_t>(i)] = 0;
      }
    }
  }
  return best;
}

std::optional<NonnegRhoDecomposition> find_nonneg_rho_decomposition(
    const CountingForm& w) {
  NonnegRhoDecomposition out;
  if (w.empty()) return out;
  const int s = w.rank();
  CountingForm pure = extend_to_rank(w, s, Side::Right);
  if (s == 1) {
    // rho_v at s=1 is the zero form, so the decomposition degenerates to a
    // coefficientwise sign check.
    for (const auto& [clause, coeff] : pure.terms()) {
      if (coeff < 0) return std::nullopt;
    }
    out.nonneg_part = pure;
    return out;
  }

  const std::size_t rows = pow3sz(s);
  const std::size_t cols = pow3sz(s - 1);
  RationalMatrix gen(rows, cols);
  for (std::size_t j = 0; j < cols; ++j) {
    CoeffVector col = to_coeff_vector(rho(index_to_clause(j, s - 1)));
    for (std::size_t i = 0; i < rows; ++i) gen.at(i, j) = col.entries[i];
  }
  RationalVector target = to_coeff_vector(pure).entries;

  // w - gen.x >= 0 coefficientwise, i.e. (-gen) x >= -w.
  RationalMatrix neg(rows, cols);
  RationalVector rhs(rows);
  for (std::size_t i = 0; i < rows; ++i) {
    rhs[i] = -target[i];
    for (std::size_t j = 0; j < cols; ++j) neg.at(i, j) = -gen.at(i, j);
  }
  IneqResult lp = solve_inequalities(neg, rhs, {});
  if (lp.status != LpStatus::Optimal) return std::nullopt;

  RationalVector residual = target;
  RationalVector image = matvec(gen, lp.x);
  for (std::size_t i = 0; i < rows; ++i) residual[i] -= image[i];
  CoeffVector cv;
  cv.rank = s;
  cv.entries = std::move(residual);
  out.nonneg_part = from_coeff_vector(cv);
  out.rho_coefficients = lp.x;
  return out;
}

}  // namespace gridcast
