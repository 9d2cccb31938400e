// gridcast: command-line front end for the coupled-grid broadcast toolkit.
// Subcommands cover simulation, witness construction/verification, cyclic
// form checks, the XOR code analysis, percolation and the 3D voting replay.
//
// Exit codes: 0 success/verified, 1 check failed, 2 bad input or I/O,
// 3 infeasible, 4 resource limit.

#include <atomic>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "gridcast/exact_engine.hpp"
#include "gridcast/form_graph.hpp"
#include "gridcast/forms.hpp"
#include "gridcast/gates.hpp"
#include "gridcast/grid.hpp"
#include "gridcast/percolation.hpp"
#include "gridcast/rational.hpp"
#include "gridcast/rng.hpp"
#include "gridcast/toom.hpp"
#include "gridcast/witness.hpp"
#include "gridcast/xor_code.hpp"

namespace {

using nlohmann::json;
using namespace gridcast;

constexpr int EXIT_OK = 0;
constexpr int EXIT_CHECK_FAILED = 1;
constexpr int EXIT_BAD_INPUT = 2;
constexpr int EXIT_INFEASIBLE = 3;
constexpr int EXIT_RESOURCE = 4;

json rational_json(const Rational& r) {
  const BigInt& num = boost::multiprecision::numerator(r);
  const BigInt& den = boost::multiprecision::denominator(r);
  json j;
  if (num >= std::numeric_limits<std::int64_t>::min() &&
      num <= std::numeric_limits<std::int64_t>::max() &&
      den <= std::numeric_limits<std::int64_t>::max()) {
    j["num"] = num.convert_to<std::int64_t>();
    j["den"] = den.convert_to<std::int64_t>();
  } else {
    j["num"] = num.str();
    j["den"] = den.str();
  }
  return j;
}

unsigned thread_cap() {
  if (const char* env = std::getenv("GRIDCAST_THREADS")) {
    char* end = nullptr;
    long v = std::strtol(env, &end, 10);
    if (end != env && v >= 1) return static_cast<unsigned>(std::min(v, 256L));
  }
  unsigned hc = std::thread::hardware_concurrency();
  return hc ? hc : 1u;
}

// Runs fn(i) for i in [0, n) over a worker pool; results must be written to
// preallocated per-index slots so no synchronization is needed.
template <typename Fn>
void parallel_for(std::size_t n, Fn fn) {
  unsigned workers = std::min<std::size_t>(thread_cap(), n);
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t i = next.fetch_add(1); i < n; i = next.fetch_add(1)) fn(i);
    });
  }
  for (auto& t : pool) t.join();
}

void write_text(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  out << content;
  if (!out) throw std::runtime_error("write failed: " + path);
}

void write_bytes(const std::string& path, const std::vector<std::uint8_t>& bytes) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  out.write(reinterpret_cast<const char*>(bytes.data()),
            static_cast<std::streamsize>(bytes.size()));
  if (!out) throw std::runtime_error("write failed: " + path);
}

std::string read_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::invalid_argument("cannot open: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Rational from "p/q" or decimal text, snapped to denominator <= 10^6. The
// snap only fires for float-ish inputs that are not exactly representable.
struct DeltaInput {
  Rational value;
  std::string requested;
  bool snapped = false;
};

DeltaInput resolve_delta(const std::string& text) {
  DeltaInput d;
  d.requested = text;
  Rational exact = parse_rational(text);
  d.value = snap_to_denominator(exact, 1000000);
  d.snapped = d.value != exact;
  return d;
}

json delta_config(const DeltaInput& d) {
  json j = rational_json(d.value);
  j["requested"] = d.requested;
  if (d.snapped) j["snapped"] = true;
  return j;
}

const GateRule& rule_arg(const std::string& name) { return rule_by_name(name); }

// ---------------------------------------------------------------- simulate

int run_simulate(const std::string& rule_name, const std::string& delta_text,
                 int depth, int trials, std::uint64_t seed,
                 const std::string& out_dir) {
  const GateRule& rule = rule_arg(rule_name);
  DeltaInput delta = resolve_delta(delta_text);
  double d = to_double(delta.value);
  if (d < 0.0 || d > 0.5) {
    std::cerr << "delta out of range: " << delta_text << " (need [0, 1/2])\n";
    return EXIT_BAD_INPUT;
  }
  if (depth < 1 || trials < 1) {
    std::cerr << "depth and trials must be >= 1\n";
    return EXIT_BAD_INPUT;
  }
  std::filesystem::create_directories(out_dir);

  json config{{"subcommand", "simulate"},
              {"rule", rule.name()},
              {"delta", delta_config(delta)},
              {"depth", depth},
              {"trials", trials},
              {"seed", seed}};

  std::vector<TrajectoryStats> stats(static_cast<std::size_t>(trials));
  parallel_for(stats.size(), [&](std::size_t i) {
    stats[i] = simulate_coupled_grid(rule, d, depth, hash_key(seed, i));
  });

  std::map<int, int> histogram;
  int uncoupled = 0;
  for (int t = 0; t < trials; ++t) {
    const TrajectoryStats& st = stats[static_cast<std::size_t>(t)];
    std::ostringstream csv;
    json trial_config = config;
    trial_config["trial"] = t;
    trial_config["trial_seed"] = st.seed;
    csv << "# " << trial_config.dump() << "\nlevel,n_u\n";
    for (std::size_t k = 0; k < st.n_u_per_level.size(); ++k) {
      csv << k << ',' << st.n_u_per_level[k] << '\n';
    }
    std::ostringstream name;
    name << out_dir << "/trial_" << t << ".csv";
    write_text(name.str(), csv.str());
    if (st.coupling_time) {
      ++histogram[*st.coupling_time];
    } else {
      ++uncoupled;
    }
  }

  json hist = json::object();
  for (const auto& [time, count] : histogram) hist[std::to_string(time)] = count;
  json summary{{"config", config},
               {"coupling_time_histogram", hist},
               {"uncoupled", uncoupled}};
  write_text(out_dir + "/summary.json", summary.dump(2) + "\n");
  std::cout << "wrote " << trials << " trajectories to " << out_dir << "\n";
  return EXIT_OK;
}

// ------------------------------------------------------------ find-witness

int run_find_witness(const std::string& rule_name, const std::string& delta_text,
                     int r, bool min_l1, bool bland_only, const std::string& out_path,
                     const std::string& csv_path) {
  const GateRule& rule = rule_arg(rule_name);
  DeltaInput delta = resolve_delta(delta_text);
  if (delta.value < 0 || delta.value > Rational(1, 2)) {
    std::cerr << "delta out of range: " << delta_text << " (need [0, 1/2])\n";
    return EXIT_BAD_INPUT;
  }
  if (delta.snapped) {
    std::cerr << "note: delta snapped to " << to_string(delta.value) << "\n";
  }

  json config{{"subcommand", "find-witness"},
              {"rule", rule.name()},
              {"delta", delta_config(delta)},
              {"r", r},
              {"min_l1", min_l1},
              {"bland_only", bland_only}};

  WitnessLP lp = assemble_lp(delta.value, r, rule);
  SolveFeasibilityOptions opts;
  opts.minimize_l1_alpha = min_l1;
  opts.simplex.bland_only = bland_only;
  WitnessSolveResult result = solve_feasibility(lp, opts);

  if (result.status != LpStatus::Optimal) {
    json out{{"config", config}, {"status", "infeasible"}};
    json farkas = json::array();
    for (const Rational& y : result.farkas) farkas.push_back(rational_json(y));
    out["farkas"] = farkas;
    write_text(out_path, out.dump(2) + "\n");
    std::cerr << "infeasible at delta = " << to_string(delta.value)
              << "; certificate written to " << out_path << "\n";
    return EXIT_INFEASIBLE;
  }

  result.witness.verified = verify_witness(result.witness.alpha, delta.value,
                                           Rational(1), Rational(0), rule);
  json out = json::parse(witness_to_json(result.witness));
  out["config"] = config;
  out["pivots"] = result.pivots;
  write_text(out_path, out.dump(2) + "\n");
  if (!csv_path.empty()) write_text(csv_path, witness_to_csv(result.witness));

  bool ok = result.witness.verified->all_passed;
  std::cout << "witness at delta = " << to_string(delta.value) << ": "
            << (ok ? "verified" : "FAILED verification") << " (pivots "
            << result.pivots << "), written to " << out_path << "\n";
  return ok ? EXIT_OK : EXIT_CHECK_FAILED;
}

// ---------------------------------------------------------- verify-witness

int run_verify_witness(const std::string& rule_name, const std::string& file,
                       const std::string& tolerance_text, const std::string& c_text,
                       const std::string& out_path) {
  const GateRule& rule = rule_arg(rule_name);
  Witness w = witness_from_json(read_text(file));
  Rational tolerance = parse_rational(tolerance_text);
  Rational c = parse_rational(c_text);
  VerifyReport report = verify_witness(w.alpha, w.delta, c, tolerance, rule);

  json out = json::parse(verify_report_to_json(report));
  out["config"] = json{{"subcommand", "verify-witness"},
                       {"rule", rule.name()},
                       {"file", file},
                       {"delta", rational_json(w.delta)},
                       {"c", rational_json(c)},
                       {"tolerance", rational_json(tolerance)}};
  std::string text = out.dump(2) + "\n";
  if (!out_path.empty()) write_text(out_path, text);
  std::cout << text;
  return report.all_passed ? EXIT_OK : EXIT_CHECK_FAILED;
}

// ------------------------------------------------------------- verify-form

bool ends_pure(const LetterString& y, std::size_t r) {
  if (y.size() < r) return false;
  for (std::size_t i = 0; i < r; ++i) {
    if (y[i] == 'u' || y[y.size() - 1 - i] == 'u') return false;
  }
  return true;
}

// Fixed-point check of the harmonic potential at delta = 0: the one-step
// expectation must agree with the form itself on every string with pure
// 4-letter margins up to length 10, and the purified difference must be a
// combination of the rho generators.
int run_check_harmonic(const std::string& out_path) {
  CountingForm w = harmonic_form();
  CountingForm diff = cond_expectation(w, GateRule::get(GateKind::Nand), 0) - w;

  long checked = 0;
  long nonzero = 0;
  for (int k = 4; k <= 10; ++k) {
    LetterString y(static_cast<std::size_t>(k), '0');
    std::vector<int> digits(static_cast<std::size_t>(k), 0);
    std::size_t total = 1;
    for (int i = 0; i < k; ++i) total *= 3;
    for (std::size_t it = 0; it < total; ++it) {
      for (int i = 0; i < k; ++i) y[static_cast<std::size_t>(i)] = digit_letter_char(digits[static_cast<std::size_t>(i)]);
      if (ends_pure(y, 4)) {
        ++checked;
        if (eval_acyclic(diff, y) != 0) ++nonzero;
      }
      for (int i = k - 1; i >= 0; --i) {
        if (++digits[static_cast<std::size_t>(i)] < 3) break;
        digits[static_cast<std::size_t>(i)] = 0;
      }
    }
  }

  auto combo = rho_span_membership(extend_to_rank(diff, diff.rank(), Side::Right));
  bool pass = nonzero == 0 && combo.has_value();
  json out{{"config", json{{"subcommand", "verify-form"}, {"check", "harmonic"}}},
           {"strings_checked", checked},
           {"acyclic_mismatches", nonzero},
           {"difference_in_rho_span", combo.has_value()},
           {"passed", pass}};
  std::string text = out.dump(2) + "\n";
  if (!out_path.empty()) write_text(out_path, text);
  std::cout << text;
  return pass ? EXIT_OK : EXIT_CHECK_FAILED;
}

int run_verify_form(const std::string& file, const std::string& check,
                    const std::string& mode, double epsilon,
                    const std::string& slack_text, bool reverse_edges,
                    const std::string& out_path) {
  if (check == "harmonic") return run_check_harmonic(out_path);
  if (file.empty()) {
    std::cerr << "verify-form: --file is required for --check " << check << "\n";
    return EXIT_BAD_INPUT;
  }
  CountingForm w = form_from_json(read_text(file));

  CyclicCheckOptions options;
  options.mode = mode == "float" ? CycleMode::FloatWithEpsilon : CycleMode::ExactRational;
  options.epsilon = epsilon;
  options.slack = parse_rational(slack_text);
  options.reverse_edge_order = reverse_edges;

  json out;
  out["config"] = json{{"subcommand", "verify-form"}, {"check", check},
                       {"file", file},      {"mode", mode},
                       {"epsilon", epsilon}, {"slack", slack_text},
                       {"reverse_edges", reverse_edges}};
  bool pass = false;

  if (check == "nonneg") {
    if (!w.u_only()) {
      std::cerr << "warning: form is not u-only; the cyclic verdict still "
                   "holds but does not transfer to plain dominance\n";
    }
    CyclicCheckResult res = is_cyclically_nonneg(w, options);
    pass = res.nonneg;
    out["cyclically_nonneg"] = res.nonneg;
    if (res.certificate) {
      out["certificate"] = json::parse(certificate_to_json(*res.certificate));
    }
  } else if (check == "zero") {
    CyclicCheckResult pos = is_cyclically_nonneg(w, options);
    CyclicCheckResult neg = is_cyclically_nonneg(-w, options);
    pass = pos.nonneg && neg.nonneg;
    out["cyclically_zero"] = pass;
    if (pos.certificate) {
      out["certificate"] = json::parse(certificate_to_json(*pos.certificate));
    } else if (neg.certificate) {
      out["negated_certificate"] = json::parse(certificate_to_json(*neg.certificate));
    }
  } else {
    std::cerr << "unknown --check: " << check << " (expected nonneg, zero or harmonic)\n";
    return EXIT_BAD_INPUT;
  }

  std::string text = out.dump(2) + "\n";
  if (!out_path.empty()) write_text(out_path, text);
  std::cout << text;
  return pass ? EXIT_OK : EXIT_CHECK_FAILED;
}

// -------------------------------------------------------------------- xor

int run_xor(const std::string& delta_text, int kmax, const std::string& out_path,
            int parity_k, const std::string& parity_text_path,
            const std::string& parity_packed_path) {
  DeltaInput delta = resolve_delta(delta_text);
  double d = to_double(delta.value);
  json config{{"subcommand", "xor"},
              {"delta", delta_config(delta)},
              {"kmax", kmax}};

  std::ostringstream csv;
  csv << "# " << config.dump() << "\nk,ml_error,erasure_lower_bound\n";
  for (int k = 1; k <= kmax; ++k) {
    csv << k << ',' << exact_ml_error_xor(d, k) << ',';
    if (k >= 2 && (k & (k - 1)) == 0 && d > 0.0 && d < 0.5) {
      int m = 0;
      for (int t = k; t > 1; t >>= 1) ++m;
      csv << erasure_error_lower_bound(d, m);
    }
    csv << '\n';
  }
  write_text(out_path, csv.str());
  std::cout << "wrote " << out_path << "\n";

  if (parity_k > 0) {
    ParityMatrix pm = build_parity_matrix(parity_k);
    if (!parity_text_path.empty()) write_text(parity_text_path, parity_matrix_to_text(pm));
    if (!parity_packed_path.empty()) write_bytes(parity_packed_path, parity_matrix_to_packed(pm));
    std::cout << "parity matrix k=" << parity_k << " rank " << gf2_rank(pm.h)
              << " of " << pm.h.rows << " rows\n";
  }
  return EXIT_OK;
}

// -------------------------------------------------------------- percolate

int run_percolate(const std::string& p_text, int depth, int trials,
                  std::uint64_t seed, const std::string& out_dir) {
  double p = to_double(parse_rational(p_text));
  if (p < 0.0 || p > 1.0) {
    std::cerr << "p out of range: " << p_text << " (need [0, 1])\n";
    return EXIT_BAD_INPUT;
  }
  if (depth < 1 || trials < 1) {
    std::cerr << "depth and trials must be >= 1\n";
    return EXIT_BAD_INPUT;
  }
  std::filesystem::create_directories(out_dir);
  json config{{"subcommand", "percolate"},
              {"p", p},
              {"depth", depth},
              {"trials", trials},
              {"seed", seed}};

  std::vector<std::vector<PercolationLevel>> runs(static_cast<std::size_t>(trials));
  parallel_for(runs.size(), [&](std::size_t i) {
    runs[i] = simulate_percolation(p, depth, hash_key(seed, i));
  });

  int survived = 0;
  for (int t = 0; t < trials; ++t) {
    const auto& levels = runs[static_cast<std::size_t>(t)];
    std::ostringstream csv;
    json trial_config = config;
    trial_config["trial"] = t;
    csv << "# " << trial_config.dump() << "\nlevel,alive,r,l\n";
    for (std::size_t k = 0; k < levels.size(); ++k) {
      csv << k << ',' << (levels[k].alive ? 1 : 0) << ',' << levels[k].r_k << ','
          << levels[k].l_k << '\n';
    }
    std::ostringstream name;
    name << out_dir << "/trial_" << t << ".csv";
    write_text(name.str(), csv.str());
    if (levels.back().alive) ++survived;
  }

  json summary{{"config", config},
               {"survived", survived},
               {"trials", trials},
               {"survival_fraction", static_cast<double>(survived) / trials}};
  write_text(out_dir + "/summary.json", summary.dump(2) + "\n");
  std::cout << "survival " << survived << "/" << trials << "\n";
  return EXIT_OK;
}

// ------------------------------------------------------------------- toom

int run_toom(const std::string& delta_text, int big_k, int seeds,
             std::uint64_t seed, bool decoupled, const std::string& out_path) {
  double d = to_double(parse_rational(delta_text));
  if (d < 0.0 || d > 1.0) {
    std::cerr << "delta out of range: " << delta_text << " (need [0, 1])\n";
    return EXIT_BAD_INPUT;
  }
  if (big_k < 1 || seeds < 1) {
    std::cerr << "K and seeds must be >= 1\n";
    return EXIT_BAD_INPUT;
  }
  json config{{"subcommand", "toom"}, {"delta", d},       {"K", big_k},
              {"seeds", seeds},       {"seed", seed},     {"decoupled", decoupled}};

  std::vector<ToomReport> reports(static_cast<std::size_t>(seeds));
  parallel_for(reports.size(), [&](std::size_t i) {
    reports[i] = toom_coupled_check(d, big_k, hash_key(seed, i), !decoupled);
  });

  int mismatch_runs = 0;
  json first = nullptr;
  for (const ToomReport& rep : reports) {
    if (!rep.all_equal) {
      ++mismatch_runs;
      if (first.is_null() && rep.first_mismatch) {
        first = json{{"level", rep.first_mismatch->level},
                     {"x1", rep.first_mismatch->x1},
                     {"x2", rep.first_mismatch->x2}};
      }
    }
  }
  bool all_equal = mismatch_runs == 0;
  json out{{"config", config},
           {"all_equal", all_equal},
           {"mismatch_runs", mismatch_runs},
           {"runs", seeds}};
  if (!first.is_null()) out["first_mismatch"] = first;
  std::string text = out.dump(2) + "\n";
  if (!out_path.empty()) write_text(out_path, text);
  std::cout << text;
  // With shared noise the two processes must agree; decoupled runs are a
  // control measurement with no pass/fail meaning.
  if (decoupled) return EXIT_OK;
  return all_equal ? EXIT_OK : EXIT_CHECK_FAILED;
}

// ----------------------------------------------------------------- perturb

int run_perturb(const std::string& out_path) {
  PerturbationResult lp = perturbation_lp();
  json out;
  out["config"] = json{{"subcommand", "perturb"}};
  if (lp.status != LpStatus::Optimal) {
    json farkas = json::array();
    for (const Rational& y : lp.farkas) farkas.push_back(rational_json(y));
    out["status"] = "infeasible";
    out["farkas"] = farkas;
    write_text(out_path, out.dump(2) + "\n");
    std::cerr << "perturbation system infeasible; certificate written to "
              << out_path << "\n";
    return EXIT_INFEASIBLE;
  }

  json w1 = json::array(), x1 = json::array();
  for (const Rational& v : lp.w_hat_1) w1.push_back(rational_json(v));
  for (const Rational& v : lp.x_1) x1.push_back(rational_json(v));
  out["status"] = "feasible";
  out["w_hat_1"] = w1;
  out["x_1"] = x1;
  out["pivots"] = lp.pivots;

  bool published_ok = perturbation_x1_for(appendix_w1_star()).has_value();
  bool zeroth_ok = zeroth_order_rho_combination().has_value();
  out["published_w1_admits_x1"] = published_ok;
  out["zeroth_order_in_rho_span"] = zeroth_ok;

  std::string text = out.dump(2) + "\n";
  write_text(out_path, text);
  std::cout << text;
  return (published_ok && zeroth_ok) ? EXIT_OK : EXIT_CHECK_FAILED;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"coupled-grid broadcast toolkit"};
  app.require_subcommand(1);

  // simulate
  std::string sim_rule = "nand", sim_delta, sim_out = "simulate_out";
  int sim_depth = 100, sim_trials = 1;
  std::uint64_t sim_seed = 1;
  CLI::App* sim = app.add_subcommand("simulate", "run the coupled grid chain");
  sim->add_option("--rule", sim_rule, "gate rule: nand, and, xor, imp");
  sim->add_option("--delta", sim_delta, "noise level in [0, 1/2]")->required();
  sim->add_option("--depth", sim_depth, "levels to simulate");
  sim->add_option("--trials", sim_trials, "independent trajectories");
  sim->add_option("--seed", sim_seed, "base seed");
  sim->add_option("--out", sim_out, "output directory");

  // find-witness
  std::string fw_rule = "nand", fw_delta, fw_out = "witness.json", fw_csv;
  int fw_r = 4;
  bool fw_min_l1 = false, fw_bland = false;
  CLI::App* fw = app.add_subcommand("find-witness", "solve for a supermartingale witness");
  fw->add_option("--rule", fw_rule, "gate rule");
  fw->add_option("--delta", fw_delta, "noise level (rational or decimal)")->required();
  fw->add_option("--r", fw_r, "graph rank (witness has rank r-1)");
  fw->add_flag("--min-l1", fw_min_l1, "minimize the witness l1 norm after feasibility");
  fw->add_flag("--bland-only", fw_bland, "use pure Bland pivoting");
  fw->add_option("--out", fw_out, "witness JSON path");
  fw->add_option("--csv", fw_csv, "also write the coefficient table as CSV");

  // verify-witness
  std::string vw_rule = "nand", vw_file, vw_tol = "0", vw_c = "1", vw_out;
  CLI::App* vw = app.add_subcommand("verify-witness", "re-check a witness file");
  vw->add_option("--rule", vw_rule, "gate rule");
  vw->add_option("--file", vw_file, "witness JSON")->required();
  vw->add_option("--tolerance", vw_tol, "slack added to every vertex weight");
  vw->add_option("--c", vw_c, "minorization constant");
  vw->add_option("--out", vw_out, "write the report here too");

  // verify-form
  std::string vf_file, vf_check = "nonneg", vf_mode = "exact", vf_slack = "0", vf_out;
  double vf_eps = 1e-9;
  bool vf_rev = false;
  CLI::App* vf = app.add_subcommand("verify-form", "cyclic checks on a counting form");
  vf->add_option("--file", vf_file, "form JSON");
  vf->add_option("--check", vf_check, "nonneg, zero or harmonic");
  vf->add_option("--mode", vf_mode, "exact or float");
  vf->add_option("--epsilon", vf_eps, "float-mode zero threshold");
  vf->add_option("--slack", vf_slack, "added to every vertex weight");
  vf->add_flag("--reverse-edges", vf_rev, "relax edges in reversed order");
  vf->add_option("--out", vf_out, "write the report here too");

  // xor
  std::string xr_delta, xr_out = "xor_ml.csv", xr_ptext, xr_ppacked;
  int xr_kmax = 12, xr_pk = 0;
  CLI::App* xr = app.add_subcommand("xor", "exact ML error of the XOR grid");
  xr->add_option("--delta", xr_delta, "noise level")->required();
  xr->add_option("--kmax", xr_kmax, "largest level");
  xr->add_option("--out", xr_out, "CSV path");
  xr->add_option("--parity-k", xr_pk, "also build the parity-check matrix for this k");
  xr->add_option("--parity-text", xr_ptext, "text export path for the parity matrix");
  xr->add_option("--parity-packed", xr_ppacked, "packed export path for the parity matrix");

  // percolate
  std::string pc_p, pc_out = "percolate_out";
  int pc_depth = 100, pc_trials = 1;
  std::uint64_t pc_seed = 1;
  CLI::App* pc = app.add_subcommand("percolate", "oriented site percolation on the grid");
  pc->add_option("--p", pc_p, "open probability")->required();
  pc->add_option("--depth", pc_depth, "levels");
  pc->add_option("--trials", pc_trials, "independent trials");
  pc->add_option("--seed", pc_seed, "base seed");
  pc->add_option("--out", pc_out, "output directory");

  // toom
  std::string tm_delta, tm_out;
  int tm_k = 8, tm_seeds = 1;
  std::uint64_t tm_seed = 1;
  bool tm_decoupled = false;
  CLI::App* tm = app.add_subcommand("toom", "3D voting lattice vs automaton replay");
  tm->add_option("--delta", tm_delta, "noise level")->required();
  tm->add_option("--K", tm_k, "depth to compare");
  tm->add_option("--seeds", tm_seeds, "independent runs");
  tm->add_option("--seed", tm_seed, "base seed");
  tm->add_flag("--decoupled", tm_decoupled, "use independent noise streams (control)");
  tm->add_option("--out", tm_out, "write the JSON report here too");

  // perturb
  std::string pb_out = "perturbation.json";
  CLI::App* pb = app.add_subcommand("perturb", "first-order expansion feasibility study");
  pb->add_option("--out", pb_out, "output JSON path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return EXIT_BAD_INPUT;
  }

  try {
    if (sim->parsed()) {
      return run_simulate(sim_rule, sim_delta, sim_depth, sim_trials, sim_seed, sim_out);
    }
    if (fw->parsed()) {
      return run_find_witness(fw_rule, fw_delta, fw_r, fw_min_l1, fw_bland, fw_out, fw_csv);
    }
    if (vw->parsed()) {
      return run_verify_witness(vw_rule, vw_file, vw_tol, vw_c, vw_out);
    }
    if (vf->parsed()) {
      return run_verify_form(vf_file, vf_check, vf_mode, vf_eps, vf_slack, vf_rev, vf_out);
    }
    if (xr->parsed()) {
      return run_xor(xr_delta, xr_kmax, xr_out, xr_pk, xr_ptext, xr_ppacked);
    }
    if (pc->parsed()) {
      return run_percolate(pc_p, pc_depth, pc_trials, pc_seed, pc_out);
    }
    if (tm->parsed()) {
      return run_toom(tm_delta, tm_k, tm_seeds, tm_seed, tm_decoupled, tm_out);
    }
    if (pb->parsed()) {
      return run_perturb(pb_out);
    }
  } catch (const resource_limit_error& e) {
    std::cerr << "resource limit: " << e.what() << "\n";
    return EXIT_RESOURCE;
  } catch (const std::invalid_argument& e) {
    std::cerr << "bad input: " << e.what() << "\n";
    return EXIT_BAD_INPUT;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return EXIT_BAD_INPUT;
  }
  return EXIT_BAD_INPUT;
}
