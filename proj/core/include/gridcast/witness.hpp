#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "gridcast/form_graph.hpp"
#include "gridcast/forms.hpp"
#include "gridcast/gates.hpp"
#include "gridcast/linalg.hpp"
#include "gridcast/rational.hpp"
#include "gridcast/simplex.hpp"

namespace gridcast {

// One-step conditional-expectation operator in matrix form: the 3^(s+1) x 3^s
// stochastic matrix mapping coefficient vectors of pure rank-s forms to those
// of their expectation, together with its expansion in powers of delta.
struct TransitionMatrix {
  int s = 0;
  Rational delta = 0;
  RationalMatrix entries;              // 3^(s+1) x 3^s, rows sum to 1
  std::vector<RationalMatrix> coeffs;  // coefficient of delta^k, k = 0..2s
};

TransitionMatrix build_transition_matrix(int s, const Rational& delta,
                                         const GateRule& rule);

// Evaluates sum_k coeffs[k] * delta^k.
RationalMatrix transition_at(const TransitionMatrix& tm, const Rational& delta);

// P_s = I kron [1 1 1]^T: lifts rank-s coefficients to the equivalent pure
// rank-(s+1) form obtained by extending every clause one letter to the right.
RationalMatrix build_purify_matrix(int s);

// Oriented incidence structure of the de Bruijn graph over Y^r. Columns are
// indexed by Y^(r+1), edge (v,z) keyed as v followed by the last letter of z.
struct IncidenceSet {
  int r = 0;
  RationalMatrix b_in;   // 3^r x 3^(r+1)
  RationalMatrix b_out;  // 3^r x 3^(r+1)
  RationalMatrix b;      // b_out - b_in; self-loop columns vanish
};

IncidenceSet build_incidence(int r);

// Indicator of "first letter is u" over Y^r.
RationalVector build_psi(int r);

// Feasibility system whose solutions are supermartingale witnesses: variables
// phi = [alpha | y1 | y2], constraints A phi >= xi, with alpha pinned to zero
// on the all-{0,1} clauses so the witness form stays u-only.
struct WitnessLP {
  Rational delta = 0;
  int r = 0;
  RationalMatrix a;    // 2*3^(r+1) x (3^(r-1) + 2*3^r)
  RationalVector xi;
  std::vector<std::size_t> pinned_zero_indices;  // alpha columns forced to 0
};

WitnessLP assemble_lp(const Rational& delta, int r, const GateRule& rule);

struct VerifyCheck {
  std::string name;
  bool passed = false;
  std::optional<CycleCertificate> certificate;  // on a failed cycle check
};

struct VerifyReport {
  bool all_passed = false;
  std::vector<VerifyCheck> checks;
};

struct Witness {
  CoeffVector alpha;   // rank r-1 coefficients of the witness form
  RationalVector z1;   // potentials certifying w - E(w) >= 0 on cycles
  RationalVector z2;   // potentials certifying w - {u} >= 0 on cycles
  Rational delta = 0;
  std::optional<VerifyReport> verified;
};

struct SolveFeasibilityOptions {
  // After feasibility, minimize sum |alpha_v| to keep the witness small.
  bool minimize_l1_alpha = false;
  SimplexOptions simplex;
};

struct WitnessSolveResult {
  LpStatus status = LpStatus::Infeasible;
  Witness witness;         // valid when status == Optimal
  RationalVector farkas;   // infeasibility certificate otherwise
  long pivots = 0;
};

// Solves the feasibility system exactly; every inequality residual of a
// returned witness is re-checked to be >= 0 before it is handed back.
WitnessSolveResult solve_feasibility(const WitnessLP& lp,
                                     const SolveFeasibilityOptions& options = {});

// Checks a candidate witness independently of any LP: (1) the form is u-only,
// (2) w - E(w) has no negative cycle, (3) w - c*{u} has no negative cycle,
// each cycle test run with `tolerance` added to every vertex weight.
VerifyReport verify_witness(const CoeffVector& alpha, const Rational& delta,
                            const Rational& c, const Rational& tolerance,
                            const GateRule& rule = GateRule::get(GateKind::Nand));

std::string verify_report_to_json(const VerifyReport& report);

// JSON: {"delta": {"num":..,"den":..}, "r": .., "alpha": [...], ...}.
std::string witness_to_json(const Witness& w);
Witness witness_from_json(const std::string& text);
// CSV rows "index,pattern,num,den,value" in ascending index order.
std::string witness_to_csv(const Witness& w);

// First-order expansion study around delta = 0 (NAND dynamics): fixed
// zeroth-order coefficient vector, its published first-order companion, and
// the feasibility problem tying them together.
RationalVector appendix_w0_star();  // length 27
RationalVector appendix_w1_star();  // length 27

struct PerturbationResult {
  LpStatus status = LpStatus::Infeasible;
  RationalVector w_hat_1;  // length 27, zero at all-{0,1} indices
  RationalVector x_1;      // length 19
  RationalVector farkas;
  long pivots = 0;
};

// Find w_hat_1 and x_1 with (P3 - C3^(0)) w_hat_1 - C3^(1) w0* + D3 x_1 >= 0,
// w_hat_1 pinned to zero on {0,1}^3, where D3's columns are the pure rank-4
// coefficients of rho_v over the 19 u-containing v in Y^3.
PerturbationResult perturbation_lp();

// Completes a fixed first-order vector to a full solution if possible.
std::optional<RationalVector> perturbation_x1_for(const RationalVector& w_hat_1);

// Coefficients x0 with D3 x0 = (P3 - C3^(0)) w0*, certifying the zeroth-order
// term is cyclically equivalent to zero; nullopt if outside the span.
std::optional<RationalVector> zeroth_order_rho_combination();

}  // namespace gridcast
