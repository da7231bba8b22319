#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "smax/csp.hpp"
#include "smax/estimator.hpp"
#include "smax/graph.hpp"
#include "smax/poly.hpp"
#include "smax/rational.hpp"
#include "smax/relaxation.hpp"

namespace smax {

struct SchemeConfig {
  double eps = 0.2;            // target relative error
  double delta = 0.5;          // density exponent for certificates and radii
  double gamma_scale = 1.0;    // multiplier on the sample-size formulas
  int64_t sample_override = 0; // absolute sample size; 0 = use the formula
  AssignmentMode mode = AssignmentMode::exhaustive;
  uint64_t random_assignments = 64;  // draw count in random mode
  int trials = 32;                   // rounding trials per assignment
  uint64_t seed = 0;
  double lp_tol = 1e-7;
  int exhaustion_cap = 22;     // max distinct sampled indices in exhaustive mode
  bool oracle_compare = false; // brute-force comparison (refuses n > 26)
  int threads = 1;
  double kdense_budget = 5e6;  // C(n,k) threshold for the enumeration branch
  std::vector<uint8_t> planted;  // plant for planted mode; oracle fills it when empty
};

/// One scheme execution: configuration echo, winner, counters; p(z) is always
/// recomputed exactly by polynomial evaluation, never read off the LP.
struct RunReport {
  SchemeConfig config;
  std::string method;  // pipeline | enumeration | linear-exact | constant

  bool has_solution = false;
  std::vector<uint8_t> best;
  Rational value;
  double fractional_objective = 0.0;
  int64_t winning_ordinal = -1;

  bool has_oracle = false;
  Rational oracle_value;
  double ratio = 0.0;

  uint64_t assignments_tried = 0;
  uint64_t lp_infeasible = 0;        // infeasible even at the widest radii
  uint64_t solver_errors = 0;
  uint64_t deviation_failures = 0;
  uint64_t radius_escalations = 0;   // assignments that needed widened radii
  double winner_radius_multiplier = 1.0;
  int64_t sample_r = 0;
  int sample_distinct = 0;
  double eps1 = 0.0, eps2 = 0.0;

  int64_t satisfied = -1;         // csp: constraints satisfied by `best`
  int64_t oracle_satisfied = -1;  // csp: constraints satisfied at the oracle optimum
  double trivial_opt_bound = 0.0; // csp: 2^{-k} m lower bound on OPT
  int repair_moves = -1;          // kdense
  std::string branch;             // kdense: enumeration | sampled
  double kdense_threshold = 0.0;  // kdense: the asymptotic n^{1-delta/3}, for reference
  double additive_gap = 0.0;      // smooth: oracle - p(z), when oracle present
  double additive_budget = 0.0;   // smooth: eps * kappa * n^{d-1+delta}

  double wall_seconds = 0.0;
};

/// The per-variant eps budget split. maxcut: (eps/16, eps/16). generic:
/// (eps/(4 d(d-1) beta kappa), eps/(8(d-1))), requiring d >= 2. kdense:
/// (eps/8, eps/8).
std::pair<double, double> eps_split(double eps, int d, double beta, double kappa,
                                    ProgramVariant variant);

RunReport approximate_maxcut(const Graph& g, const SchemeConfig& cfg);
RunReport maximize_smooth(const SmoothPolynomial& p, const SchemeConfig& cfg);
RunReport approximate_kcsp(const CspInstance& inst, const SchemeConfig& cfg);
RunReport approximate_kdense(const Graph& g, int k, const SchemeConfig& cfg);

}  // namespace smax
