#pragma once

#include <limits>
#include <span>
#include <string>
#include <vector>

#include "smax/estimator.hpp"
#include "smax/graph.hpp"

namespace smax {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

enum class ProgramVariant { maxcut, generic, kdense };

/// One two-sided linear constraint lower <= sum coeff_j * y_j <= upper.
/// widen_lower/widen_upper are the extra slack a rounded solution is allowed
/// (the deviation bounds); they play no role in solving.
struct ProgramRow {
  std::vector<std::pair<int, double>> coeffs;  // sorted by variable
  double lower = -kInf;
  double upper = kInf;
  double widen_lower = 0.0;
  double widen_upper = 0.0;
  std::string label;

  double value_at(std::span<const double> y) const;
  double value_at(std::span<const uint8_t> z) const;
};

/// Box relaxation: maximize objective_constant + objective . y over y in
/// [0,1]^n subject to the rows.
struct RelaxProgram {
  int n = 0;
  ProgramVariant variant = ProgramVariant::generic;
  double objective_constant = 0.0;
  std::vector<double> objective;
  std::vector<ProgramRow> rows;

  double objective_at(std::span<const double> y) const;
  double objective_at(std::span<const uint8_t> z) const;
  /// Plain-text dump (objective row, then bounded rows); debugging aid only.
  std::string to_text() const;
};

enum class SolveStatus { optimal, infeasible };

struct FractionalSolution {
  SolveStatus status = SolveStatus::infeasible;
  std::vector<double> y;
  double objective_value = 0.0;  // includes objective_constant
  int iterations = 0;
};

/// (IP) relaxation from the symmetric Max-Cut tree: objective
/// sum y_j (deg(j) - rho_j), per-vertex rows
/// max{(1-e1) rho_j - e2 Delta, 0} <= sum_{i in N(j)} y_i
///                                 <= min{(1+e1) rho_j + e2 Delta, deg(j)},
/// widened by 2 sqrt(deg(j) ln n) for rounded solutions. When `pin` is given,
/// the sampled variables are fixed to their assignment bits (the assignment is
/// a commitment to those values; the agreeing optimum satisfies the pins
/// exactly, so the feasibility argument is unchanged).
RelaxProgram build_maxcut_program(const DecompositionTree& tree, const EstimationTree& est,
                                  double eps1, double eps2,
                                  const PartialAssignment* pin = nullptr);

/// (d-IP) relaxation: objective c + sum y_j rho_j over the root children; one
/// row per materialized tuple of a degree-l node,
/// c_T + sum_j y_j rho_Tj in rho_T +- (e1 rho_bar_T + e2 n^{l-1+delta}),
/// widened to twice both radii for rounded solutions. `pin` as above.
RelaxProgram build_generic_program(const DecompositionTree& tree, const EstimationTree& est,
                                   double eps1, double eps2, double delta,
                                   const PartialAssignment* pin = nullptr);

/// (IP') relaxation: objective sum y_j rho_j, per-vertex rows with
/// e2 n^{delta/3} radius, plus the cardinality row sum_j y_j = k widened by
/// 2 sqrt(n ln n). `pin` as above.
RelaxProgram build_kdense_program(const Graph& g, const std::vector<double>& rho,
                                  double eps1, double eps2, double delta, int k,
                                  const PartialAssignment* pin = nullptr);

/// Two-phase primal dense simplex with Bland's rule as the anti-cycling
/// fallback. Two-sided rows are accepted directly (split internally). Throws
/// SolverError when the iteration guard trips.
FractionalSolution solve(const RelaxProgram& program, double tol = 1e-7);

}  // namespace smax
