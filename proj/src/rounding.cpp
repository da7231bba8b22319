#include "smax/rounding.hpp"

#include <algorithm>
#include <cmath>

#include "smax/errors.hpp"

namespace smax {

namespace {

constexpr double kFracTol = 1e-7;

bool is_integral(double v) { return std::abs(v - std::round(v)) <= kFracTol; }

}  // namespace

std::vector<uint8_t> round_solution(const FractionalSolution& y, const RelaxProgram& program,
                                    int trials, uint64_t stream_seed) {
  if (y.status != SolveStatus::optimal) throw InputError("cannot round an infeasible solution");
  if (trials < 1) throw InputError("rounding needs at least one trial");
  const int n = program.n;
  if (static_cast<int>(y.y.size()) != n) throw InputError("solution size mismatch");

  std::vector<uint8_t> best;
  double best_obj = 0.0;
  std::vector<uint8_t> z(n, 0);
  for (int t = 0; t < trials; ++t) {
    Rng rng = Rng::child(stream_seed, {0x70551ull, static_cast<uint64_t>(t)});
    for (int j = 0; j < n; ++j) {
      double v = y.y[j];
      z[j] = is_integral(v) ? static_cast<uint8_t>(std::round(v))
                            : static_cast<uint8_t>(rng.bernoulli(v) ? 1 : 0);
    }
    double obj = program.objective_at(std::span<const uint8_t>(z));
    if (t == 0 || obj > best_obj || (obj == best_obj && z < best)) {
      best = z;
      best_obj = obj;
    }
  }

  // Conditional-expectation pass on the objective term only: fractional
  // coordinates move to the sign of their coefficient when that strictly
  // improves, so sum c_j z_j >= sum c_j y_j coordinate by coordinate.
  for (int j = 0; j < n; ++j) {
    if (is_integral(y.y[j])) continue;
    double c = program.objective[j];
    if (c > 0.0) best[j] = 1;
    else if (c < 0.0) best[j] = 0;
  }
  return best;
}

DeviationReport check_deviation(std::span<const uint8_t> z, const RelaxProgram& program) {
  DeviationReport report;
  report.rows.reserve(program.rows.size());
  bool first = true;
  for (const auto& row : program.rows) {
    DeviationRow dr;
    dr.label = row.label;
    dr.value = row.value_at(z);
    dr.lower = row.lower > -kInf ? row.lower - row.widen_lower : -kInf;
    dr.upper = row.upper < kInf ? row.upper + row.widen_upper : kInf;
    double lo_slack = dr.lower > -kInf ? dr.value - dr.lower : kInf;
    double hi_slack = dr.upper < kInf ? dr.upper - dr.value : kInf;
    dr.slack = std::min(lo_slack, hi_slack);
    if (first || dr.slack < report.worst_slack) report.worst_slack = dr.slack;
    first = false;
    if (dr.slack < -1e-9) report.pass = false;
    report.rows.push_back(std::move(dr));
  }
  if (first) report.worst_slack = kInf;  // no rows: vacuous pass
  return report;
}

}  // namespace smax
