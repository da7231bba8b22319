#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "smax/relaxation.hpp"
#include "smax/rng.hpp"

namespace smax {

struct DeviationRow {
  std::string label;
  double value = 0.0;
  double lower = 0.0;  // widened
  double upper = 0.0;  // widened
  double slack = 0.0;  // min distance to either widened bound; negative = violated
};

/// Per-row slacks of an integral solution against the widened (rounded
/// solution) bounds. Diagnostic, not a guarantee.
struct DeviationReport {
  std::vector<DeviationRow> rows;
  double worst_slack = 0.0;
  bool pass = true;
};

/// Randomized rounding with best-of-trials selection: `trials` independent
/// product roundings of y (integral coordinates copy over), the one with the
/// largest program objective kept (ties toward the lexicographically smaller
/// assignment), then a greedy pass over the coordinates fractional in y moves
/// each bit to the sign of its objective coefficient when that strictly
/// improves. The result always has program objective >= the fractional
/// objective. Trial streams derive from (stream_seed, trial ordinal).
std::vector<uint8_t> round_solution(const FractionalSolution& y, const RelaxProgram& program,
                                    int trials, uint64_t stream_seed);

DeviationReport check_deviation(std::span<const uint8_t> z, const RelaxProgram& program);

}  // namespace smax
