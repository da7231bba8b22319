#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "smax/graph.hpp"
#include "smax/poly.hpp"
#include "smax/rational.hpp"

namespace smax {

struct MaxResult {
  std::vector<uint8_t> argmax;
  Rational value;
};

/// Exact maximizer over all 2^n binary vectors via Gray-code enumeration with
/// incremental evaluation; ties resolved to the lexicographically smallest
/// assignment regardless of visit order. Refuses n > 26.
MaxResult brute_force_max(const SmoothPolynomial& p, int threads = 1);

struct KdenseResult {
  std::vector<uint8_t> members;  // indicator, exactly k ones
  int64_t edges = 0;
};

/// Exact k-densest subgraph by enumerating all k-subsets.
/// Refuses instances with C(n,k) > 5e6.
KdenseResult brute_force_kdense(const Graph& g, int k);

/// Binomial coefficient, saturating at INT64_MAX.
int64_t binomial(int n, int k);

struct LemmaCheckParams {
  int n = 100;
  int q = 0;
  double beta = 1.0;
  double delta = 0.5;
  double alpha1 = 0.5;
  double alpha2 = 0.5;
  int64_t trials = 10000;
  uint64_t seed = 0;
  int d = 2;             // exponent in the 4/n^{d+1} failure budget
  int64_t r_override = 0;  // fixed sample size; 0 = gamma n^{1-delta} ln n
};

struct LemmaCheckResult {
  int64_t violation_count = 0;
  int64_t trials = 0;
  double empirical_rate = 0.0;
  double theoretical_budget = 0.0;
  int64_t r = 0;  // sample size used (sampling lemma only)
};

/// Two-sided test of one explicit draw of the sampling bound
/// |rho - rho_hat| <= alpha1 rho_bar + 2 alpha2 n^{q+delta}, with
/// rho = (n/r) sum_{j in R} coeffs_j x_j. Exposed for the zero-coefficient
/// and forced-coverage unit checks.
bool sampling_bound_holds(std::span<const double> coeffs, std::span<const uint8_t> x,
                          std::span<const int> sample, double alpha1, double alpha2,
                          double delta, int q);

/// Same for the rounding bound |rho - rho_hat| <= alpha rho_bar +
/// 2 alpha n^{q+delta}, rho = sum rho_j z_j against rho_hat = sum rho_j y_j.
bool rounding_bound_holds(std::span<const double> coeffs, std::span<const double> y,
                          std::span<const uint8_t> z, double alpha, double delta, int q);

/// Monte-Carlo verifier of the Sampling Lemma: per trial draws a random binary
/// x, coefficients uniform in [-(q+1) beta n^q, +(q+1) beta n^q], and a sample
/// of r = 3(d+1)(q+1) beta / (alpha1^2 alpha2) * n^{1-delta} ln n indices, and
/// counts two-sided violations.
LemmaCheckResult check_sampling_lemma(const LemmaCheckParams& params);

/// Monte-Carlo verifier of the Rounding Lemma: per trial draws a random
/// fractional y, coefficients as above, rounds independently, counts
/// violations with alpha = alpha1.
LemmaCheckResult check_rounding_lemma(const LemmaCheckParams& params);

}  // namespace smax
