#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "smax/graph.hpp"
#include "smax/poly.hpp"
#include "smax/rng.hpp"

namespace smax {

/// Multiset of variable indices drawn uniformly with replacement; duplicates
/// count with multiplicity in every estimation sum.
struct Sample {
  int n = 0;
  std::vector<int> indices;

  int r() const { return static_cast<int>(indices.size()); }
  /// Sorted unique indices.
  std::vector<int> distinct() const;
};

/// r independent uniform draws from [0, n), reproducible from the generator
/// state. Throws InputError unless 1 <= r and 1 <= n.
Sample draw_sample(int n, int r, Rng& rng);

/// ceil(gamma_scale * d(d-1) beta / (eps1^2 eps2) * n^{1-delta} * ln n),
/// capped at n.
int64_t sample_size(int n, double delta, double eps1, double eps2, double gamma_scale,
                    int d, double beta);

/// Graph form: gamma_scale * n ln n / (Delta eps1^2 eps2), capped at n.
int64_t sample_size_maxcut(int n, double avg_degree, double eps1, double eps2,
                           double gamma_scale);

/// Densest-subgraph form: n^{delta/3} plays the role of Delta.
int64_t sample_size_kdense(int n, double delta, double eps1, double eps2,
                           double gamma_scale);

/// Bit values for the distinct sampled indices.
struct PartialAssignment {
  std::vector<std::pair<int, uint8_t>> bits;  // sorted by variable index

  /// 0/1, or -1 when the variable is unassigned.
  int value_of(int var) const;
  static PartialAssignment restrict_full(std::span<const uint8_t> x,
                                         const std::vector<int>& vars);
};

enum class EstimateVariant {
  generic,  // Algorithm-1 node estimations with the smoothness clamps
  maxcut,   // per-vertex neighbor estimations clamped to [0, deg(j)]
};

/// rho / rho_bar / t_bar per decomposition node, indexed like tree.nodes().
/// After clamping: |rho| <= (l+1) beta n^l and rho in [c - rho_bar, c + rho_bar]
/// at every degree-l node, and 0 <= rho_bar <= l beta n^l.
struct EstimationTree {
  const DecompositionTree* shape = nullptr;
  std::vector<double> rho;
  std::vector<double> rho_bar;
  std::vector<double> t_bar;
  /// Sum of t_bar over the root children (the total-error control term).
  double t_bar_root_sum = 0.0;
};

/// Recursive estimation over the decomposition tree for one sample assignment.
/// Level-0 estimations are the leaf coefficients; a degree-l node gets
/// c + (n/r) * sum over the sample (with multiplicity) of s_j * rho_child(j).
/// The aggregate bounds sum rho_bar <= kappa l beta n^{d-1+delta} per level and
/// sum t_bar <= kappa d(d-1) beta n^{d-1+delta} / 2 are asserted before
/// returning. Throws InputError when a sampled index has no assigned bit.
EstimationTree estimate(const DecompositionTree& tree, const Sample& sample,
                        const PartialAssignment& s, const SmoothnessCertificate& cert,
                        EstimateVariant variant);

/// (n/r) * sum_{i in N(j) cap R} s_i with multiplicity, clamped to [0, deg(j)];
/// the per-vertex estimations shared by the Max-Cut and k-densest pipelines.
std::vector<double> neighbor_estimates(const Graph& g, const Sample& sample,
                                       const PartialAssignment& s);

enum class AssignmentMode { exhaustive, planted, random_draws };

/// Enumerable source of sample assignments. Exhaustive mode yields all 2^u
/// assignments over the u distinct sampled indices in lexicographic order;
/// planted yields the restriction of one full assignment; random yields
/// seeded draws. at() is a pure function of the ordinal, so workers can
/// process ordinals in any order.
struct AssignmentPlan {
  AssignmentMode mode = AssignmentMode::exhaustive;
  std::vector<int> vars;  // distinct sampled indices, ascending
  uint64_t count = 0;
  std::vector<uint8_t> planted;  // full assignment (planted mode)
  uint64_t seed = 0;             // master seed (random mode)

  PartialAssignment at(uint64_t ordinal) const;
};

/// Throws ConfigError (naming the cap) when exhaustive mode would enumerate
/// more than 2^cap assignments; InputError on a malformed planted vector.
AssignmentPlan make_assignment_plan(const Sample& sample, AssignmentMode mode,
                                    std::span<const uint8_t> planted,
                                    uint64_t random_count, uint64_t seed,
                                    int exhaustion_cap);

}  // namespace smax
