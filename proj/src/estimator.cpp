#include "smax/estimator.hpp"

#include <algorithm>
#include <cmath>

#include "smax/errors.hpp"

namespace smax {

std::vector<int> Sample::distinct() const {
  std::vector<int> d = indices;
  std::sort(d.begin(), d.end());
  d.erase(std::unique(d.begin(), d.end()), d.end());
  return d;
}

Sample draw_sample(int n, int r, Rng& rng) {
  if (n < 1) throw InputError("draw_sample requires n >= 1");
  if (r < 1) throw InputError("draw_sample requires r >= 1");
  Sample s;
  s.n = n;
  s.indices.reserve(r);
  for (int i = 0; i < r; ++i)
    s.indices.push_back(static_cast<int>(rng.below(static_cast<uint64_t>(n))));
  return s;
}

namespace {

int64_t cap_at_n(double raw, int n) {
  if (!(raw > 0)) return 1;
  double c = std::ceil(raw);
  if (c >= static_cast<double>(n)) return n;
  return std::max<int64_t>(1, static_cast<int64_t>(c));
}

void check_eps(double eps1, double eps2) {
  if (!(eps1 > 0) || !(eps2 > 0)) throw InputError("eps1 and eps2 must be positive");
}

}  // namespace

int64_t sample_size(int n, double delta, double eps1, double eps2, double gamma_scale,
                    int d, double beta) {
  if (!(delta > 0 && delta <= 1)) throw InputError("delta must lie in (0, 1]");
  if (!(gamma_scale > 0) || !(beta > 0) || d < 1) throw InputError("bad sample_size parameters");
  check_eps(eps1, eps2);
  double raw = gamma_scale * d * (d - 1) * beta / (eps1 * eps1 * eps2) *
               std::pow(static_cast<double>(n), 1.0 - delta) * std::log(static_cast<double>(n));
  return cap_at_n(raw, n);
}

int64_t sample_size_maxcut(int n, double avg_degree, double eps1, double eps2,
                           double gamma_scale) {
  if (!(avg_degree > 0)) throw InputError("sample_size_maxcut requires at least one edge");
  check_eps(eps1, eps2);
  double raw = gamma_scale * n * std::log(static_cast<double>(n)) /
               (avg_degree * eps1 * eps1 * eps2);
  return cap_at_n(raw, n);
}

int64_t sample_size_kdense(int n, double delta, double eps1, double eps2,
                           double gamma_scale) {
  if (!(delta > 0 && delta <= 1)) throw InputError("delta must lie in (0, 1]");
  check_eps(eps1, eps2);
  double raw = gamma_scale * 2.0 / (eps1 * eps1 * eps2) *
               std::pow(static_cast<double>(n), 1.0 - delta / 3.0) *
               std::log(static_cast<double>(n));
  return cap_at_n(raw, n);
}

int PartialAssignment::value_of(int var) const {
  auto it = std::lower_bound(bits.begin(), bits.end(), std::make_pair(var, uint8_t{0}),
                             [](const auto& a, const auto& b) { return a.first < b.first; });
  if (it != bits.end() && it->first == var) return it->second;
  return -1;
}

PartialAssignment PartialAssignment::restrict_full(std::span<const uint8_t> x,
                                                   const std::vector<int>& vars) {
  PartialAssignment pa;
  pa.bits.reserve(vars.size());
  for (int v : vars) {
    if (v < 0 || v >= static_cast<int>(x.size()))
      throw InputError("planted assignment does not cover sampled index " + std::to_string(v + 1));
    pa.bits.emplace_back(v, x[v] ? 1 : 0);
  }
  std::sort(pa.bits.begin(), pa.bits.end());
  return pa;
}

namespace {

double clamp(double v, double lo, double hi) { return std::min(std::max(v, lo), hi); }

}  // namespace

EstimationTree estimate(const DecompositionTree& tree, const Sample& sample,
                        const PartialAssignment& s, const SmoothnessCertificate& cert,
                        EstimateVariant variant) {
  if (sample.n != tree.n()) throw InputError("sample drawn for a different variable count");
  for (int v : sample.distinct())
    if (s.value_of(v) < 0)
      throw InputError("no assignment for sampled index " + std::to_string(v + 1));
  if (variant == EstimateVariant::maxcut &&
      tree.strategy() != DecompStrategy::maxcut_symmetric)
    throw InputError("maxcut estimation requires the maxcut-symmetric decomposition");

  const int n = tree.n();
  const int d = tree.degree();
  const double extrapolation = static_cast<double>(n) / sample.r();
  const double beta = cert.beta;

  EstimationTree est;
  est.shape = &tree;
  est.rho.assign(tree.size(), 0.0);
  est.rho_bar.assign(tree.size(), 0.0);
  est.t_bar.assign(tree.size(), 0.0);

  auto walk = [&](auto&& self, int id) -> void {
    const DecompNode& nd = tree.node(id);
    const int ell = d - nd.depth;
    if (ell <= 0 || nd.children.empty()) {
      // Degree-0 leaf, or a materialized tuple whose subtree carries no
      // further monomials: the polynomial is the bare constant.
      est.rho[id] = nd.constant.to_double();
      return;
    }
    for (auto [j, child] : nd.children) self(self, child);

    double bar = 0.0;
    for (auto [j, child] : nd.children) bar += std::abs(est.rho[child]);
    const double bar_cap = ell * beta * std::pow(static_cast<double>(n), ell);
    est.rho_bar[id] = clamp(bar, 0.0, bar_cap);

    double below = 0.0;
    for (auto [j, child] : nd.children)
      if (d - tree.node(child).depth >= 1) below += est.t_bar[child];
    est.t_bar[id] = est.rho_bar[id] + below;

    if (variant == EstimateVariant::maxcut && nd.depth == 1) {
      // Paper form: rho_j estimates |N(j) cap S1| and the -1 edge leaves act
      // as indicator weights; clamp to [0, deg(j)] with deg(j) = c_j.
      double acc = 0.0;
      for (int v : sample.indices) {
        int child = tree.child_of(id, v);
        if (child >= 0 && s.value_of(v) == 1) acc += -est.rho[child];
      }
      est.rho[id] = clamp(extrapolation * acc, 0.0, nd.constant.to_double());
      return;
    }

    double acc = 0.0;
    for (int v : sample.indices) {
      int child = tree.child_of(id, v);
      if (child >= 0 && s.value_of(v) == 1) acc += est.rho[child];
    }
    const double c = nd.constant.to_double();
    double raw = c + extrapolation * acc;
    const double mag_cap = (ell + 1) * beta * std::pow(static_cast<double>(n), ell);
    double lo = std::max(c - est.rho_bar[id], -mag_cap);
    double hi = std::min(c + est.rho_bar[id], mag_cap);
    est.rho[id] = clamp(raw, lo, hi);
  };
  walk(walk, tree.root());

  for (auto [j, child] : tree.node(tree.root()).children)
    if (d - tree.node(child).depth >= 1) est.t_bar_root_sum += est.t_bar[child];

  // Aggregate absolute-estimation bounds; guaranteed by the clamps, so a
  // breach here is an internal error, not bad input.
  const double unit = cert.kappa * beta * std::pow(static_cast<double>(n), d - 1 + cert.delta);
  std::vector<double> level_sum(d + 1, 0.0);
  for (int id = 1; id < tree.size(); ++id) {
    int ell = d - tree.node(id).depth;
    if (ell >= 1) level_sum[ell] += est.rho_bar[id];
  }
  const double slack = 1e-9 * (1.0 + unit);
  for (int ell = 1; ell <= d - 1; ++ell)
    if (level_sum[ell] > ell * unit + slack)
      throw SolverError("estimation bound breach: level " + std::to_string(ell) +
                        " absolute-value estimations exceed their aggregate bound");
  if (est.t_bar_root_sum > d * (d - 1) * unit / 2.0 + slack)
    throw SolverError("estimation bound breach: cumulative estimations exceed their bound");

  return est;
}

std::vector<double> neighbor_estimates(const Graph& g, const Sample& sample,
                                       const PartialAssignment& s) {
  if (sample.n != g.n) throw InputError("sample drawn for a different vertex count");
  for (int v : sample.distinct())
    if (s.value_of(v) < 0)
      throw InputError("no assignment for sampled index " + std::to_string(v + 1));
  const double extrapolation = static_cast<double>(g.n) / sample.r();
  std::vector<double> ones_weight(g.n, 0.0);
  for (int v : sample.indices)
    if (s.value_of(v) == 1) ones_weight[v] += 1.0;
  std::vector<double> rho(g.n, 0.0);
  for (int j = 0; j < g.n; ++j) {
    double acc = 0.0;
    for (int i : g.adj[j]) acc += ones_weight[i];
    rho[j] = clamp(extrapolation * acc, 0.0, static_cast<double>(g.degree(j)));
  }
  return rho;
}

PartialAssignment AssignmentPlan::at(uint64_t ordinal) const {
  PartialAssignment pa;
  const size_t u = vars.size();
  switch (mode) {
    case AssignmentMode::exhaustive: {
      pa.bits.reserve(u);
      for (size_t i = 0; i < u; ++i)
        pa.bits.emplace_back(vars[i], static_cast<uint8_t>((ordinal >> (u - 1 - i)) & 1));
      break;
    }
    case AssignmentMode::planted:
      return PartialAssignment::restrict_full(planted, vars);
    case AssignmentMode::random_draws: {
      Rng rng = Rng::child(seed, {0xA5516E, ordinal});
      pa.bits.reserve(u);
      for (size_t i = 0; i < u; ++i)
        pa.bits.emplace_back(vars[i], static_cast<uint8_t>(rng.next_u64() & 1));
      break;
    }
  }
  return pa;
}

AssignmentPlan make_assignment_plan(const Sample& sample, AssignmentMode mode,
                                    std::span<const uint8_t> planted,
                                    uint64_t random_count, uint64_t seed,
                                    int exhaustion_cap) {
  AssignmentPlan plan;
  plan.mode = mode;
  plan.vars = sample.distinct();
  plan.seed = seed;
  switch (mode) {
    case AssignmentMode::exhaustive: {
      int u = static_cast<int>(plan.vars.size());
      if (u > exhaustion_cap)
        throw ConfigError("exhaustive mode would enumerate 2^" + std::to_string(u) +
                          " assignments over " + std::to_string(u) +
                          " distinct sampled indices, exceeding the exhaustion cap of " +
                          std::to_string(exhaustion_cap));
      plan.count = uint64_t{1} << u;
      break;
    }
    case AssignmentMode::planted:
      if (static_cast<int>(planted.size()) != sample.n)
        throw InputError("planted assignment length does not match variable count");
      plan.planted.assign(planted.begin(), planted.end());
      plan.count = 1;
      break;
    case AssignmentMode::random_draws:
      if (random_count < 1) throw InputError("random mode needs at least one draw");
      plan.count = random_count;
      break;
  }
  return plan;
}

}  // namespace smax
