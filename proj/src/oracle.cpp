#include "smax/oracle.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <cmath>
#include <limits>
#include <numeric>
#include <thread>

#include "smax/errors.hpp"
#include "smax/rng.hpp"

namespace smax {

namespace {

// Polynomial with coefficients rescaled to a common denominator so the Gray
// walk runs on int64 adds. Values stay below sum |coeffs|, well inside range
// at desk scale; the scaling itself is overflow-guarded by Rational.
struct ScaledPoly {
  int n = 0;
  int64_t denom = 1;
  int64_t constant = 0;
  std::vector<uint32_t> masks;
  std::vector<int64_t> coeffs;
  // per-variable: (coefficient, mask of the monomial's other variables)
  std::vector<std::vector<std::pair<int64_t, uint32_t>>> per_var;

  explicit ScaledPoly(const SmoothPolynomial& p) : n(p.n()) {
    Rational lcm{1};
    auto fold = [&](const Rational& r) {
      Rational g = lcm * Rational(r.den()) / Rational(std::gcd(lcm.num(), r.den()));
      lcm = g;
    };
    fold(p.constant());
    for (const auto& m : p.monomials()) fold(m.coeff);
    denom = lcm.num();
    auto scaled = [&](const Rational& r) { return (r * Rational(denom)).num(); };
    constant = scaled(p.constant());
    per_var.assign(n, {});
    for (const auto& m : p.monomials()) {
      uint32_t mask = 0;
      for (int v : m.vars) mask |= uint32_t{1} << v;
      masks.push_back(mask);
      int64_t c = scaled(m.coeff);
      coeffs.push_back(c);
      for (int v : m.vars) per_var[v].emplace_back(c, mask & ~(uint32_t{1} << v));
    }
  }

  int64_t value_at(uint32_t x) const {
    int64_t v = constant;
    for (size_t i = 0; i < masks.size(); ++i)
      if ((x & masks[i]) == masks[i]) v += coeffs[i];
    return v;
  }

  // Change in value when bit v flips; sign chosen by the new bit state.
  int64_t flip_delta(uint32_t x_before, int v) const {
    int64_t d = 0;
    for (auto [c, others] : per_var[v])
      if ((x_before & others) == others) d += c;
    return (x_before >> v) & 1 ? -d : d;
  }
};

uint32_t lex_key(uint32_t mask, int n) {
  // Bit-reverse within n bits: larger key = lexicographically larger x vector.
  uint32_t key = 0;
  for (int i = 0; i < n; ++i)
    if ((mask >> i) & 1) key |= uint32_t{1} << (n - 1 - i);
  return key;
}

struct BestTracker {
  bool any = false;
  int64_t value = 0;
  uint32_t mask = 0;
  uint32_t key = 0;

  void offer(int64_t v, uint32_t m, int n) {
    uint32_t k = 0;
    if (!any || v > value) {
      any = true;
      value = v;
      mask = m;
      key = lex_key(m, n);
      return;
    }
    if (v == value && (k = lex_key(m, n)) < key) {
      mask = m;
      key = k;
    }
  }

  void merge(const BestTracker& o) {
    if (!o.any) return;
    if (!any || o.value > value || (o.value == value && o.key < key)) *this = o;
  }
};

}  // namespace

MaxResult brute_force_max(const SmoothPolynomial& p, int threads) {
  if (p.n() > 26)
    throw InputError("brute force refuses n = " + std::to_string(p.n()) +
                     " (limit 26; 2^n enumeration)");
  const int n = p.n();
  if (n == 0) return {std::vector<uint8_t>{}, p.constant()};
  ScaledPoly sp(p);

  // Fixed prefix chunks make the split independent of the worker count.
  const int prefix_bits = n >= 18 ? std::min(6, n - 18 + 4) : 0;
  const int low_bits = n - prefix_bits;
  const uint32_t chunks = uint32_t{1} << prefix_bits;
  const uint64_t steps = uint64_t{1} << low_bits;

  std::vector<BestTracker> chunk_best(chunks);
  std::atomic<uint32_t> next{0};
  auto worker = [&] {
    for (;;) {
      uint32_t c = next.fetch_add(1);
      if (c >= chunks) return;
      BestTracker best;
      uint32_t x = c << low_bits;
      int64_t value = sp.value_at(x);
      best.offer(value, x, n);
      for (uint64_t i = 1; i < steps; ++i) {
        int v = std::countr_zero(i);
        value += sp.flip_delta(x, v);
        x ^= uint32_t{1} << v;
        best.offer(value, x, n);
      }
      chunk_best[c] = best;
    }
  };
  int nthreads = std::max(1, std::min<int>(threads, static_cast<int>(chunks)));
  if (nthreads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < nthreads; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  BestTracker best;
  for (const auto& cb : chunk_best) best.merge(cb);

  MaxResult result;
  result.argmax.assign(n, 0);
  for (int i = 0; i < n; ++i) result.argmax[i] = (best.mask >> i) & 1;
  result.value = Rational(best.value, sp.denom);
  return result;
}

int64_t binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  k = std::min(k, n - k);
  __int128 acc = 1;
  for (int i = 1; i <= k; ++i) {
    acc = acc * (n - k + i) / i;
    if (acc > std::numeric_limits<int64_t>::max()) return std::numeric_limits<int64_t>::max();
  }
  return static_cast<int64_t>(acc);
}

KdenseResult brute_force_kdense(const Graph& g, int k) {
  if (k < 0 || k > g.n) throw InputError("k out of range");
  int64_t combos = binomial(g.n, k);
  if (combos > 5'000'000)
    throw InputError("brute force refuses C(" + std::to_string(g.n) + "," + std::to_string(k) +
                     ") = " + std::to_string(combos) + " subsets (limit 5e6)");
  std::vector<uint32_t> adj(g.n, 0);
  for (auto [u, v] : g.edges) {
    adj[u] |= uint32_t{1} << v;
    adj[v] |= uint32_t{1} << u;
  }
  KdenseResult best;
  best.edges = -1;
  // Recursive walk over k-subsets with incremental edge counts.
  std::vector<int> chosen;
  uint32_t mask = 0;
  int64_t edges = 0;
  auto walk = [&](auto&& self, int start) -> void {
    if (static_cast<int>(chosen.size()) == k) {
      if (edges > best.edges) {
        best.edges = edges;
        best.members.assign(g.n, 0);
        for (int v : chosen) best.members[v] = 1;
      }
      return;
    }
    int need = k - static_cast<int>(chosen.size());
    for (int v = start; v + need <= g.n; ++v) {
      int64_t gain = std::popcount(adj[v] & mask);
      chosen.push_back(v);
      mask |= uint32_t{1} << v;
      edges += gain;
      self(self, v + 1);
      edges -= gain;
      mask &= ~(uint32_t{1} << v);
      chosen.pop_back();
    }
  };
  walk(walk, 0);
  if (best.edges < 0) {  // k == 0
    best.edges = 0;
    best.members.assign(g.n, 0);
  }
  return best;
}

bool sampling_bound_holds(std::span<const double> coeffs, std::span<const uint8_t> x,
                          std::span<const int> sample, double alpha1, double alpha2,
                          double delta, int q) {
  const int n = static_cast<int>(coeffs.size());
  double rho_hat = 0.0, rho_bar = 0.0;
  for (int j = 0; j < n; ++j) {
    rho_bar += std::abs(coeffs[j]);
    if (x[j]) rho_hat += coeffs[j];
  }
  double acc = 0.0;
  for (int j : sample)
    if (x[j]) acc += coeffs[j];
  const double rho = static_cast<double>(n) / static_cast<double>(sample.size()) * acc;
  const double radius =
      alpha1 * rho_bar + 2.0 * alpha2 * std::pow(static_cast<double>(n), q + delta);
  return rho >= rho_hat - radius && rho <= rho_hat + radius;
}

bool rounding_bound_holds(std::span<const double> coeffs, std::span<const double> y,
                          std::span<const uint8_t> z, double alpha, double delta, int q) {
  const int n = static_cast<int>(coeffs.size());
  double rho_hat = 0.0, rho_bar = 0.0, rho = 0.0;
  for (int j = 0; j < n; ++j) {
    rho_bar += std::abs(coeffs[j]);
    rho_hat += coeffs[j] * y[j];
    if (z[j]) rho += coeffs[j];
  }
  const double radius =
      alpha * rho_bar + 2.0 * alpha * std::pow(static_cast<double>(n), q + delta);
  return rho >= rho_hat - radius && rho <= rho_hat + radius;
}

namespace {

void check_lemma_params(const LemmaCheckParams& p) {
  if (p.n < 1 || p.trials < 1 || p.q < 0 || !(p.beta >= 1.0) || !(p.delta > 0) ||
      !(p.alpha1 > 0) || !(p.alpha2 > 0) || p.d < 1)
    throw InputError("invalid lemma-check parameters");
}

}  // namespace

LemmaCheckResult check_sampling_lemma(const LemmaCheckParams& params) {
  check_lemma_params(params);
  const int n = params.n;
  const double gamma = 3.0 * (params.d + 1) * (params.q + 1) * params.beta /
                       (params.alpha1 * params.alpha1 * params.alpha2);
  int64_t r = params.r_override > 0
                  ? params.r_override
                  : static_cast<int64_t>(std::ceil(
                        gamma * std::pow(static_cast<double>(n), 1.0 - params.delta) *
                        std::log(static_cast<double>(n))));
  r = std::max<int64_t>(r, 1);
  const double bound = (params.q + 1) * params.beta * std::pow(static_cast<double>(n), params.q);

  LemmaCheckResult result;
  result.trials = params.trials;
  result.r = r;
  result.theoretical_budget = 4.0 / std::pow(static_cast<double>(n), params.d + 1);
  std::vector<double> coeffs(n);
  std::vector<uint8_t> x(n);
  std::vector<int> sample(r);
  for (int64_t t = 0; t < params.trials; ++t) {
    Rng rng = Rng::child(params.seed, {0x5a3ull, static_cast<uint64_t>(t)});
    for (int j = 0; j < n; ++j) x[j] = rng.next_u64() & 1;
    for (int j = 0; j < n; ++j) coeffs[j] = (2.0 * rng.uniform01() - 1.0) * bound;
    for (int64_t i = 0; i < r; ++i)
      sample[i] = static_cast<int>(rng.below(static_cast<uint64_t>(n)));
    if (!sampling_bound_holds(coeffs, x, sample, params.alpha1, params.alpha2, params.delta,
                              params.q))
      ++result.violation_count;
  }
  result.empirical_rate =
      static_cast<double>(result.violation_count) / static_cast<double>(result.trials);
  return result;
}

LemmaCheckResult check_rounding_lemma(const LemmaCheckParams& params) {
  check_lemma_params(params);
  const int n = params.n;
  const double bound = (params.q + 1) * params.beta * std::pow(static_cast<double>(n), params.q);

  LemmaCheckResult result;
  result.trials = params.trials;
  result.r = 0;
  result.theoretical_budget = 4.0 / std::pow(static_cast<double>(n), params.d + 1);
  std::vector<double> coeffs(n), y(n);
  std::vector<uint8_t> z(n);
  for (int64_t t = 0; t < params.trials; ++t) {
    Rng rng = Rng::child(params.seed, {0x707ull, static_cast<uint64_t>(t)});
    for (int j = 0; j < n; ++j) y[j] = rng.uniform01();
    for (int j = 0; j < n; ++j) coeffs[j] = (2.0 * rng.uniform01() - 1.0) * bound;
    for (int j = 0; j < n; ++j) z[j] = rng.bernoulli(y[j]) ? 1 : 0;
    if (!rounding_bound_holds(coeffs, y, z, params.alpha1, params.delta, params.q))
      ++result.violation_count;
  }
  result.empirical_rate =
      static_cast<double>(result.violation_count) / static_cast<double>(result.trials);
  return result;
}

}  // namespace smax
