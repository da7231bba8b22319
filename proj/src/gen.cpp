#include "smax/gen.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "smax/errors.hpp"
#include "smax/oracle.hpp"
#include "smax/rng.hpp"

namespace smax {

namespace {

int64_t graph_edge_target(int n, double delta) {
  int64_t all = binomial(n, 2);
  int64_t want = std::llround(std::pow(static_cast<double>(n), 1.0 + delta) / 2.0);
  return std::min(all, std::max<int64_t>(want, 0));
}

/// First `take` elements of a seeded partial Fisher-Yates shuffle of `pool`.
template <typename T>
std::vector<T> pick_distinct(std::vector<T> pool, size_t take, Rng& rng) {
  take = std::min(take, pool.size());
  for (size_t i = 0; i < take; ++i) {
    size_t j = i + static_cast<size_t>(rng.below(pool.size() - i));
    std::swap(pool[i], pool[j]);
  }
  pool.resize(take);
  return pool;
}

GeneratedInstance gen_graph_density(const GenSpec& spec, Rng& rng) {
  std::vector<std::pair<int, int>> pool;
  for (int u = 0; u < spec.n; ++u)
    for (int v = u + 1; v < spec.n; ++v) pool.emplace_back(u, v);
  auto edges = pick_distinct(std::move(pool),
                             static_cast<size_t>(graph_edge_target(spec.n, spec.delta)), rng);
  GeneratedInstance out;
  out.family = spec.family;
  out.graph = Graph::make(spec.n, std::move(edges));
  return out;
}

GeneratedInstance gen_planted_cut(const GenSpec& spec, Rng& rng) {
  std::vector<uint8_t> side(spec.n);
  for (auto& s : side) s = rng.next_u64() & 1;
  bool all_same = std::all_of(side.begin(), side.end(), [&](uint8_t s) { return s == side[0]; });
  if (all_same && spec.n > 1) side[spec.n - 1] ^= 1;

  std::vector<std::pair<int, int>> cross_pool, same_pool;
  for (int u = 0; u < spec.n; ++u)
    for (int v = u + 1; v < spec.n; ++v)
      (side[u] != side[v] ? cross_pool : same_pool).emplace_back(u, v);

  int64_t m = graph_edge_target(spec.n, spec.delta);
  int64_t cross_m = std::min<int64_t>(static_cast<int64_t>(std::ceil(0.8 * m)),
                                      static_cast<int64_t>(cross_pool.size()));
  int64_t same_m = std::min<int64_t>(m - cross_m, static_cast<int64_t>(same_pool.size()));
  cross_m = std::min<int64_t>(m - same_m, static_cast<int64_t>(cross_pool.size()));

  auto edges = pick_distinct(std::move(cross_pool), static_cast<size_t>(cross_m), rng);
  auto same = pick_distinct(std::move(same_pool), static_cast<size_t>(same_m), rng);
  edges.insert(edges.end(), same.begin(), same.end());

  GeneratedInstance out;
  out.family = spec.family;
  out.graph = Graph::make(spec.n, std::move(edges));
  out.answer = std::move(side);
  return out;
}

GeneratedInstance gen_ksat(const GenSpec& spec, Rng& rng, bool planted) {
  const int n = spec.n;
  const int k = spec.k;
  if (k < 1 || k > n) throw InputError("ksat generator requires 1 <= k <= n");
  int64_t m = std::llround(std::pow(static_cast<double>(n), k - 1 + spec.delta));
  m = std::max<int64_t>(m, 1);
  int64_t distinct_clauses = binomial(n, k);
  if (distinct_clauses < (int64_t{1} << 62) / (int64_t{1} << k))
    distinct_clauses *= int64_t{1} << k;
  if (m > distinct_clauses)
    throw InputError("requested " + std::to_string(m) + " clauses but only " +
                     std::to_string(distinct_clauses) + " distinct ones exist");

  std::vector<uint8_t> truth;
  if (planted) {
    truth.resize(n);
    for (auto& b : truth) b = rng.next_u64() & 1;
  }

  std::set<std::vector<int>> seen;
  std::vector<std::vector<int>> clauses;
  std::vector<int> vars(n);
  for (int i = 0; i < n; ++i) vars[i] = i;
  int64_t attempts_left = 200 * m + 10000;
  while (static_cast<int64_t>(clauses.size()) < m) {
    if (--attempts_left < 0)
      throw InputError("clause sampling failed to reach the target count; density too high");
    for (int i = 0; i < k; ++i) {
      int j = i + static_cast<int>(rng.below(static_cast<uint64_t>(n - i)));
      std::swap(vars[i], vars[j]);
    }
    std::vector<int> picked(vars.begin(), vars.begin() + k);
    std::sort(picked.begin(), picked.end());
    std::vector<int> clause(k);
    for (int i = 0; i < k; ++i) {
      bool neg = rng.next_u64() & 1;
      clause[i] = neg ? -(picked[i] + 1) : picked[i] + 1;
    }
    if (planted) {
      bool sat = false;
      for (int lit : clause) {
        bool value = truth[std::abs(lit) - 1];
        if (lit > 0 ? value : !value) {
          sat = true;
          break;
        }
      }
      if (!sat) {
        int flip = static_cast<int>(rng.below(static_cast<uint64_t>(k)));
        clause[flip] = -clause[flip];
      }
    }
    if (seen.insert(clause).second) clauses.push_back(std::move(clause));
  }

  GeneratedInstance out;
  out.family = spec.family;
  CnfFormula f;
  f.n = n;
  f.clauses = std::move(clauses);
  validate(f);
  out.formula = std::move(f);
  out.answer = std::move(truth);
  return out;
}

}  // namespace

GeneratedInstance generate(const GenSpec& spec) {
  if (spec.n < 1) throw InputError("generator requires n >= 1");
  if (!(spec.delta > 0 && spec.delta <= 1)) throw InputError("delta must lie in (0, 1]");
  Rng rng = Rng::child(spec.seed, {0x6e6, static_cast<uint64_t>(spec.family)});
  switch (spec.family) {
    case GenFamily::graph_density:
      return gen_graph_density(spec, rng);
    case GenFamily::planted_cut:
      return gen_planted_cut(spec, rng);
    case GenFamily::random_ksat:
      return gen_ksat(spec, rng, false);
    case GenFamily::planted_ksat:
      return gen_ksat(spec, rng, true);
  }
  throw InputError("unknown generator family");
}

}  // namespace smax
