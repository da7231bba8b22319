#pragma once

#include <algorithm>
#include <set>
#include <vector>

#include "smax/gen.hpp"
#include "smax/graph.hpp"
#include "smax/poly.hpp"
#include "smax/rng.hpp"

namespace smax::testing {

/// Random multilinear polynomial: integer coefficients in [-5,5]\{0}, distinct
/// variable sets, at least one monomial of degree exactly d.
inline SmoothPolynomial random_poly(int n, int d, int monomials, Rng& rng) {
  d = std::min(d, n);
  std::set<std::vector<int>> seen;
  std::vector<Monomial> out;
  auto coeff = [&] {
    int64_t c = static_cast<int64_t>(rng.below(10)) - 5;
    return Rational(c >= 0 ? c + 1 : c);  // skip zero
  };
  auto pick_vars = [&](int len) {
    std::vector<int> pool(n);
    for (int i = 0; i < n; ++i) pool[i] = i;
    for (int i = 0; i < len; ++i) {
      int j = i + static_cast<int>(rng.below(n - i));
      std::swap(pool[i], pool[j]);
    }
    std::vector<int> vars(pool.begin(), pool.begin() + len);
    std::sort(vars.begin(), vars.end());
    return vars;
  };
  // Guarantee one full-degree monomial.
  {
    auto vars = pick_vars(d);
    seen.insert(vars);
    out.push_back({vars, coeff()});
  }
  int attempts = 50 * monomials + 100;  // the distinct-set pool may be small
  while (static_cast<int>(out.size()) < monomials && attempts-- > 0) {
    int len = 1 + static_cast<int>(rng.below(d));
    auto vars = pick_vars(len);
    if (!seen.insert(vars).second) continue;
    out.push_back({vars, coeff()});
  }
  int64_t c = static_cast<int64_t>(rng.below(11)) - 5;
  return SmoothPolynomial::make(n, Rational(c), std::move(out));
}

inline Graph random_graph(int n, int m, Rng& rng) {
  std::vector<std::pair<int, int>> pool;
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v) pool.emplace_back(u, v);
  for (int i = 0; i < m && i < static_cast<int>(pool.size()); ++i) {
    size_t j = i + rng.below(pool.size() - i);
    std::swap(pool[i], pool[j]);
  }
  pool.resize(std::min<size_t>(m, pool.size()));
  return Graph::make(n, std::move(pool));
}

inline std::vector<uint8_t> random_bits(int n, Rng& rng) {
  std::vector<uint8_t> x(n);
  for (auto& b : x) b = rng.next_u64() & 1;
  return x;
}

inline std::vector<uint8_t> bits_of(uint32_t mask, int n) {
  std::vector<uint8_t> x(n);
  for (int i = 0; i < n; ++i) x[i] = (mask >> i) & 1;
  return x;
}

}  // namespace smax::testing
