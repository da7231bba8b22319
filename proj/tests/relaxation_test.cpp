#include <doctest.h>

#include <cmath>
#include <optional>

#include "helpers.hpp"
#include "smax/errors.hpp"
#include "smax/relaxation.hpp"
#include "smax/scheme.hpp"

using namespace smax;
using namespace smax::testing;

namespace {

// ---------------------------------------------------------------------------
// Independent LP oracle: enumerate basic feasible points. A vertex of
// {y in [0,1]^n : rows} fixes n - k variables at 0/1 and makes k row sides
// tight; enumerate all such systems, solve, keep feasible ones.
// ---------------------------------------------------------------------------

struct TightSide {
  std::vector<double> a;
  double b;
};

bool solve_square(std::vector<std::vector<double>> m, std::vector<double> rhs,
                  std::vector<double>& out) {
  const int k = static_cast<int>(rhs.size());
  for (int col = 0; col < k; ++col) {
    int piv = -1;
    double best = 1e-9;
    for (int r = col; r < k; ++r)
      if (std::abs(m[r][col]) > best) {
        best = std::abs(m[r][col]);
        piv = r;
      }
    if (piv < 0) return false;
    std::swap(m[col], m[piv]);
    std::swap(rhs[col], rhs[piv]);
    for (int r = 0; r < k; ++r) {
      if (r == col) continue;
      double f = m[r][col] / m[col][col];
      if (f == 0.0) continue;
      for (int c = col; c < k; ++c) m[r][c] -= f * m[col][c];
      rhs[r] -= f * rhs[col];
    }
  }
  out.resize(k);
  for (int i = 0; i < k; ++i) out[i] = rhs[i] / m[i][i];
  return true;
}

bool feasible_point(const RelaxProgram& p, const std::vector<double>& y, double tol = 1e-7) {
  for (double v : y)
    if (v < -tol || v > 1 + tol) return false;
  for (const auto& row : p.rows) {
    double v = row.value_at(y);
    if (row.lower > -kInf && v < row.lower - tol) return false;
    if (row.upper < kInf && v > row.upper + tol) return false;
  }
  return true;
}

std::optional<double> lp_vertex_oracle(const RelaxProgram& p) {
  const int n = p.n;
  std::vector<TightSide> sides;
  for (const auto& row : p.rows) {
    std::vector<double> dense(n, 0.0);
    for (auto [j, c] : row.coeffs) dense[j] += c;
    if (row.lower > -kInf) sides.push_back({dense, row.lower});
    if (row.upper < kInf && row.upper != row.lower) sides.push_back({dense, row.upper});
  }
  std::optional<double> best;
  std::vector<double> y(n);

  // free_vars: which variables are solved from tight rows; the rest take every
  // 0/1 pattern. Chosen by bitmask over variables, then k-subsets of sides.
  std::vector<int> side_pick;
  auto try_point = [&](const std::vector<double>& point) {
    if (!feasible_point(p, point)) return;
    double obj = p.objective_at(point);
    if (!best || obj > *best) best = obj;
  };
  for (uint32_t free_mask = 0; free_mask < (uint32_t{1} << n); ++free_mask) {
    std::vector<int> free_vars;
    for (int j = 0; j < n; ++j)
      if ((free_mask >> j) & 1) free_vars.push_back(j);
    const int k = static_cast<int>(free_vars.size());
    if (k > static_cast<int>(sides.size())) continue;
    const int fixed = n - k;
    side_pick.assign(k, 0);
    for (int i = 0; i < k; ++i) side_pick[i] = i;
    for (;;) {
      for (uint32_t box = 0; box < (uint32_t{1} << fixed); ++box) {
        int bi = 0;
        for (int j = 0; j < n; ++j)
          if (!((free_mask >> j) & 1)) y[j] = (box >> bi++) & 1;
        if (k == 0) {
          try_point(y);
        } else {
          std::vector<std::vector<double>> m(k, std::vector<double>(k));
          std::vector<double> rhs(k);
          for (int r = 0; r < k; ++r) {
            const auto& side = sides[side_pick[r]];
            double b = side.b;
            for (int j = 0; j < n; ++j)
              if (!((free_mask >> j) & 1)) b -= side.a[j] * y[j];
            for (int c = 0; c < k; ++c) m[r][c] = side.a[free_vars[c]];
            rhs[r] = b;
          }
          std::vector<double> sol;
          if (solve_square(std::move(m), std::move(rhs), sol)) {
            for (int c = 0; c < k; ++c) y[free_vars[c]] = sol[c];
            try_point(y);
          }
        }
      }
      // next k-combination of sides
      int i = k - 1;
      while (i >= 0 && side_pick[i] == static_cast<int>(sides.size()) - k + i) --i;
      if (i < 0) break;
      ++side_pick[i];
      for (int j = i + 1; j < k; ++j) side_pick[j] = side_pick[j - 1] + 1;
      if (k == 0) break;
    }
  }
  return best;
}

RelaxProgram random_program(int n, int nrows, Rng& rng, bool force_infeasible = false) {
  RelaxProgram p;
  p.n = n;
  p.objective.assign(n, 0.0);
  for (auto& c : p.objective) c = rng.uniform01() * 6 - 3;
  std::vector<double> anchor(n);
  for (auto& v : anchor) v = rng.uniform01();
  for (int i = 0; i < nrows; ++i) {
    ProgramRow row;
    for (int j = 0; j < n; ++j)
      if (rng.uniform01() < 0.7) row.coeffs.emplace_back(j, rng.uniform01() * 4 - 2);
    if (row.coeffs.empty()) row.coeffs.emplace_back(static_cast<int>(rng.below(n)), 1.0);
    double center = row.value_at(anchor);
    row.lower = center - rng.uniform01() * 2;
    row.upper = center + rng.uniform01() * 2;
    p.rows.push_back(std::move(row));
  }
  if (force_infeasible) {
    ProgramRow a, b;
    a.coeffs.emplace_back(0, 1.0);
    a.lower = 0.8;
    a.upper = 1.0;
    b.coeffs.emplace_back(0, 1.0);
    b.lower = 0.0;
    b.upper = 0.2;
    p.rows.push_back(std::move(a));
    p.rows.push_back(std::move(b));
  }
  return p;
}

EstimationTree forced_est(const DecompositionTree& tree, std::vector<std::pair<int, double>> rho_at) {
  EstimationTree est;
  est.shape = &tree;
  est.rho.assign(tree.size(), 0.0);
  est.rho_bar.assign(tree.size(), 0.0);
  est.t_bar.assign(tree.size(), 0.0);
  for (auto [id, v] : rho_at) est.rho[id] = v;
  return est;
}

}  // namespace

TEST_CASE("maxcut program: single-edge hand example") {
  Graph g = Graph::make(2, {{0, 1}});
  auto p = from_graph_maxcut(g);
  auto tree = decompose(p, DecompStrategy::maxcut_symmetric);
  int v0 = tree.child_of(tree.root(), 0);
  int v1 = tree.child_of(tree.root(), 1);
  auto est = forced_est(tree, {{v0, 1.0}, {v1, 0.0}});
  auto prog = build_maxcut_program(tree, est, 0.1, 0.1);

  // objective y_1 * 0 + y_2 * 1
  CHECK(prog.objective[0] == doctest::Approx(0.0));
  CHECK(prog.objective[1] == doctest::Approx(1.0));
  REQUIRE(prog.rows.size() == 2);
  // row for vertex 1: 0.8 <= y_2 <= 1 (upper clamped to deg)
  CHECK(prog.rows[0].lower == doctest::Approx(0.8));
  CHECK(prog.rows[0].upper == doctest::Approx(1.0));
  // row for vertex 2: 0 <= y_1 <= 0.1 (lower clamped to 0)
  CHECK(prog.rows[1].lower == doctest::Approx(0.0));
  CHECK(prog.rows[1].upper == doctest::Approx(0.1));

  auto sol = solve(prog);
  REQUIRE(sol.status == SolveStatus::optimal);
  CHECK(sol.objective_value == doctest::Approx(1.0));
  CHECK(sol.y[0] == doctest::Approx(0.0));
  CHECK(sol.y[1] == doctest::Approx(1.0));
}

TEST_CASE("solve: infeasible bounds surface as infeasible status") {
  Rng rng(31);
  auto p = random_program(3, 2, rng, /*force_infeasible=*/true);
  auto sol = solve(p);
  CHECK(sol.status == SolveStatus::infeasible);
}

TEST_CASE("solve: unconstrained box program saturates the objective") {
  RelaxProgram p;
  p.n = 5;
  p.objective.assign(5, 1.0);
  auto sol = solve(p);
  REQUIRE(sol.status == SolveStatus::optimal);
  CHECK(sol.objective_value == doctest::Approx(5.0));
  for (double v : sol.y) CHECK(v == doctest::Approx(1.0));
}

TEST_CASE("solve matches the basic-feasible-point oracle") {
  Rng rng(32);
  int checked = 0;
  for (int t = 0; t < 30; ++t) {
    int n = 2 + static_cast<int>(rng.below(5));   // up to 6 here; acceptance does 8
    int rows = 1 + static_cast<int>(rng.below(8));
    bool force_bad = t % 7 == 6;
    auto p = random_program(n, rows, rng, force_bad);
    auto oracle = lp_vertex_oracle(p);
    auto sol = solve(p);
    if (!oracle) {
      CHECK(sol.status == SolveStatus::infeasible);
    } else {
      REQUIRE(sol.status == SolveStatus::optimal);
      CHECK(sol.objective_value == doctest::Approx(*oracle).epsilon(1e-6));
      ++checked;
    }
  }
  CHECK(checked >= 15);  // the generator anchors rows at a feasible point
}

TEST_CASE("LP optimum dominates every feasible integral point") {
  Rng rng(33);
  for (int t = 0; t < 15; ++t) {
    int n = 2 + static_cast<int>(rng.below(7));
    auto p = random_program(n, 1 + static_cast<int>(rng.below(6)), rng);
    auto sol = solve(p);
    if (sol.status != SolveStatus::optimal) continue;
    for (uint32_t mask = 0; mask < (uint32_t{1} << n); ++mask) {
      std::vector<double> y(n);
      for (int j = 0; j < n; ++j) y[j] = (mask >> j) & 1;
      if (feasible_point(p, y)) CHECK(p.objective_at(y) <= sol.objective_value + 1e-6);
    }
  }
}

TEST_CASE("planted x* is feasible for the maxcut program in almost all trials") {
  // At desk scale the sample is capped at n, so the radii must carry the
  // concentration: eps1 = eps2 = 1/2 on a dense 20-vertex graph keeps the
  // slack at ~5 standard deviations per vertex.
  Rng rng(34);
  const double eps1 = 0.5, eps2 = 0.5;
  int pass = 0, total = 0;
  for (int seed = 0; seed < 40; ++seed) {
    Graph g = random_graph(20, 120, rng);
    auto p = from_graph_maxcut(g);
    auto cert = certify(p, 0.5);
    auto tree = decompose(p, DecompStrategy::maxcut_symmetric);
    Rng srng(900 + seed);
    Sample sample =
        draw_sample(g.n, static_cast<int>(sample_size_maxcut(g.n, g.average_degree(), eps1,
                                                             eps2, 1.0)),
                    srng);
    auto xstar = random_bits(g.n, srng);  // the bound holds for any binary vector
    auto s = PartialAssignment::restrict_full(xstar, sample.distinct());
    auto est = estimate(tree, sample, s, cert, EstimateVariant::maxcut);
    auto prog = build_maxcut_program(tree, est, eps1, eps2);
    std::vector<double> y(g.n);
    for (int j = 0; j < g.n; ++j) y[j] = xstar[j];
    ++total;
    if (feasible_point(prog, y)) ++pass;
  }
  REQUIRE(total >= 30);
  CHECK(pass >= total * 95 / 100);
}

TEST_CASE("cut value of feasible points: |p(y) - objective(y)| <= 2(eps1+eps2) m") {
  Rng rng(35);
  for (int t = 0; t < 12; ++t) {
    Graph g = random_graph(10, 25, rng);
    if (g.m() < 5) continue;
    auto p = from_graph_maxcut(g);
    auto cert = certify(p, 0.5);
    double eps1 = 0.05, eps2 = 0.05;
    auto tree = decompose(p, DecompStrategy::maxcut_symmetric);
    Rng srng(700 + t);
    Sample sample = draw_sample(g.n, g.n, srng);
    auto s = PartialAssignment::restrict_full(random_bits(g.n, srng), sample.distinct());
    auto est = estimate(tree, sample, s, cert, EstimateVariant::maxcut);
    auto prog = build_maxcut_program(tree, est, eps1, eps2);

    std::vector<std::vector<double>> points;
    auto base = solve(prog);
    if (base.status != SolveStatus::optimal) continue;
    points.push_back(base.y);
    for (int rep = 0; rep < 4; ++rep) {
      auto q = prog;
      for (auto& c : q.objective) c = srng.uniform01() * 4 - 2;
      auto sol = solve(q);
      if (sol.status == SolveStatus::optimal) points.push_back(sol.y);
    }
    if (points.size() >= 2) {  // midpoints stay feasible by convexity
      std::vector<double> mid(g.n);
      for (int j = 0; j < g.n; ++j) mid[j] = 0.5 * (points[0][j] + points[1][j]);
      points.push_back(mid);
    }
    const double budget = 2 * (eps1 + eps2) * g.m();
    for (const auto& y : points) {
      REQUIRE(feasible_point(prog, y));
      CHECK(std::abs(p.evaluate_real(y) - prog.objective_at(y)) <= budget + 1e-6);
    }
  }
}

TEST_CASE("generic value of feasible points tracked by cumulative estimations") {
  Rng rng(36);
  for (int t = 0; t < 12; ++t) {
    int n = 5 + static_cast<int>(rng.below(6));
    int d = 2 + static_cast<int>(rng.below(2));
    auto p = random_poly(n, d, 4 + static_cast<int>(rng.below(10)), rng);
    double delta = 0.5;
    auto cert = certify(p, delta);
    double eps1 = 0.04, eps2 = 0.03;
    auto tree = decompose(p, DecompStrategy::canonical_lex);
    Rng srng(800 + t);
    Sample sample = draw_sample(n, n, srng);
    auto s = PartialAssignment::restrict_full(random_bits(n, srng), sample.distinct());
    auto est = estimate(tree, sample, s, cert, EstimateVariant::generic);
    auto prog = build_generic_program(tree, est, eps1, eps2, delta);

    std::vector<std::vector<double>> points;
    for (int rep = 0; rep < 5; ++rep) {
      auto q = prog;
      for (auto& c : q.objective) c = srng.uniform01() * 4 - 2;
      auto sol = solve(q);
      if (sol.status == SolveStatus::optimal) points.push_back(sol.y);
    }
    const double budget = eps1 * est.t_bar_root_sum +
                          (d - 1) * eps2 * std::pow(static_cast<double>(n), d - 1 + delta);
    for (const auto& y : points) {
      REQUIRE(feasible_point(prog, y));
      CHECK(std::abs(p.evaluate_real(y) - prog.objective_at(y)) <= budget + 1e-6);
    }
  }
}

TEST_CASE("generic program: absent tuples emit no constraint") {
  // p = 6 x1x2x3: only the chain (1), (1,2) carry rows; nothing else.
  auto p = SmoothPolynomial::make(3, Rational(0), {{{0, 1, 2}, Rational(6)}});
  auto tree = decompose(p, DecompStrategy::canonical_lex);
  auto cert = certify(p, 0.5);
  Rng rng(5);
  Sample sample = draw_sample(3, 3, rng);
  auto s = PartialAssignment::restrict_full(std::vector<uint8_t>{1, 1, 1}, sample.distinct());
  auto est = estimate(tree, sample, s, cert, EstimateVariant::generic);
  auto prog = build_generic_program(tree, est, 0.1, 0.1, 0.5);
  CHECK(prog.rows.size() == 2);
}

TEST_CASE("kdense program carries exactly one cardinality equality") {
  Rng rng(37);
  Graph g = random_graph(8, 14, rng);
  std::vector<double> rho(g.n, 1.0);
  auto prog = build_kdense_program(g, rho, 0.1, 0.1, 0.5, 3);
  int equalities = 0;
  for (const auto& row : prog.rows)
    if (row.lower == row.upper) {
      ++equalities;
      CHECK(row.lower == doctest::Approx(3.0));
      CHECK(row.coeffs.size() == static_cast<size_t>(g.n));
    }
  CHECK(equalities == 1);
}

TEST_CASE("program text dump mentions objective and rows") {
  RelaxProgram p;
  p.n = 2;
  p.objective = {1.0, 0.0};
  ProgramRow row;
  row.coeffs = {{0, 1.0}, {1, 1.0}};
  row.lower = 0.5;
  row.upper = 1.5;
  row.label = "demo";
  p.rows.push_back(row);
  auto text = p.to_text();
  CHECK(text.find("max") != std::string::npos);
  CHECK(text.find("demo") != std::string::npos);
}
