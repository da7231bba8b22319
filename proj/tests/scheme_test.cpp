#include <doctest.h>

#include <cmath>

#include "helpers.hpp"
#include "smax/errors.hpp"
#include "smax/oracle.hpp"
#include "smax/scheme.hpp"

using namespace smax;
using namespace smax::testing;

namespace {

Graph triangle() { return Graph::make(3, {{0, 1}, {1, 2}, {0, 2}}); }

SchemeConfig planted_cfg(uint64_t seed) {
  SchemeConfig cfg;
  cfg.mode = AssignmentMode::planted;
  cfg.oracle_compare = true;
  cfg.seed = seed;
  return cfg;
}

}  // namespace

TEST_CASE("eps_split: the paper's budget splits") {
  auto [m1, m2] = eps_split(0.16, 2, 2.0, 1.0, ProgramVariant::maxcut);
  CHECK(m1 == doctest::Approx(0.01));
  CHECK(m2 == doctest::Approx(0.01));

  auto [g1, g2] = eps_split(0.24, 3, 1.0, 1.0, ProgramVariant::generic);
  CHECK(g1 == doctest::Approx(0.01));   // eps / (4 d(d-1) beta kappa) = 0.24/24
  CHECK(g2 == doctest::Approx(0.015));  // eps / (8(d-1)) = 0.24/16

  auto [k1, k2] = eps_split(0.8, 2, 1.0, 1.0, ProgramVariant::kdense);
  CHECK(k1 == doctest::Approx(0.1));
  CHECK(k2 == doctest::Approx(0.1));

  CHECK_THROWS_AS(eps_split(1.5, 2, 1.0, 1.0, ProgramVariant::maxcut), InputError);
  CHECK_THROWS_AS(eps_split(0.2, 1, 1.0, 1.0, ProgramVariant::generic), InputError);
}

TEST_CASE("approximate_maxcut: triangle planted recovers the optimum") {
  auto report = approximate_maxcut(triangle(), planted_cfg(1));
  REQUIRE(report.has_solution);
  CHECK(report.value == Rational(2));
  CHECK(report.ratio == doctest::Approx(1.0));
  CHECK(report.method == "pipeline");
}

TEST_CASE("approximate_maxcut: single edge reaches value 1 in every mode") {
  Graph g = Graph::make(2, {{0, 1}});
  for (auto mode : {AssignmentMode::exhaustive, AssignmentMode::planted,
                    AssignmentMode::random_draws}) {
    SchemeConfig cfg;
    cfg.mode = mode;
    cfg.oracle_compare = true;  // supplies the plant in planted mode
    cfg.seed = 3;
    auto report = approximate_maxcut(g, cfg);
    REQUIRE(report.has_solution);
    CHECK(report.value == Rational(1));
  }
}

TEST_CASE("approximate_maxcut: errors and the early cap check") {
  SchemeConfig cfg;
  CHECK_THROWS_AS(approximate_maxcut(Graph::make(3, {}), cfg), InputError);

  Rng rng(71);
  Graph g = random_graph(20, 30, rng);
  SchemeConfig capped;
  capped.mode = AssignmentMode::exhaustive;
  capped.exhaustion_cap = 3;
  capped.sample_override = 20;
  CHECK_THROWS_AS(approximate_maxcut(g, capped), ConfigError);

  SchemeConfig plantless;
  plantless.mode = AssignmentMode::planted;
  CHECK_THROWS_AS(approximate_maxcut(g, plantless), InputError);
}

TEST_CASE("maximize_smooth: linear and constant polynomials solved exactly") {
  auto lin = SmoothPolynomial::make(
      3, Rational(2), {{{0}, Rational(3)}, {{1}, Rational(-1)}, {{2}, Rational(5)}});
  SchemeConfig cfg;
  auto report = maximize_smooth(lin, cfg);
  CHECK(report.method == "linear-exact");
  CHECK(report.best == std::vector<uint8_t>{1, 0, 1});
  CHECK(report.value == Rational(10));

  auto constant = SmoothPolynomial::make(4, Rational(7), {});
  auto creport = maximize_smooth(constant, cfg);
  CHECK(creport.method == "constant");
  CHECK(creport.value == Rational(7));
}

TEST_CASE("maximize_smooth: planted mode reaches the additive budget") {
  Rng rng(72);
  int ok = 0, total = 0;
  for (int t = 0; t < 10; ++t) {
    auto p = random_poly(10, 3, 12, rng);
    SchemeConfig cfg = planted_cfg(100 + t);
    cfg.eps = 0.25;
    cfg.delta = 0.5;
    auto report = maximize_smooth(p, cfg);
    REQUIRE(report.has_solution);
    // value integrity: reported value is the exact evaluation
    CHECK(p.evaluate(report.best) == report.value);
    ++total;
    if (report.additive_gap <= report.additive_budget + 1e-9) ++ok;
  }
  CHECK(ok == total);
}

TEST_CASE("approximate_kcsp: single clause and identical clauses") {
  CspInstance one;
  one.n = 2;
  one.k = 2;
  one.constraints.push_back({{0, 1}, {0, 1, 1, 1}});  // x1 or x2
  SchemeConfig cfg = planted_cfg(5);
  auto report = approximate_kcsp(one, cfg);
  REQUIRE(report.has_solution);
  CHECK(report.satisfied == 1);
  CHECK(report.trivial_opt_bound == doctest::Approx(0.25));

  CspInstance same;
  same.n = 3;
  same.k = 2;
  for (int i = 0; i < 6; ++i) same.constraints.push_back({{0, 1}, {0, 1, 1, 1}});
  auto r2 = approximate_kcsp(same, planted_cfg(6));
  REQUIRE(r2.has_solution);
  CHECK(r2.satisfied == 6);
  CHECK(r2.oracle_satisfied == 6);
}

TEST_CASE("approximate_kcsp: random 2-SAT planted stays near the oracle count") {
  Rng rng(73);
  int ok = 0;
  for (int t = 0; t < 6; ++t) {
    GenSpec spec;
    spec.family = GenFamily::random_ksat;
    spec.n = 12;
    spec.k = 2;
    spec.delta = 0.5;
    spec.seed = 400 + t;
    auto inst = generate(spec);
    SchemeConfig cfg = planted_cfg(500 + t);
    cfg.eps = 0.3;
    auto report = approximate_kcsp(to_csp(*inst.formula), cfg);
    REQUIRE(report.has_solution);
    if (report.satisfied >= static_cast<int64_t>(
                                std::floor(0.7 * static_cast<double>(report.oracle_satisfied))))
      ++ok;
  }
  CHECK(ok >= 5);
}

TEST_CASE("approximate_kdense: trivial cases and the enumeration branch") {
  Rng rng(74);
  Graph g = random_graph(10, 20, rng);
  SchemeConfig cfg;
  cfg.seed = 2;

  auto whole = approximate_kdense(g, g.n, cfg);
  CHECK(whole.value == Rational(g.m()));

  auto single = approximate_kdense(g, 1, cfg);
  CHECK(single.value == Rational(0));

  CHECK_THROWS_AS(approximate_kdense(g, g.n + 1, cfg), InputError);

  for (int t = 0; t < 6; ++t) {
    Graph h = random_graph(12, 26, rng);
    int k = 2 + static_cast<int>(rng.below(6));
    SchemeConfig c2;
    c2.seed = 600 + t;
    auto report = approximate_kdense(h, k, c2);
    CHECK(report.branch == "enumeration");
    CHECK(report.value == Rational(brute_force_kdense(h, k).edges));
    int ones = 0;
    for (auto b : report.best) ones += b;
    CHECK(ones == k);
  }
}

TEST_CASE("approximate_kdense: sampled branch returns exactly k ones") {
  Rng rng(75);
  for (int t = 0; t < 5; ++t) {
    Graph g = random_graph(14, 40, rng);
    if (g.m() < 20) continue;
    SchemeConfig cfg = planted_cfg(700 + t);
    cfg.kdense_budget = 0;  // force the sampled pipeline
    cfg.eps = 0.3;
    auto report = approximate_kdense(g, 5, cfg);
    REQUIRE(report.has_solution);
    CHECK(report.branch == "sampled");
    CHECK(report.kdense_threshold ==
          doctest::Approx(std::pow(14.0, 1.0 - cfg.delta / 3.0)));
    int ones = 0;
    for (auto b : report.best) ones += b;
    CHECK(ones == 5);
    REQUIRE(report.repair_moves >= 0);
    // repair never moves more than the rounding's cardinality drift allows
    double budget = 2.0 * std::sqrt(14.0 * std::log(14.0)) + 1.0;
    CHECK(report.repair_moves <= budget);
  }
}

TEST_CASE("isolated vertices ride along through the maxcut pipeline") {
  // Vertex 5 has no edges: no objective weight, no rows, bit stays put.
  Graph g = Graph::make(6, {{0, 1}, {0, 2}, {0, 3}, {0, 4}, {1, 2}});
  SchemeConfig cfg;
  cfg.mode = AssignmentMode::exhaustive;
  cfg.oracle_compare = true;
  cfg.seed = 4;
  auto report = approximate_maxcut(g, cfg);
  REQUIRE(report.has_solution);
  CHECK(report.value == report.oracle_value);
  CHECK(report.best.size() == 6);
}

TEST_CASE("best-over-assignments never decreases with more assignments") {
  Rng rng(76);
  Graph g = random_graph(12, 30, rng);
  Rational prev(-1);
  for (uint64_t count : {1ull, 2ull, 4ull, 8ull, 16ull}) {
    SchemeConfig cfg;
    cfg.mode = AssignmentMode::random_draws;
    cfg.random_assignments = count;
    cfg.seed = 99;
    auto report = approximate_maxcut(g, cfg);
    REQUIRE(report.has_solution);
    CHECK(report.value >= prev);
    prev = report.value;
  }
}

TEST_CASE("reports identical regardless of worker count") {
  Rng rng(77);
  Graph g = random_graph(14, 34, rng);
  SchemeConfig a;
  a.mode = AssignmentMode::exhaustive;
  a.sample_override = 6;
  a.seed = 11;
  a.threads = 1;
  SchemeConfig b = a;
  b.threads = 2;
  auto ra = approximate_maxcut(g, a);
  auto rb = approximate_maxcut(g, b);
  CHECK(ra.best == rb.best);
  CHECK(ra.value == rb.value);
  CHECK(ra.fractional_objective == rb.fractional_objective);
  CHECK(ra.winning_ordinal == rb.winning_ordinal);
  CHECK(ra.lp_infeasible == rb.lp_infeasible);
  CHECK(ra.solver_errors == rb.solver_errors);
}
