#include <doctest.h>

#include <cmath>

#include "helpers.hpp"
#include "smax/csp.hpp"
#include "smax/errors.hpp"
#include "smax/gen.hpp"
#include "smax/graph.hpp"

using namespace smax;
using namespace smax::testing;

namespace {

CnfFormula cnf(int n, std::vector<std::vector<int>> clauses) {
  CnfFormula f;
  f.n = n;
  f.clauses = std::move(clauses);
  validate(f);
  return f;
}

}  // namespace

TEST_CASE("arithmetize: tiny clause examples") {
  SUBCASE("(x1 or x2) -> x1 + x2 - x1x2") {
    auto p = arithmetize(cnf(2, {{1, 2}}));
    CHECK(p.constant().is_zero());
    REQUIRE(p.monomials().size() == 3);
    CHECK(p.monomials()[0].vars == std::vector<int>{0});
    CHECK(p.monomials()[0].coeff == Rational(1));
    CHECK(p.monomials()[1].vars == std::vector<int>{0, 1});
    CHECK(p.monomials()[1].coeff == Rational(-1));
    CHECK(p.monomials()[2].vars == std::vector<int>{1});
    CHECK(p.monomials()[2].coeff == Rational(1));
  }
  SUBCASE("(not x1 or not x2) -> 1 - x1x2") {
    auto p = arithmetize(cnf(2, {{-1, -2}}));
    CHECK(p.constant() == Rational(1));
    REQUIRE(p.monomials().size() == 1);
    CHECK(p.monomials()[0].vars == std::vector<int>{0, 1});
    CHECK(p.monomials()[0].coeff == Rational(-1));
  }
}

TEST_CASE("count_satisfied: clause truth examples") {
  auto f = cnf(2, {{1, 2}});
  CHECK(count_satisfied(f, std::vector<uint8_t>{0, 0}) == 0);
  CHECK(count_satisfied(f, std::vector<uint8_t>{1, 0}) == 1);
  auto many = cnf(2, {{1, 2}, {1, 2}, {1, 2}});
  CHECK(count_satisfied(many, std::vector<uint8_t>{1, 1}) == 3);
}

TEST_CASE("arithmetization exactness: evaluate == count_satisfied exhaustively") {
  Rng rng(51);
  for (int t = 0; t < 12; ++t) {
    GenSpec spec;
    spec.family = GenFamily::random_ksat;
    spec.n = 5 + static_cast<int>(rng.below(6));  // up to 10
    spec.k = spec.n >= 8 ? 2 + static_cast<int>(rng.below(2)) : 2;
    spec.delta = 0.3 + 0.3 * rng.uniform01();
    spec.seed = 5000 + t;
    auto inst = generate(spec);
    REQUIRE(inst.formula.has_value());
    auto csp = to_csp(*inst.formula);
    auto p = arithmetize(csp);
    for (uint32_t mask = 0; mask < (uint32_t{1} << spec.n); ++mask) {
      auto x = bits_of(mask, spec.n);
      Rational v = p.evaluate(x);
      CHECK(v == Rational(count_satisfied(csp, x)));
      CHECK(v == Rational(count_satisfied(*inst.formula, x)));
    }
  }
}

TEST_CASE("arithmetization smoothness: beta <= 4^k, monomials <= 4^k m") {
  Rng rng(52);
  for (int t = 0; t < 25; ++t) {
    GenSpec spec;
    spec.family = GenFamily::random_ksat;
    spec.n = 8 + static_cast<int>(rng.below(7));
    spec.k = 2 + static_cast<int>(rng.below(2));
    spec.delta = 0.5;
    spec.seed = 6000 + t;
    auto inst = generate(spec);
    auto p = arithmetize(*inst.formula);
    auto cert = certify(p, spec.delta);
    CHECK(cert.beta <= std::pow(4.0, spec.k) + 1e-9);
    CHECK(p.monomials().size() <=
          static_cast<size_t>(std::pow(4.0, spec.k)) * inst.formula->clauses.size());
  }
}

TEST_CASE("trivial lower bound: random assignments reach 2^-k m") {
  Rng rng(53);
  GenSpec spec;
  spec.family = GenFamily::random_ksat;
  spec.n = 12;
  spec.k = 3;
  spec.delta = 0.4;
  spec.seed = 99;
  auto inst = generate(spec);
  const auto& f = *inst.formula;
  int64_t best = 0;
  for (int t = 0; t < 200; ++t) {
    auto x = random_bits(f.n, rng);
    best = std::max(best, count_satisfied(f, x));
  }
  CHECK(best >= static_cast<int64_t>(std::ceil(f.m() / 8.0)));
}

TEST_CASE("parse_dimacs_cnf: good inputs and error positions") {
  auto f = parse_dimacs_cnf("p cnf 2 1\n1 2 0\n");
  REQUIRE(f.m() == 1);
  CHECK(f.clauses[0] == std::vector<int>{1, 2});

  auto g = parse_dimacs_cnf("c comment\np cnf 2 1\n1 -2 0\n");
  CHECK(g.clauses[0] == std::vector<int>{1, -2});

  SUBCASE("out-of-range variable names its line") {
    try {
      parse_dimacs_cnf("p cnf 2 1\n3 0\n");
      FAIL("expected InputError");
    } catch (const InputError& e) {
      CHECK(std::string(e.what()).find("line 2") != std::string::npos);
    }
  }
  CHECK_THROWS_AS(parse_dimacs_cnf("p cnf 2 1\n0\n"), InputError);
  CHECK_THROWS_AS(parse_dimacs_cnf("p qqq 2 1\n1 0\n"), InputError);
  CHECK_THROWS_AS(parse_dimacs_cnf("1 2 0\n"), InputError);
  CHECK_THROWS_AS(parse_dimacs_cnf("p cnf 2 2\n1 2 0\n"), InputError);
  CHECK_THROWS_AS(parse_dimacs_cnf("p cnf 2 1\n1 -1 0\n"), InputError);
}

TEST_CASE("cnf and csp formats round-trip") {
  Rng rng(54);
  GenSpec spec;
  spec.family = GenFamily::random_ksat;
  spec.n = 9;
  spec.k = 3;
  spec.delta = 0.5;
  spec.seed = 31;
  auto inst = generate(spec);
  const auto& f = *inst.formula;
  auto f2 = parse_dimacs_cnf(format_dimacs_cnf(f));
  CHECK(f2.n == f.n);
  CHECK(f2.clauses == f.clauses);

  auto csp = to_csp(f);
  auto csp2 = parse_csp(format_csp(csp));
  CHECK(csp2.n == csp.n);
  CHECK(csp2.k == csp.k);
  REQUIRE(csp2.m() == csp.m());
  for (int i = 0; i < csp.m(); ++i) {
    CHECK(csp2.constraints[i].vars == csp.constraints[i].vars);
    CHECK(csp2.constraints[i].table == csp.constraints[i].table);
  }
}

TEST_CASE("parsers survive random mutations of valid inputs") {
  // Every mutation either parses or raises InputError; nothing else.
  Rng rng(55);
  const std::string samples[] = {
      "p edge 4 3\ne 1 2\ne 2 3\ne 3 4\n",
      "p cnf 3 2\n1 -2 0\n2 3 0\n",
      "2 3 2\n1 2 : e\n2 3 : 8\n",
      "p poly 3\nc 1\n2 1 2\n-1/2 3\n",
  };
  for (int t = 0; t < 400; ++t) {
    std::string text = samples[rng.below(4)];
    int edits = 1 + static_cast<int>(rng.below(4));
    for (int e = 0; e < edits && !text.empty(); ++e) {
      size_t pos = rng.below(text.size());
      switch (rng.below(3)) {
        case 0: text[pos] = static_cast<char>(32 + rng.below(95)); break;
        case 1: text.erase(pos, 1); break;
        default: text.insert(pos, 1, static_cast<char>(32 + rng.below(95))); break;
      }
    }
    for (int kind = 0; kind < 4; ++kind) {
      try {
        switch (kind) {
          case 0: parse_dimacs_graph(text); break;
          case 1: parse_dimacs_cnf(text); break;
          case 2: parse_csp(text); break;
          default: parse_poly(text); break;
        }
      } catch (const InputError&) {
        // expected for most mutations
      }
    }
  }
  CHECK(true);  // reaching here without a crash is the property
}

TEST_CASE("csp invariants: unsatisfiable constraint rejected") {
  CspInstance inst;
  inst.n = 2;
  inst.k = 2;
  inst.constraints.push_back({{0, 1}, {0, 0, 0, 0}});
  CHECK_THROWS_AS(validate(inst), InputError);
  inst.constraints[0].table = {1, 0, 0, 0};
  CHECK_NOTHROW(validate(inst));
  inst.constraints[0].vars = {0, 0};
  CHECK_THROWS_AS(validate(inst), InputError);
}
