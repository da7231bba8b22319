#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "smax/poly.hpp"

namespace smax {

/// CNF with DIMACS-style literals: +v means x_{v-1}, -v its negation.
/// No clause may contain a variable and its negation, nor be empty.
struct CnfFormula {
  int n = 0;
  std::vector<std::vector<int>> clauses;

  int m() const { return static_cast<int>(clauses.size()); }
  /// Largest clause arity.
  int k() const;
};

/// One boolean constraint over `vars` (distinct, 0-based). Row index r of the
/// truth table assigns bit (r >> i) & 1 to vars[i]; the table must have at
/// least one satisfying row.
struct CspConstraint {
  std::vector<int> vars;
  std::vector<uint8_t> table;  // size 2^arity
};

struct CspInstance {
  int n = 0;
  int k = 0;  // maximum arity
  std::vector<CspConstraint> constraints;

  int m() const { return static_cast<int>(constraints.size()); }
};

/// Validates invariants; throws InputError with the violation.
void validate(const CnfFormula& f);
void validate(const CspInstance& inst);

CspInstance to_csp(const CnfFormula& f);

/// Standard arithmetization: sum over constraints and satisfying rows of the
/// indicator product, expanded to multilinear monomials with like terms merged
/// exactly, so that evaluate(p, x) = count_satisfied(x) for every binary x.
SmoothPolynomial arithmetize(const CspInstance& inst);
SmoothPolynomial arithmetize(const CnfFormula& f);

int64_t count_satisfied(const CspInstance& inst, std::span<const uint8_t> x);
int64_t count_satisfied(const CnfFormula& f, std::span<const uint8_t> x);

/// DIMACS CNF: `p cnf n m` header, 0-terminated clauses, `c` comments.
/// Parse errors carry the offending line number.
CnfFormula parse_dimacs_cnf(const std::string& text);
std::string format_dimacs_cnf(const CnfFormula& f);

/// Custom CSP format: `k n m` header, then one line per constraint,
/// `v1 ... vk : hex` with 1-based variables and the truth table in hex
/// (least significant bit = row 0).
CspInstance parse_csp(const std::string& text);
std::string format_csp(const CspInstance& inst);

}  // namespace smax
