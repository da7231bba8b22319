#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "smax/graph.hpp"
#include "smax/rational.hpp"

namespace smax {

/// One multilinear monomial coeff * x_{vars[0]} * ... * x_{vars[l-1]}.
/// vars strictly increasing, coeff nonzero.
struct Monomial {
  std::vector<int> vars;
  Rational coeff;
};

/// Multilinear polynomial over n binary variables in sparse monomial form.
/// Degree is the maximum monomial length; the constant term is kept apart.
class SmoothPolynomial {
 public:
  SmoothPolynomial() = default;

  /// Validates invariants (sorted distinct vars per monomial, nonzero
  /// coefficients, no duplicate variable sets) and canonicalizes order.
  static SmoothPolynomial make(int n, Rational constant, std::vector<Monomial> monomials);

  int n() const { return n_; }
  int degree() const { return degree_; }
  const Rational& constant() const { return constant_; }
  const std::vector<Monomial>& monomials() const { return monomials_; }
  bool is_constant() const { return monomials_.empty(); }

  /// Exact value at a binary point. Throws InputError on dimension mismatch.
  Rational evaluate(std::span<const uint8_t> x) const;

  /// Multilinear extension at a fractional point (floating point).
  double evaluate_real(std::span<const double> y) const;

  /// Sum of |coeff| over monomials of each degree 0..d (index by degree).
  std::vector<Rational> abs_coefficient_sums() const;

 private:
  int n_ = 0;
  int degree_ = 0;
  Rational constant_;
  std::vector<Monomial> monomials_;
};

/// Witness that p is beta-smooth and delta-bounded: every degree-l coefficient
/// has |c| <= beta * n^{d-l}, and every degree-l absolute-coefficient sum is
/// <= kappa * beta * n^{d-1+delta}. beta and kappa are the minimal such values
/// floored at 1; beta is additionally kept exact for re-verification.
struct SmoothnessCertificate {
  double beta = 1.0;
  double delta = 1.0;
  double kappa = 1.0;
  Rational beta_exact{1};

  /// Rescans p and confirms both bound families. Exact for beta, 1e-12
  /// relative slack for the kappa side (n^{d-1+delta} is irrational).
  bool verify(const SmoothPolynomial& p) const;
};

/// Minimal certificate for the given delta. Throws InputError on constant p.
SmoothnessCertificate certify(const SmoothPolynomial& p, double delta);

enum class DecompStrategy { canonical_lex, maxcut_symmetric };

/// Node of the recursive decomposition p = c + sum_j x_j p_j. The node for
/// index tuple (i_1..i_t) holds the tuple's own coefficient as `constant` and
/// one child per materialized extension; absent tuples are zero polynomials.
struct DecompNode {
  Rational constant;
  int var = -1;    // last tuple element; -1 at the root
  int depth = 0;   // tuple length
  std::vector<std::pair<int, int>> children;  // (index j, node id), sorted by j
};

class DecompositionTree {
 public:
  DecompositionTree(int n, int d, DecompStrategy strategy)
      : n_(n), d_(d), strategy_(strategy) {
    nodes_.push_back(DecompNode{});
  }

  int n() const { return n_; }
  int degree() const { return d_; }
  DecompStrategy strategy() const { return strategy_; }
  const std::vector<DecompNode>& nodes() const { return nodes_; }
  DecompNode& node(int id) { return nodes_[id]; }
  const DecompNode& node(int id) const { return nodes_[id]; }
  int root() const { return 0; }
  int size() const { return static_cast<int>(nodes_.size()); }

  int add_child(int parent, int var);
  /// Child node id for index j, or -1 when the tuple is not materialized.
  int child_of(int id, int var) const;

  /// Value of the node's polynomial via the reassembly identity
  /// c + sum_j x_j * child_j(x); at the root this equals p(x) exactly.
  Rational evaluate_node(int id, std::span<const uint8_t> x) const;

  /// Collects the subtree back into monomial form (variables of the tuple
  /// prefix stripped). collect(root) must equal the source polynomial.
  SmoothPolynomial collect(int id) const;

 private:
  int n_;
  int d_;
  DecompStrategy strategy_;
  std::vector<DecompNode> nodes_;
};

/// Proposition-1 decomposition. canonical_lex pulls the smallest remaining
/// index at every level; maxcut_symmetric produces the per-vertex form
/// p_j = deg(j) - sum_{i in N(j)} x_i and is only valid for polynomials of
/// from_graph_maxcut shape (checked structurally, InputError otherwise).
DecompositionTree decompose(const SmoothPolynomial& p, DecompStrategy strategy);

/// sum_{ij in E} (x_i + x_j - 2 x_i x_j): the cut-size polynomial.
SmoothPolynomial from_graph_maxcut(const Graph& g);

/// sum_{ij in E} x_i x_j: the induced-edge-count polynomial.
SmoothPolynomial from_graph_edge_count(const Graph& g);

/// Debug dump: optional `p poly n` header, `c <value>` constant line, then one
/// monomial per line `coeff i1 i2 ... il` (1-indexed).
SmoothPolynomial parse_poly(const std::string& text);
std::string format_poly(const SmoothPolynomial& p);

}  // namespace smax
