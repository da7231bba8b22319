#include "smax/poly.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

#include "smax/errors.hpp"

namespace smax {

SmoothPolynomial SmoothPolynomial::make(int n, Rational constant,
                                        std::vector<Monomial> monomials) {
  if (n < 0) throw InputError("polynomial with negative variable count");
  for (const auto& m : monomials) {
    if (m.coeff.is_zero()) throw InputError("monomial with zero coefficient");
    if (m.vars.empty()) throw InputError("empty monomial; constants go in the constant term");
    for (size_t i = 0; i < m.vars.size(); ++i) {
      if (m.vars[i] < 0 || m.vars[i] >= n) throw InputError("monomial variable out of range");
      if (i > 0 && m.vars[i - 1] >= m.vars[i])
        throw InputError("monomial variables must be strictly increasing");
    }
  }
  std::sort(monomials.begin(), monomials.end(),
            [](const Monomial& a, const Monomial& b) { return a.vars < b.vars; });
  for (size_t i = 1; i < monomials.size(); ++i)
    if (monomials[i - 1].vars == monomials[i].vars)
      throw InputError("duplicate monomial variable set");
  SmoothPolynomial p;
  p.n_ = n;
  p.constant_ = constant;
  p.monomials_ = std::move(monomials);
  for (const auto& m : p.monomials_)
    p.degree_ = std::max(p.degree_, static_cast<int>(m.vars.size()));
  return p;
}

Rational SmoothPolynomial::evaluate(std::span<const uint8_t> x) const {
  if (static_cast<int>(x.size()) != n_)
    throw InputError("assignment length " + std::to_string(x.size()) +
                     " does not match variable count " + std::to_string(n_));
  Rational sum = constant_;
  for (const auto& m : monomials_) {
    bool all_one = true;
    for (int v : m.vars)
      if (!x[v]) {
        all_one = false;
        break;
      }
    if (all_one) sum += m.coeff;
  }
  return sum;
}

double SmoothPolynomial::evaluate_real(std::span<const double> y) const {
  if (static_cast<int>(y.size()) != n_)
    throw InputError("point length does not match variable count");
  double sum = constant_.to_double();
  for (const auto& m : monomials_) {
    double term = m.coeff.to_double();
    for (int v : m.vars) term *= y[v];
    sum += term;
  }
  return sum;
}

std::vector<Rational> SmoothPolynomial::abs_coefficient_sums() const {
  std::vector<Rational> sums(degree_ + 1);
  sums[0] = constant_.abs();
  for (const auto& m : monomials_) sums[m.vars.size()] += m.coeff.abs();
  return sums;
}

namespace {

Rational int_pow(int64_t base, int exp) {
  Rational r{1};
  for (int i = 0; i < exp; ++i) r *= Rational(base);
  return r;
}

}  // namespace

SmoothnessCertificate certify(const SmoothPolynomial& p, double delta) {
  if (p.is_constant()) throw InputError("cannot certify a constant polynomial");
  if (!(delta > 0.0 && delta <= 1.0)) throw InputError("delta must lie in (0, 1]");
  const int n = p.n();
  const int d = p.degree();

  // beta: smallest value >= 1 with |coeff| <= beta * n^{d-l} per degree-l
  // monomial (constant term included at l = 0).
  Rational beta{1};
  auto consider = [&](const Rational& coeff, int deg) {
    Rational bound = coeff.abs() / int_pow(n, d - deg);
    if (bound > beta) beta = bound;
  };
  consider(p.constant(), 0);
  for (const auto& m : p.monomials()) consider(m.coeff, static_cast<int>(m.vars.size()));

  // kappa: smallest value >= 1 with sum of degree-l |coeffs| bounded by
  // kappa * beta * n^{d-1+delta} for every l.
  const double scale = beta.to_double() * std::pow(static_cast<double>(n), d - 1 + delta);
  double kappa = 1.0;
  for (const Rational& s : p.abs_coefficient_sums())
    kappa = std::max(kappa, s.to_double() / scale);

  SmoothnessCertificate cert;
  cert.beta_exact = beta;
  cert.beta = beta.to_double();
  cert.delta = delta;
  cert.kappa = kappa;
  return cert;
}

bool SmoothnessCertificate::verify(const SmoothPolynomial& p) const {
  const int n = p.n();
  const int d = p.degree();
  auto ok_coeff = [&](const Rational& coeff, int deg) {
    return coeff.abs() <= beta_exact * int_pow(n, d - deg);
  };
  if (!ok_coeff(p.constant(), 0)) return false;
  for (const auto& m : p.monomials())
    if (!ok_coeff(m.coeff, static_cast<int>(m.vars.size()))) return false;
  const double budget =
      kappa * beta * std::pow(static_cast<double>(n), d - 1 + delta) * (1.0 + 1e-12) + 1e-12;
  for (const Rational& s : p.abs_coefficient_sums())
    if (s.to_double() > budget) return false;
  return true;
}

int DecompositionTree::add_child(int parent, int var) {
  int id = size();
  DecompNode child;
  child.var = var;
  child.depth = nodes_[parent].depth + 1;
  nodes_.push_back(std::move(child));
  auto& kids = nodes_[parent].children;
  auto it = std::lower_bound(kids.begin(), kids.end(), std::make_pair(var, -1));
  kids.insert(it, {var, id});
  return id;
}

int DecompositionTree::child_of(int id, int var) const {
  const auto& kids = nodes_[id].children;
  auto it = std::lower_bound(kids.begin(), kids.end(), std::make_pair(var, -1));
  if (it != kids.end() && it->first == var) return it->second;
  return -1;
}

Rational DecompositionTree::evaluate_node(int id, std::span<const uint8_t> x) const {
  const DecompNode& nd = nodes_[id];
  Rational sum = nd.constant;
  for (auto [j, child] : nd.children)
    if (x[j]) sum += evaluate_node(child, x);
  return sum;
}

SmoothPolynomial DecompositionTree::collect(int id) const {
  // Tuples under the symmetric strategy are seen from both endpoints, so keys
  // are sorted before merging.
  std::map<std::vector<int>, Rational> acc;
  std::vector<int> prefix;
  auto walk = [&](auto&& self, int node) -> void {
    if (!prefix.empty()) {
      std::vector<int> key = prefix;
      std::sort(key.begin(), key.end());
      acc[key] += nodes_[node].constant;
    }
    for (auto [j, child] : nodes_[node].children) {
      prefix.push_back(j);
      self(self, child);
      prefix.pop_back();
    }
  };
  walk(walk, id);
  std::vector<Monomial> monomials;
  for (auto& [vars, coeff] : acc)
    if (!coeff.is_zero()) monomials.push_back({vars, coeff});
  return SmoothPolynomial::make(n_, nodes_[id].constant, std::move(monomials));
}

namespace {

// Structural check that p came from from_graph_maxcut: zero constant, every
// quadratic coefficient exactly -2, and each linear coefficient equal to the
// number of quadratic monomials touching that variable.
bool has_maxcut_shape(const SmoothPolynomial& p) {
  if (!p.constant().is_zero() || p.degree() != 2) return false;
  std::vector<int64_t> incident(p.n(), 0);
  for (const auto& m : p.monomials())
    if (m.vars.size() == 2) {
      if (!(m.coeff == Rational(-2))) return false;
      ++incident[m.vars[0]];
      ++incident[m.vars[1]];
    }
  for (const auto& m : p.monomials())
    if (m.vars.size() == 1 && !(m.coeff == Rational(incident[m.vars[0]]))) return false;
  std::vector<bool> has_linear(p.n(), false);
  for (const auto& m : p.monomials())
    if (m.vars.size() == 1) has_linear[m.vars[0]] = true;
  for (int v = 0; v < p.n(); ++v)
    if (incident[v] > 0 && !has_linear[v]) return false;
  return true;
}

}  // namespace

DecompositionTree decompose(const SmoothPolynomial& p, DecompStrategy strategy) {
  if (strategy == DecompStrategy::maxcut_symmetric) {
    if (!has_maxcut_shape(p))
      throw InputError("maxcut-symmetric decomposition requires a Max-Cut cut polynomial");
    DecompositionTree tree(p.n(), 2, strategy);
    // p = sum_j x_j (deg(j) - sum_{i in N(j)} x_i): node (j) carries deg(j),
    // each edge contributes a -1 leaf under both endpoints.
    std::vector<int> vertex_node(p.n(), -1);
    auto vertex = [&](int v) {
      if (vertex_node[v] < 0) vertex_node[v] = tree.add_child(tree.root(), v);
      return vertex_node[v];
    };
    for (const auto& m : p.monomials()) {
      if (m.vars.size() == 1) {
        tree.node(vertex(m.vars[0])).constant = m.coeff;
      } else {
        int a = m.vars[0], b = m.vars[1];
        tree.node(tree.add_child(vertex(a), b)).constant = Rational(-1);
        tree.node(tree.add_child(vertex(b), a)).constant = Rational(-1);
      }
    }
    return tree;
  }

  DecompositionTree tree(p.n(), p.degree(), strategy);
  tree.node(tree.root()).constant = p.constant();
  for (const auto& m : p.monomials()) {
    int node = tree.root();
    for (int v : m.vars) {  // vars ascending: smallest index pulled first
      int child = tree.child_of(node, v);
      if (child < 0) child = tree.add_child(node, v);
      node = child;
    }
    tree.node(node).constant = m.coeff;
  }
  return tree;
}

SmoothPolynomial from_graph_maxcut(const Graph& g) {
  std::vector<Monomial> monomials;
  for (int v = 0; v < g.n; ++v)
    if (g.degree(v) > 0) monomials.push_back({{v}, Rational(g.degree(v))});
  for (auto [u, v] : g.edges) monomials.push_back({{u, v}, Rational(-2)});
  return SmoothPolynomial::make(g.n, Rational(0), std::move(monomials));
}

SmoothPolynomial from_graph_edge_count(const Graph& g) {
  std::vector<Monomial> monomials;
  for (auto [u, v] : g.edges) monomials.push_back({{u, v}, Rational(1)});
  return SmoothPolynomial::make(g.n, Rational(0), std::move(monomials));
}

SmoothPolynomial parse_poly(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  int n = -1;
  Rational constant;
  std::vector<Monomial> monomials;
  int max_index = 0;
  auto fail = [&](const std::string& msg) {
    throw InputError("poly parse error at line " + std::to_string(lineno) + ": " + msg);
  };
  while (std::getline(in, line)) {
    ++lineno;
    std::istringstream ls(line);
    std::string first;
    if (!(ls >> first)) continue;
    if (first == "#") continue;
    if (first == "p") {
      std::string kind;
      if (!(ls >> kind >> n) || kind != "poly" || n < 0) fail("malformed 'p poly n' header");
      continue;
    }
    if (first == "c") {
      std::string value;
      if (!(ls >> value)) fail("missing constant value");
      constant = Rational::parse(value);
      continue;
    }
    Monomial m;
    m.coeff = Rational::parse(first);
    int idx = 0;
    while (ls >> idx) {
      if (idx < 1) fail("variable indices are 1-based");
      m.vars.push_back(idx - 1);
      max_index = std::max(max_index, idx);
    }
    if (ls.fail() && !ls.eof()) fail("malformed variable index");
    if (m.vars.empty()) fail("monomial without variables; use a 'c' line for the constant");
    std::sort(m.vars.begin(), m.vars.end());
    monomials.push_back(std::move(m));
  }
  if (n < 0) n = max_index;
  if (max_index > n) throw InputError("poly parse error: variable index exceeds header n");
  return SmoothPolynomial::make(n, constant, std::move(monomials));
}

std::string format_poly(const SmoothPolynomial& p) {
  std::ostringstream out;
  out << "p poly " << p.n() << '\n';
  out << "c " << p.constant().str() << '\n';
  for (const auto& m : p.monomials()) {
    out << m.coeff.str();
    for (int v : m.vars) out << ' ' << v + 1;
    out << '\n';
  }
  return out.str();
}

}  // namespace smax
