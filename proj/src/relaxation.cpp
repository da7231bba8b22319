#include "smax/relaxation.hpp"

#include <cmath>
#include <sstream>

#include "smax/errors.hpp"

namespace smax {

double ProgramRow::value_at(std::span<const double> y) const {
  double v = 0.0;
  for (auto [j, c] : coeffs) v += c * y[j];
  return v;
}

double ProgramRow::value_at(std::span<const uint8_t> z) const {
  double v = 0.0;
  for (auto [j, c] : coeffs) v += z[j] ? c : 0.0;
  return v;
}

double RelaxProgram::objective_at(std::span<const double> y) const {
  double v = objective_constant;
  for (int j = 0; j < n; ++j) v += objective[j] * y[j];
  return v;
}

double RelaxProgram::objective_at(std::span<const uint8_t> z) const {
  double v = objective_constant;
  for (int j = 0; j < n; ++j) v += z[j] ? objective[j] : 0.0;
  return v;
}

std::string RelaxProgram::to_text() const {
  std::ostringstream out;
  out << "max " << objective_constant;
  for (int j = 0; j < n; ++j)
    if (objective[j] != 0.0) out << " + " << objective[j] << " y" << j + 1;
  out << "\n";
  for (const auto& row : rows) {
    out << row.lower << " <= ";
    bool first = true;
    for (auto [j, c] : row.coeffs) {
      out << (first ? "" : " + ") << c << " y" << j + 1;
      first = false;
    }
    if (first) out << "0";
    out << " <= " << row.upper;
    if (!row.label.empty()) out << "   # " << row.label;
    out << "\n";
  }
  return out.str();
}

namespace {

void append_pin_rows(RelaxProgram& p, const PartialAssignment* pin) {
  if (!pin) return;
  for (auto [v, bit] : pin->bits) {
    ProgramRow row;
    row.coeffs.emplace_back(v, 1.0);
    row.lower = row.upper = static_cast<double>(bit);
    row.label = "pin:" + std::to_string(v + 1);
    p.rows.push_back(std::move(row));
  }
}

}  // namespace

RelaxProgram build_maxcut_program(const DecompositionTree& tree, const EstimationTree& est,
                                  double eps1, double eps2, const PartialAssignment* pin) {
  if (tree.strategy() != DecompStrategy::maxcut_symmetric)
    throw InputError("maxcut program needs the maxcut-symmetric decomposition");
  if (!(eps1 > 0) || !(eps2 > 0)) throw InputError("eps1 and eps2 must be positive");
  const int n = tree.n();
  RelaxProgram p;
  p.n = n;
  p.variant = ProgramVariant::maxcut;
  p.objective.assign(n, 0.0);

  int64_t degree_sum = 0;
  for (auto [v, id] : tree.node(tree.root()).children)
    degree_sum += static_cast<int64_t>(tree.node(id).children.size());
  const double avg_degree = static_cast<double>(degree_sum) / n;
  const double log_n = std::log(static_cast<double>(std::max(n, 2)));

  for (auto [v, id] : tree.node(tree.root()).children) {
    const DecompNode& nd = tree.node(id);
    const double deg = nd.constant.to_double();
    const double rho = est.rho[id];
    p.objective[v] = deg - rho;

    ProgramRow row;
    row.label = "v:" + std::to_string(v + 1);
    row.coeffs.reserve(nd.children.size());
    for (auto [i, leaf] : nd.children) row.coeffs.emplace_back(i, 1.0);
    row.lower = std::max((1.0 - eps1) * rho - eps2 * avg_degree, 0.0);
    row.upper = std::min((1.0 + eps1) * rho + eps2 * avg_degree, deg);
    row.widen_lower = row.widen_upper = 2.0 * std::sqrt(deg * log_n);
    p.rows.push_back(std::move(row));
  }
  append_pin_rows(p, pin);
  return p;
}

RelaxProgram build_generic_program(const DecompositionTree& tree, const EstimationTree& est,
                                   double eps1, double eps2, double delta,
                                   const PartialAssignment* pin) {
  if (!(eps1 > 0) || !(eps2 > 0)) throw InputError("eps1 and eps2 must be positive");
  const int n = tree.n();
  const int d = tree.degree();
  RelaxProgram p;
  p.n = n;
  p.variant = ProgramVariant::generic;
  p.objective.assign(n, 0.0);
  p.objective_constant = tree.node(tree.root()).constant.to_double();
  for (auto [j, id] : tree.node(tree.root()).children) p.objective[j] = est.rho[id];

  // One row per materialized tuple with children; the tuple's constant is
  // folded into the bounds. Absent tuples and bare-constant subtrees are the
  // zero polynomial and need no row.
  auto emit = [&](auto&& self, int id) -> void {
    const DecompNode& nd = tree.node(id);
    for (auto [j, child] : nd.children) self(self, child);
    if (nd.depth < 1 || nd.depth > d - 1 || nd.children.empty()) return;
    const int ell = d - nd.depth;
    const double radius =
        eps1 * est.rho_bar[id] + eps2 * std::pow(static_cast<double>(n), ell - 1 + delta);
    const double c = nd.constant.to_double();
    ProgramRow row;
    row.coeffs.reserve(nd.children.size());
    for (auto [j, child] : nd.children) row.coeffs.emplace_back(j, est.rho[child]);
    row.lower = est.rho[id] - radius - c;
    row.upper = est.rho[id] + radius - c;
    row.widen_lower = row.widen_upper = radius;  // rounded solutions get both radii doubled
    row.label = "t:level" + std::to_string(ell);
    p.rows.push_back(std::move(row));
  };
  emit(emit, tree.root());
  append_pin_rows(p, pin);
  return p;
}

RelaxProgram build_kdense_program(const Graph& g, const std::vector<double>& rho,
                                  double eps1, double eps2, double delta, int k,
                                  const PartialAssignment* pin) {
  if (!(eps1 > 0) || !(eps2 > 0)) throw InputError("eps1 and eps2 must be positive");
  if (static_cast<int>(rho.size()) != g.n) throw InputError("estimation vector size mismatch");
  RelaxProgram p;
  p.n = g.n;
  p.variant = ProgramVariant::kdense;
  p.objective.assign(g.n, 0.0);
  const double err = eps2 * std::pow(static_cast<double>(g.n), delta / 3.0);
  for (int v = 0; v < g.n; ++v) {
    p.objective[v] = rho[v];
    if (g.degree(v) == 0) continue;
    ProgramRow row;
    row.label = "v:" + std::to_string(v + 1);
    row.coeffs.reserve(g.adj[v].size());
    for (int i : g.adj[v]) row.coeffs.emplace_back(i, 1.0);
    row.lower = std::max((1.0 - eps1) * rho[v] - err, 0.0);
    row.upper = std::min((1.0 + eps1) * rho[v] + err, static_cast<double>(g.degree(v)));
    row.widen_lower = eps1 * (1.0 - eps1) * rho[v] + err;
    row.widen_upper = eps1 * (1.0 + eps1) * rho[v] + err;
    p.rows.push_back(std::move(row));
  }
  ProgramRow card;
  card.label = "card";
  card.coeffs.reserve(g.n);
  for (int v = 0; v < g.n; ++v) card.coeffs.emplace_back(v, 1.0);
  card.lower = card.upper = static_cast<double>(k);
  card.widen_lower = card.widen_upper =
      2.0 * std::sqrt(g.n * std::log(static_cast<double>(std::max(g.n, 2))));
  p.rows.push_back(std::move(card));
  append_pin_rows(p, pin);
  return p;
}

}  // namespace smax
