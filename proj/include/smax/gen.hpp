#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "smax/csp.hpp"
#include "smax/graph.hpp"

namespace smax {

enum class GenFamily { graph_density, planted_cut, random_ksat, planted_ksat };

struct GenSpec {
  GenFamily family = GenFamily::graph_density;
  int n = 16;
  double delta = 0.5;
  int k = 3;  // clause arity for the ksat families
  uint64_t seed = 0;
};

/// Graph families carry m = min(C(n,2), round(n^{1+delta}/2)) distinct edges
/// (average degree ~ n^delta); formula families carry m = round(n^{k-1+delta})
/// distinct clauses. Planted families fix a hidden assignment first: planted
/// cuts draw ceil(0.8 m) of the edges across the hidden bipartition, planted
/// formulas repair every clause to be satisfied by the hidden assignment.
/// `answer` holds that assignment (bipartition side / truth value per
/// variable) and is empty for the non-planted families.
struct GeneratedInstance {
  GenFamily family = GenFamily::graph_density;
  std::optional<Graph> graph;
  std::optional<CnfFormula> formula;
  std::vector<uint8_t> answer;
};

GeneratedInstance generate(const GenSpec& spec);

}  // namespace smax
