#pragma once

#include <string>
#include <utility>
#include <vector>

namespace smax {

/// Simple undirected graph. Edges are stored with u < v, sorted and unique;
/// construction rejects self-loops and duplicates.
struct Graph {
  int n = 0;
  std::vector<std::pair<int, int>> edges;
  std::vector<std::vector<int>> adj;

  static Graph make(int n, std::vector<std::pair<int, int>> edges);

  int m() const { return static_cast<int>(edges.size()); }
  int degree(int v) const { return static_cast<int>(adj[v].size()); }
  double average_degree() const { return n == 0 ? 0.0 : 2.0 * m() / n; }
};

/// DIMACS-like edge list: `p edge n m` header, `e u v` lines, 1-indexed,
/// `c` comment lines. Parse errors carry the offending line number.
Graph parse_dimacs_graph(const std::string& text);
std::string format_dimacs_graph(const Graph& g);

}  // namespace smax
