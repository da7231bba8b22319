#include "smax/graph.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "smax/errors.hpp"

namespace smax {

Graph Graph::make(int n, std::vector<std::pair<int, int>> edges) {
  if (n < 0) throw InputError("graph with negative vertex count");
  Graph g;
  g.n = n;
  for (auto& [u, v] : edges) {
    if (u == v) throw InputError("self-loop at vertex " + std::to_string(u + 1));
    if (u > v) std::swap(u, v);
    if (u < 0 || v >= n) throw InputError("edge endpoint out of range");
  }
  std::sort(edges.begin(), edges.end());
  auto dup = std::adjacent_find(edges.begin(), edges.end());
  if (dup != edges.end())
    throw InputError("duplicate edge {" + std::to_string(dup->first + 1) + "," +
                     std::to_string(dup->second + 1) + "}");
  g.edges = std::move(edges);
  g.adj.assign(n, {});
  for (auto [u, v] : g.edges) {
    g.adj[u].push_back(v);
    g.adj[v].push_back(u);
  }
  for (auto& list : g.adj) std::sort(list.begin(), list.end());
  return g;
}

Graph parse_dimacs_graph(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  int n = -1;
  long declared_m = -1;
  std::vector<std::pair<int, int>> edges;
  auto fail = [&](const std::string& msg) {
    throw InputError("graph parse error at line " + std::to_string(lineno) + ": " + msg);
  };
  while (std::getline(in, line)) {
    ++lineno;
    std::istringstream ls(line);
    std::string tag;
    if (!(ls >> tag)) continue;
    if (tag == "c") continue;
    if (tag == "p") {
      std::string kind;
      if (!(ls >> kind >> n >> declared_m) || kind != "edge" || n < 0 || declared_m < 0)
        fail("malformed header, expected 'p edge n m'");
      continue;
    }
    if (tag == "e") {
      if (n < 0) fail("edge before 'p edge' header");
      int u = 0, v = 0;
      if (!(ls >> u >> v)) fail("malformed edge line");
      if (u < 1 || u > n || v < 1 || v > n) fail("vertex index out of range");
      if (u == v) fail("self-loop");
      edges.emplace_back(u - 1, v - 1);
      continue;
    }
    fail("unknown line tag '" + tag + "'");
  }
  if (n < 0) throw InputError("graph parse error: missing 'p edge' header");
  if (declared_m != static_cast<long>(edges.size()))
    throw InputError("graph parse error: header declares " + std::to_string(declared_m) +
                     " edges, found " + std::to_string(edges.size()));
  try {
    return Graph::make(n, std::move(edges));
  } catch (const InputError& e) {
    throw InputError(std::string("graph parse error: ") + e.what());
  }
}

std::string format_dimacs_graph(const Graph& g) {
  std::ostringstream out;
  out << "p edge " << g.n << ' ' << g.m() << '\n';
  for (auto [u, v] : g.edges) out << "e " << u + 1 << ' ' << v + 1 << '\n';
  return out.str();
}

}  // namespace smax
