#pragma once

#include <random>
#include <vector>

#include "pgst/graph.hpp"

namespace pgst::testing {

/// Connected graph on n vertices: a random spanning tree plus extra edges,
/// weights uniform in [0.5, 2].
inline WeightedGraph random_graph(Vertex n, unsigned seed, double extra_edge_probability = 0.4) {
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> weight(0.5, 2.0);
  std::uniform_real_distribution<double> coin(0.0, 1.0);
  std::vector<Edge> edges;
  std::vector<std::vector<bool>> used(n, std::vector<bool>(n, false));
  for (Vertex v = 1; v < n; ++v) {
    const Vertex u = std::uniform_int_distribution<Vertex>(0, v - 1)(rng);
    edges.push_back({u, v, weight(rng)});
    used[u][v] = used[v][u] = true;
  }
  for (Vertex u = 0; u < n; ++u) {
    for (Vertex v = u + 1; v < n; ++v) {
      if (!used[u][v] && coin(rng) < extra_edge_probability) edges.push_back({u, v, weight(rng)});
    }
  }
  return WeightedGraph::from_edges(n, edges);
}

/// m = 0 selects unit weights.
inline WeightedGraph hypercube_graph(int d, int m) {
  return m == 0 ? build_hypercube(d) : build_weighted_hypercube(d, m);
}

}  // namespace pgst::testing
