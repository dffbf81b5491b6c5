#include "resparse/generate.hpp"

#include <cmath>
#include <numeric>

#include "resparse/errors.hpp"

namespace resparse {

namespace {

WeightedGraph from_edges(int n, std::vector<Edge> edges) { return build_graph(n, edges); }

}  // namespace

WeightedGraph path_graph(int n, double w) {
  std::vector<Edge> e;
  for (int v = 0; v + 1 < n; ++v) e.push_back({v, v + 1, w});
  return from_edges(n, std::move(e));
}

WeightedGraph cycle_graph(int n, double w) {
  if (n < 3) throw ConfigError("cycle needs at least three vertices");
  std::vector<Edge> e;
  for (int v = 0; v + 1 < n; ++v) e.push_back({v, v + 1, w});
  e.push_back({n - 1, 0, w});
  return from_edges(n, std::move(e));
}

WeightedGraph complete_graph(int n, double w) {
  std::vector<Edge> e;
  for (int u = 0; u < n; ++u) {
    for (int v = u + 1; v < n; ++v) e.push_back({u, v, w});
  }
  return from_edges(n, std::move(e));
}

WeightedGraph star_graph(int n, double w) {
  std::vector<Edge> e;
  for (int v = 1; v < n; ++v) e.push_back({0, v, w});
  return from_edges(n, std::move(e));
}

WeightedGraph grid_graph(int rows, int cols) {
  if (rows < 1 || cols < 1) throw ConfigError("grid needs positive dimensions");
  std::vector<Edge> e;
  for (int i = 0; i < rows; ++i) {
    for (int j = 0; j < cols; ++j) {
      int v = i * cols + j;
      if (j + 1 < cols) e.push_back({v, v + 1, 1.0});
      if (i + 1 < rows) e.push_back({v, v + cols, 1.0});
    }
  }
  return from_edges(rows * cols, std::move(e));
}

WeightedGraph two_clique_bridge(int k) {
  if (k < 2) throw ConfigError("cliques need at least two vertices");
  std::vector<Edge> e;
  for (int u = 0; u < k; ++u) {
    for (int v = u + 1; v < k; ++v) {
      e.push_back({u, v, 1.0});
      e.push_back({k + u, k + v, 1.0});
    }
  }
  e.push_back({k - 1, k, 1.0});
  return from_edges(2 * k, std::move(e));
}

WeightedGraph random_connected(int n, int m, double w_min, double w_max, RngStream rng) {
  if (n < 2) throw ConfigError("random graph needs at least two vertices");
  if (m < n - 1) throw ConfigError("connected graph needs at least n-1 edges");
  if (!(w_min > 0.0) || w_max < w_min) throw ConfigError("weight range must be positive");
  double log_ratio = std::log(w_max / w_min);
  auto draw_weight = [&]() { return w_min * std::exp(rng.next_double() * log_ratio); };

  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  for (int i = n - 1; i > 0; --i) {
    int j = rng.next_index(i + 1);
    std::swap(perm[i], perm[j]);
  }

  std::vector<Edge> e;
  e.reserve(m);
  for (int i = 0; i + 1 < n; ++i) e.push_back({perm[i], perm[i + 1], draw_weight()});
  while (static_cast<int>(e.size()) < m) {
    int u = rng.next_index(n);
    int v = rng.next_index(n);
    if (u == v) continue;
    e.push_back({u, v, draw_weight()});
  }
  return from_edges(n, std::move(e));
}

}  // namespace resparse
