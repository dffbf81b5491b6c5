#pragma once

#include <vector>

namespace resparse {

using Vector = std::vector<double>;
// One value per edge, indexed by canonical edge id.
using EdgeVector = std::vector<double>;

struct Edge {
  int u;
  int v;
  double w;
};

// Undirected weighted multigraph with a frozen canonical edge order:
// endpoints stored u < v, edges sorted by (u, v), parallel edges adjacent in
// insertion order. All EdgeVector values across the library index this order.
class WeightedGraph {
 public:
  WeightedGraph() = default;

  int num_vertices() const { return n_; }
  int num_edges() const { return static_cast<int>(edges_.size()); }
  const std::vector<Edge>& edges() const { return edges_; }
  const Edge& edge(int e) const { return edges_[e]; }
  int dropped_self_loops() const { return dropped_self_loops_; }

  // CSR adjacency over edge ids; each edge appears under both endpoints.
  const std::vector<int>& adj_offsets() const { return adj_offsets_; }
  const std::vector<int>& adj_edges() const { return adj_edges_; }
  int other_endpoint(int e, int v) const {
    const Edge& ed = edges_[e];
    return ed.u == v ? ed.v : ed.u;
  }

  double total_weight() const;
  double min_weight() const;
  double max_weight() const;
  bool is_unweighted() const;  // every weight exactly 1
  Vector weighted_degrees() const;

  // Copy with identical edge set but new weights (same canonical order).
  WeightedGraph with_weights(const EdgeVector& w) const;
  // Copy keeping a subset of edges; keep_ids must be sorted ascending.
  WeightedGraph induced_edges(const std::vector<int>& keep_ids) const;
  // Collapses parallel edges by summing weights.
  WeightedGraph merge_parallel() const;

  friend WeightedGraph build_graph(int n, const std::vector<Edge>& raw);

 private:
  void build_adjacency();

  int n_ = 0;
  std::vector<Edge> edges_;
  int dropped_self_loops_ = 0;
  std::vector<int> adj_offsets_;
  std::vector<int> adj_edges_;
};

// Validates endpoints and weights, drops self-loops (counted), canonicalizes
// endpoint order and sorts edges. Parallel edges are kept.
WeightedGraph build_graph(int n, const std::vector<Edge>& raw);

// y = L x in O(m); x must have length n. The in-place overload reuses y.
Vector apply_laplacian(const WeightedGraph& g, const Vector& x);
void apply_laplacian(const WeightedGraph& g, const Vector& x, Vector& y);

// x' L x = sum_e w_e (x_u - x_v)^2, evaluated edge-wise (never negative).
double quadratic_form(const WeightedGraph& g, const Vector& x);

std::vector<std::vector<int>> connected_components(const WeightedGraph& g);
bool is_connected(const WeightedGraph& g);

}  // namespace resparse
