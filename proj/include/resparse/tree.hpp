#pragma once

#include <utility>
#include <vector>

#include "resparse/graph.hpp"

namespace resparse {

// Rooted spanning tree. parent[root] = -1; prefix[v] is the resistance
// (sum of 1/w) along the path from v to the root, so the path resistance
// between u and v is prefix[u] + prefix[v] - 2*prefix[lca].
struct SpanningTree {
  int root = 0;
  std::vector<int> parent;
  std::vector<double> parent_weight;  // weight of edge (v, parent[v])
  std::vector<double> prefix;
  std::vector<int> order;      // DFS preorder from the root
  std::vector<int> host_edge;  // edge id in the host graph, -1 for root / unhosted

  int num_vertices() const { return static_cast<int>(parent.size()); }

  // Tree edges as a graph over the same vertex set.
  WeightedGraph as_graph() const;

  // Builds from edge ids of a host graph. Throws TreeDoesNotSpan unless the
  // ids form a spanning tree.
  static SpanningTree from_edge_ids(const WeightedGraph& g, const std::vector<int>& edge_ids,
                                    int root = 0);
  // Builds from raw edges (no host ids). n is the vertex count.
  static SpanningTree from_edges(int n, const std::vector<Edge>& edges, int root = 0);
};

// Offline LCA (union-find over one tree walk) for a batch of pairs.
std::vector<int> batch_lca(const SpanningTree& t, const std::vector<std::pair<int, int>>& pairs);

// Tree-path resistances R_T(u, v) for a batch of pairs.
Vector tree_resistances(const SpanningTree& t, const std::vector<std::pair<int, int>>& pairs);

// Per-edge stretch st_T(e) = w_e * R_T(u_e, v_e). Tree edges whose weight
// matches the host edge report exactly 1. Throws TreeDoesNotSpan if vertex
// sets differ.
EdgeVector compute_stretches(const WeightedGraph& g, const SpanningTree& t);

// Total stretch via the cut characterization: every tree edge f contributes
// (1/w_f) * (total graph weight crossing the cut induced by removing f).
// Agrees with summing compute_stretches up to roundoff.
double stretch_via_cuts(const WeightedGraph& g, const SpanningTree& t);

// Maximum-weight spanning tree (ties broken by lower edge id).
SpanningTree max_weight_spanning_tree(const WeightedGraph& g);

// Multiplies the weights of the tree's host edges by kappa. The tree must be
// hosted by g with matching weights (TreeNotSubgraph otherwise).
WeightedGraph scale_spine(const WeightedGraph& g, const SpanningTree& t, double kappa);

}  // namespace resparse
