#include "resparse/tree.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>
#include <string>

#include "resparse/errors.hpp"

namespace resparse {

namespace {

// Fills parent/prefix/order by iterative DFS over an adjacency list of
// (neighbor, weight, host edge id) triples. order is a DFS preorder; the
// offline LCA walk relies on subtree contiguity, so keep it a preorder.
// Throws TreeDoesNotSpan on cycles or unreached vertices.
void dfs_orient(SpanningTree& t, int n, int root,
                const std::vector<std::vector<std::array<double, 3>>>& adj) {
  t.root = root;
  t.parent.assign(n, -2);
  t.parent_weight.assign(n, 0.0);
  t.prefix.assign(n, 0.0);
  t.host_edge.assign(n, -1);
  t.order.clear();
  t.order.reserve(n);
  t.parent[root] = -1;
  std::vector<int> stack{root};
  while (!stack.empty()) {
    int v = stack.back();
    stack.pop_back();
    t.order.push_back(v);
    for (const auto& a : adj[v]) {
      int u = static_cast<int>(a[0]);
      if (u == t.parent[v]) continue;
      if (t.parent[u] != -2) throw TreeDoesNotSpan("edge set contains a cycle");
      t.parent[u] = v;
      t.parent_weight[u] = a[1];
      t.host_edge[u] = static_cast<int>(a[2]);
      t.prefix[u] = t.prefix[v] + 1.0 / a[1];
      stack.push_back(u);
    }
  }
  if (static_cast<int>(t.order.size()) != n) {
    throw TreeDoesNotSpan("edge set does not reach every vertex");
  }
}

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  }
  bool unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    parent[b] = a;
    return true;
  }
};

}  // namespace

WeightedGraph SpanningTree::as_graph() const {
  std::vector<Edge> es;
  es.reserve(num_vertices() > 0 ? num_vertices() - 1 : 0);
  for (int v = 0; v < num_vertices(); ++v) {
    if (parent[v] >= 0) es.push_back({v, parent[v], parent_weight[v]});
  }
  return build_graph(num_vertices(), es);
}

SpanningTree SpanningTree::from_edge_ids(const WeightedGraph& g, const std::vector<int>& edge_ids,
                                         int root) {
  int n = g.num_vertices();
  if (static_cast<int>(edge_ids.size()) != n - 1) {
    throw TreeDoesNotSpan("expected n-1 edges, got " + std::to_string(edge_ids.size()));
  }
  if (root < 0 || root >= n) throw VertexOutOfRange("root out of range");
  std::vector<std::vector<std::array<double, 3>>> adj(n);
  for (int id : edge_ids) {
    if (id < 0 || id >= g.num_edges()) throw SubgraphMismatch("tree edge id out of range");
    const Edge& e = g.edge(id);
    adj[e.u].push_back({static_cast<double>(e.v), e.w, static_cast<double>(id)});
    adj[e.v].push_back({static_cast<double>(e.u), e.w, static_cast<double>(id)});
  }
  SpanningTree t;
  dfs_orient(t, n, root, adj);
  return t;
}

SpanningTree SpanningTree::from_edges(int n, const std::vector<Edge>& edges, int root) {
  if (static_cast<int>(edges.size()) != n - 1) {
    throw TreeDoesNotSpan("expected n-1 edges, got " + std::to_string(edges.size()));
  }
  if (root < 0 || root >= n) throw VertexOutOfRange("root out of range");
  std::vector<std::vector<std::array<double, 3>>> adj(n);
  for (const Edge& e : edges) {
    if (e.u < 0 || e.u >= n || e.v < 0 || e.v >= n) throw VertexOutOfRange("tree edge endpoint");
    if (!(e.w > 0.0)) throw NonPositiveWeight("tree edge weight must be positive");
    adj[e.u].push_back({static_cast<double>(e.v), e.w, -1.0});
    adj[e.v].push_back({static_cast<double>(e.u), e.w, -1.0});
  }
  SpanningTree t;
  dfs_orient(t, n, root, adj);
  return t;
}

std::vector<int> batch_lca(const SpanningTree& t, const std::vector<std::pair<int, int>>& pairs) {
  int n = t.num_vertices();
  std::vector<int> out(pairs.size(), -1);

  // Queries bucketed per endpoint.
  std::vector<int> qhead(n, -1), qnext, qother, qid;
  qnext.reserve(2 * pairs.size());
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    auto [u, v] = pairs[i];
    if (u < 0 || u >= n || v < 0 || v >= n) throw VertexOutOfRange("lca query endpoint");
    if (u == v) {
      out[i] = u;
      continue;
    }
    for (int side = 0; side < 2; ++side) {
      int a = side == 0 ? u : v;
      int b = side == 0 ? v : u;
      qother.push_back(b);
      qid.push_back(static_cast<int>(i));
      qnext.push_back(qhead[a]);
      qhead[a] = static_cast<int>(qother.size()) - 1;
    }
  }

  // Union-find walk in reverse DFS preorder. When v is visited, every vertex
  // later in the preorder is merged upward as far as its lowest unvisited
  // ancestor, and that ancestor is the set's label; for a query partner u
  // already visited, the label of u's set is exactly lca(u, v). Subtree
  // contiguity of the preorder is what makes the label claim hold.
  UnionFind uf(n);
  std::vector<int> ancestor(n);
  std::iota(ancestor.begin(), ancestor.end(), 0);
  std::vector<char> visited(n, 0);
  for (int i = n - 1; i >= 0; --i) {
    int v = t.order[i];
    visited[v] = 1;
    for (int q = qhead[v]; q != -1; q = qnext[q]) {
      if (visited[qother[q]] && out[qid[q]] == -1) {
        out[qid[q]] = ancestor[uf.find(qother[q])];
      }
    }
    if (t.parent[v] >= 0) {
      // Merge v's subtree into the parent; the merged set's exposed ancestor
      // is the parent.
      int r = uf.find(t.parent[v]);
      uf.unite(r, uf.find(v));
      ancestor[uf.find(r)] = t.parent[v];
    }
  }
  return out;
}

Vector tree_resistances(const SpanningTree& t, const std::vector<std::pair<int, int>>& pairs) {
  std::vector<int> lcas = batch_lca(t, pairs);
  Vector r(pairs.size());
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    auto [u, v] = pairs[i];
    r[i] = t.prefix[u] + t.prefix[v] - 2.0 * t.prefix[lcas[i]];
  }
  return r;
}

EdgeVector compute_stretches(const WeightedGraph& g, const SpanningTree& t) {
  if (t.num_vertices() != g.num_vertices()) {
    throw TreeDoesNotSpan("tree vertex count does not match graph");
  }
  // Host edges with matching weight have stretch exactly 1 by definition.
  std::vector<char> is_host(g.num_edges(), 0);
  for (int v = 0; v < t.num_vertices(); ++v) {
    int id = t.host_edge[v];
    if (id >= 0 && id < g.num_edges() && g.edge(id).w == t.parent_weight[v]) is_host[id] = 1;
  }
  std::vector<std::pair<int, int>> pairs;
  std::vector<int> pair_edge;
  pairs.reserve(g.num_edges());
  for (int e = 0; e < g.num_edges(); ++e) {
    if (!is_host[e]) {
      pairs.emplace_back(g.edge(e).u, g.edge(e).v);
      pair_edge.push_back(e);
    }
  }
  Vector r = tree_resistances(t, pairs);
  EdgeVector st(g.num_edges(), 1.0);
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    st[pair_edge[i]] = g.edge(pair_edge[i]).w * r[i];
  }
  return st;
}

double stretch_via_cuts(const WeightedGraph& g, const SpanningTree& t) {
  if (t.num_vertices() != g.num_vertices()) {
    throw TreeDoesNotSpan("tree vertex count does not match graph");
  }
  int n = g.num_vertices();
  std::vector<std::pair<int, int>> pairs;
  pairs.reserve(g.num_edges());
  for (const Edge& e : g.edges()) pairs.emplace_back(e.u, e.v);
  std::vector<int> lcas = batch_lca(t, pairs);

  // Each graph edge crosses exactly the tree edges on its tree path; a
  // +w/+w/-2w difference scheme turns subtree sums into crossing capacities.
  Vector diff(n, 0.0);
  for (int e = 0; e < g.num_edges(); ++e) {
    diff[g.edge(e).u] += g.edge(e).w;
    diff[g.edge(e).v] += g.edge(e).w;
    diff[lcas[e]] -= 2.0 * g.edge(e).w;
  }
  for (int i = n - 1; i >= 1; --i) {
    int v = t.order[i];
    diff[t.parent[v]] += diff[v];
  }
  double total = 0.0;
  for (int i = n - 1; i >= 1; --i) {
    int v = t.order[i];
    total += diff[v] / t.parent_weight[v];
  }
  return total;
}

SpanningTree max_weight_spanning_tree(const WeightedGraph& g) {
  std::vector<int> ids(g.num_edges());
  std::iota(ids.begin(), ids.end(), 0);
  std::sort(ids.begin(), ids.end(), [&](int a, int b) {
    return g.edge(a).w > g.edge(b).w || (g.edge(a).w == g.edge(b).w && a < b);
  });
  UnionFind uf(g.num_vertices());
  std::vector<int> tree_ids;
  tree_ids.reserve(g.num_vertices() - 1);
  for (int id : ids) {
    if (uf.unite(g.edge(id).u, g.edge(id).v)) tree_ids.push_back(id);
  }
  if (static_cast<int>(tree_ids.size()) != g.num_vertices() - 1) {
    throw Disconnected("graph is not connected");
  }
  std::sort(tree_ids.begin(), tree_ids.end());
  return SpanningTree::from_edge_ids(g, tree_ids);
}

WeightedGraph scale_spine(const WeightedGraph& g, const SpanningTree& t, double kappa) {
  if (t.num_vertices() != g.num_vertices()) {
    throw TreeNotSubgraph("tree vertex count does not match graph");
  }
  if (!(kappa > 0.0) || !std::isfinite(kappa)) {
    throw NonPositiveWeight("kappa must be positive");
  }
  EdgeVector w(g.num_edges());
  for (int e = 0; e < g.num_edges(); ++e) w[e] = g.edge(e).w;
  for (int v = 0; v < t.num_vertices(); ++v) {
    if (v == t.root) continue;
    int id = t.host_edge[v];
    if (id < 0 || id >= g.num_edges() || g.edge(id).w != t.parent_weight[v]) {
      throw TreeNotSubgraph("tree edge " + std::to_string(v) + " is not hosted by the graph");
    }
    w[id] *= kappa;
  }
  return g.with_weights(w);
}

}  // namespace resparse
