#include "resparse/lst.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_map>
#include <vector>

#include "resparse/errors.hpp"

namespace resparse {

namespace {

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(int n) : parent(n) {
    for (int i = 0; i < n; ++i) parent[i] = i;
  }
  int find(int x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  }
  // Returns false when already joined.
  bool unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    parent[b] = a;
    return true;
  }
};

}  // namespace

SpanningTree low_stretch_tree(const WeightedGraph& g, RngStream rng_in,
                              const Params& params) {
  const int n = g.num_vertices();
  const int m = g.num_edges();
  if (!is_connected(g)) throw Disconnected("low-stretch tree requires a connected graph");
  if (n == 1) return SpanningTree::from_edge_ids(g, {}, 0);

  RngStream rng = rng_in.substream("lst");
  const double ratio = params.akpw_class_ratio;
  const double beta =
      1.0 / (params.akpw_beta_c * std::max(2.0, std::log(static_cast<double>(std::max(m, 2)))));

  // Weight class of an edge: 0 holds the heaviest, each class steps the
  // weight down by `ratio`. Ties at class boundaries are harmless.
  const double wmax = g.max_weight();
  const double lr = std::log(ratio);
  int max_class = 0;
  std::vector<int> edge_class(m);
  for (int e = 0; e < m; ++e) {
    double v = std::log(wmax / g.edges()[e].w) / lr;
    int k = v <= 0.0 ? 0 : static_cast<int>(v);
    edge_class[e] = k;
    max_class = std::max(max_class, k);
  }
  std::vector<std::vector<int>> by_class(max_class + 1);
  for (int e = 0; e < m; ++e) by_class[edge_class[e]].push_back(e);

  UnionFind uf(n);
  std::vector<int> tree_ids;
  tree_ids.reserve(n - 1);
  std::vector<int> pool;
  pool.reserve(m);

  // Per-round scratch, keyed by local cluster-graph indices.
  std::unordered_map<int, int> local_of;
  std::vector<std::vector<std::pair<int, int>>> adj;  // (local neighbor, edge id)
  std::vector<int> locals_order, frontier, next_layer;

  int next_class = 0;
  int round = 0;
  while (static_cast<int>(tree_ids.size()) < n - 1) {
    if (next_class <= max_class) {
      for (int e : by_class[next_class]) pool.push_back(e);
      ++next_class;
    }
    if (pool.empty()) continue;

    // Contracted multigraph over the surviving pool edges.
    local_of.clear();
    adj.clear();
    locals_order.clear();
    std::vector<int> kept_pool;
    kept_pool.reserve(pool.size());
    for (int e : pool) {
      int ru = uf.find(g.edges()[e].u);
      int rv = uf.find(g.edges()[e].v);
      if (ru == rv) continue;  // swallowed by an earlier contraction
      kept_pool.push_back(e);
      for (int r : {ru, rv}) {
        if (local_of.emplace(r, static_cast<int>(adj.size())).second) {
          adj.emplace_back();
          locals_order.push_back(r);
        }
      }
      int lu = local_of[ru], lv = local_of[rv];
      adj[lu].emplace_back(lv, e);
      adj[lv].emplace_back(lu, e);
    }
    pool.swap(kept_pool);
    if (pool.empty()) continue;

    const int nl = static_cast<int>(adj.size());
    std::vector<int> centers(nl);
    for (int i = 0; i < nl; ++i) centers[i] = i;
    RngStream rr = rng.child(round++);
    for (int i = nl - 1; i > 0; --i) {
      int j = rr.next_index(i + 1);
      std::swap(centers[i], centers[j]);
    }

    // Ball growing: keep absorbing the next BFS layer while the incident
    // edge volume still grows by a (1+beta) factor; the first layer is
    // always taken so every round contracts something.
    std::vector<char> visited(nl, 0);
    std::vector<char> in_ball(nl, 0);
    for (int c : centers) {
      if (visited[c]) continue;
      visited[c] = 1;
      in_ball[c] = 1;
      std::vector<int> ball{c};
      frontier.assign(1, c);
      double vol = static_cast<double>(adj[c].size());
      int radius = 0;
      while (!frontier.empty()) {
        next_layer.clear();
        double grow = 0.0;
        std::vector<std::pair<int, int>> attach;  // (new local vertex, edge id)
        for (int x : frontier) {
          for (const auto& [y, eid] : adj[x]) {
            if (visited[y] || in_ball[y]) continue;
            in_ball[y] = 1;
            next_layer.push_back(y);
            attach.emplace_back(y, eid);
            grow += static_cast<double>(adj[y].size());
          }
        }
        if (next_layer.empty()) break;
        ++radius;
        if (radius > 1 && vol + grow <= (1.0 + beta) * vol) {
          for (int y : next_layer) in_ball[y] = 0;  // rejected layer
          break;
        }
        for (int y : next_layer) visited[y] = 1;
        for (const auto& [y, eid] : attach) {
          (void)y;
          tree_ids.push_back(eid);
        }
        ball.insert(ball.end(), next_layer.begin(), next_layer.end());
        vol += grow;
        frontier = next_layer;
      }
      for (int v : ball) {
        in_ball[v] = 0;
        uf.unite(locals_order[c], locals_order[v]);
      }
    }
  }

  std::sort(tree_ids.begin(), tree_ids.end());
  return SpanningTree::from_edge_ids(g, tree_ids, 0);
}

CutApproxResult incremental_cut_sparsifier(const WeightedGraph& g, double target_density,
                                           RngStream rng, const Params& params) {
  const int n = g.num_vertices();
  const int m = g.num_edges();
  if (!is_connected(g)) throw Disconnected("cut sparsifier requires a connected graph");
  CutApproxResult out;
  if (m == 0) {
    out.h = g;
    return out;
  }

  // Integer weights steer only the tree choice; output weights stay in the
  // caller's units.
  const double factor = 65536.0 / g.min_weight();
  out.weight_rescale = factor;
  Vector keys(m);
  for (int e = 0; e < m; ++e) {
    keys[e] = std::max(1.0, std::round(g.edges()[e].w * factor));
  }
  SpanningTree t = max_weight_spanning_tree(g.with_weights(keys));
  std::vector<char> in_tree(m, 0);
  for (int v = 0; v < n; ++v) {
    if (v != t.root) in_tree[t.host_edge[v]] = 1;
  }

  const double lg2 = std::log2(static_cast<double>(std::max(n, 2)));
  const double rho = params.c_rho * std::log(static_cast<double>(std::max(n, 2)));
  int scale;
  if (target_density > 0.0) {
    double want = target_density * m - (n - 1);
    double p_target = want / std::max(1.0, static_cast<double>(m - (n - 1)));
    p_target = std::min(1.0, std::max(p_target, 1e-3));
    scale = std::max(1, static_cast<int>(std::ceil(rho / p_target)));
  } else {
    scale = std::max(1, static_cast<int>(std::ceil(params.c_scale * lg2 * lg2)));
  }
  const double p = std::min(1.0, rho / scale);
  const double unit = 2.0 / (3.0 * scale);

  // Every tree edge stands for `scale` parallel copies; each copy, and each
  // non-tree edge, survives independently with probability p at weight
  // unit * w / p. A tree edge whose copies all die keeps one copy anyway,
  // so H stays connected.
  RngStream r = rng.substream("cut");
  std::vector<Edge> kept;
  std::vector<int> ids;
  for (int e = 0; e < m; ++e) {
    const Edge& he = g.edges()[e];
    if (in_tree[e]) {
      int copies = 0;
      for (int s = 0; s < scale; ++s) copies += r.next_bernoulli(p) ? 1 : 0;
      copies = std::max(copies, 1);
      kept.push_back(Edge{he.u, he.v, copies * unit * he.w / p});
      ids.push_back(e);
    } else if (r.next_bernoulli(p)) {
      kept.push_back(Edge{he.u, he.v, unit * he.w / p});
      ids.push_back(e);
    }
  }
  // kept follows g's canonical edge order, so the rebuilt graph preserves
  // it and ids stays aligned with out.h.edges().
  out.h = build_graph(n, kept);
  out.host_ids = std::move(ids);
  out.tau = 3.0 * scale;
  out.p = p;
  out.scale = scale;
  return out;
}

SpanningTree fast_low_stretch_tree(const WeightedGraph& g, RngStream rng,
                                   const Params& params) {
  CutApproxResult cut =
      incremental_cut_sparsifier(g, params.target_density, rng.child(1), params);
  SpanningTree th = low_stretch_tree(cut.h, rng.child(2), params);
  std::vector<int> g_ids;
  g_ids.reserve(g.num_vertices() - 1);
  for (int v = 0; v < cut.h.num_vertices(); ++v) {
    if (v != th.root) g_ids.push_back(cut.host_ids[th.host_edge[v]]);
  }
  std::sort(g_ids.begin(), g_ids.end());
  return SpanningTree::from_edge_ids(g, g_ids, th.root);
}

}  // namespace resparse
