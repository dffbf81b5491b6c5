#include <Eigen/Dense>
#include <cmath>
#include <numeric>
#include <utility>
#include <vector>

#include "doctest.h"
#include "resparse/errors.hpp"
#include "resparse/generate.hpp"
#include "resparse/graph.hpp"
#include "resparse/oracle.hpp"
#include "resparse/rng.hpp"
#include "resparse/tree.hpp"

using namespace resparse;

namespace {

// Brute-force LCA by walking parent pointers, for cross-checking batch_lca.
int slow_lca(const SpanningTree& t, int u, int v) {
  std::vector<char> on_path(t.num_vertices(), 0);
  for (int x = u; x != -1; x = t.parent[x]) on_path[x] = 1;
  for (int x = v; x != -1; x = t.parent[x]) {
    if (on_path[x]) return x;
  }
  return -1;
}

SpanningTree random_tree_of(const WeightedGraph& g, RngStream rng) {
  // random spanning tree: random-order incremental forest (Kruskal on a
  // shuffled edge order)
  int n = g.num_vertices();
  std::vector<int> order(g.num_edges());
  std::iota(order.begin(), order.end(), 0);
  for (int i = g.num_edges() - 1; i > 0; --i) {
    std::swap(order[i], order[rng.next_index(i + 1)]);
  }
  std::vector<int> comp(n);
  std::iota(comp.begin(), comp.end(), 0);
  std::vector<int> ids;
  for (int e : order) {
    int cu = comp[g.edge(e).u], cv = comp[g.edge(e).v];
    if (cu == cv) continue;
    ids.push_back(e);
    for (int& c : comp) {
      if (c == cv) c = cu;
    }
  }
  std::sort(ids.begin(), ids.end());
  return SpanningTree::from_edge_ids(g, ids);
}

}  // namespace

TEST_CASE("path tree of C4: three unit edges plus a chord of stretch 3") {
  WeightedGraph c4 = cycle_graph(4);
  // edges of C4 in canonical order: (0,1) (0,3) (1,2) (2,3); path = drop (0,3)
  SpanningTree t = SpanningTree::from_edge_ids(c4, {0, 2, 3});
  EdgeVector st = compute_stretches(c4, t);
  REQUIRE(st.size() == 4);
  CHECK(st[0] == doctest::Approx(1.0));
  CHECK(st[2] == doctest::Approx(1.0));
  CHECK(st[3] == doctest::Approx(1.0));
  CHECK(st[1] == doctest::Approx(3.0));
  double total = std::accumulate(st.begin(), st.end(), 0.0);
  CHECK(total == doctest::Approx(6.0));
  CHECK(stretch_via_cuts(c4, t) == doctest::Approx(6.0));
}

TEST_CASE("triangle with weights 1,2,3: off-tree stretch 5/6") {
  WeightedGraph g = build_graph(3, {{0, 1, 1.0}, {1, 2, 2.0}, {0, 2, 3.0}});
  SpanningTree t = max_weight_spanning_tree(g);
  // max-weight tree keeps the weight-2 and weight-3 edges
  WeightedGraph tg = t.as_graph();
  double kept = 0.0;
  for (const Edge& e : tg.edges()) kept += e.w;
  CHECK(kept == doctest::Approx(5.0));
  EdgeVector st = compute_stretches(g, t);
  // edge 0 = (0,1,w=1) is off-tree: R_T = 1/2 + 1/3
  CHECK(st[0] == doctest::Approx(5.0 / 6.0));
  CHECK(st[1] == doctest::Approx(1.0));
  CHECK(st[2] == doctest::Approx(1.0));
}

TEST_CASE("star is its own tree: cut-based total stretch equals edge count") {
  WeightedGraph s = star_graph(4);
  SpanningTree t = SpanningTree::from_edge_ids(s, {0, 1, 2});
  CHECK(stretch_via_cuts(s, t) == doctest::Approx(3.0));
  EdgeVector st = compute_stretches(s, t);
  for (double v : st) CHECK(v == doctest::Approx(1.0));
}

TEST_CASE("tree-path resistance across P3 endpoints is 2") {
  WeightedGraph p = path_graph(3);
  SpanningTree t = SpanningTree::from_edge_ids(p, {0, 1});
  Vector r = tree_resistances(t, {{0, 2}, {0, 1}, {2, 1}});
  CHECK(r[0] == doctest::Approx(2.0));
  CHECK(r[1] == doctest::Approx(1.0));
  CHECK(r[2] == doctest::Approx(1.0));
}

TEST_CASE("weighted tree resistance sums reciprocals along the path") {
  WeightedGraph g = build_graph(3, {{0, 1, 2.0}, {1, 2, 4.0}});
  SpanningTree t = SpanningTree::from_edge_ids(g, {0, 1});
  Vector r = tree_resistances(t, {{0, 2}});
  CHECK(r[0] == doctest::Approx(0.75));
}

TEST_CASE("scale_spine on C4 with kappa 3 flattens the chord stretch to 1") {
  WeightedGraph c4 = cycle_graph(4);
  SpanningTree t = SpanningTree::from_edge_ids(c4, {0, 2, 3});
  WeightedGraph h = scale_spine(c4, t, 3.0);
  CHECK(h.num_edges() == 4);
  CHECK(h.edge(0).w == doctest::Approx(3.0));
  CHECK(h.edge(1).w == doctest::Approx(1.0));  // chord untouched
  SpanningTree ht = SpanningTree::from_edge_ids(h, {0, 2, 3});
  EdgeVector st = compute_stretches(h, ht);
  CHECK(st[1] == doctest::Approx(1.0));
}

TEST_CASE("scale_spine rejects a tree the graph does not host") {
  WeightedGraph c4 = cycle_graph(4);
  SpanningTree foreign = SpanningTree::from_edges(
      4, {{0, 1, 2.0}, {1, 2, 1.0}, {2, 3, 1.0}});  // weight mismatch on (0,1)
  CHECK_THROWS_AS(scale_spine(c4, foreign, 2.0), TreeNotSubgraph);
}

TEST_CASE("from_edge_ids validates spanning-ness") {
  WeightedGraph c4 = cycle_graph(4);
  CHECK_THROWS_AS(SpanningTree::from_edge_ids(c4, {0, 1}), TreeDoesNotSpan);
  CHECK_THROWS_AS(SpanningTree::from_edge_ids(c4, {0, 1, 2, 3}), TreeDoesNotSpan);
  WeightedGraph two = build_graph(4, {{0, 1, 1.0}, {0, 1, 2.0}, {2, 3, 1.0}});
  CHECK_THROWS_AS(SpanningTree::from_edge_ids(two, {0, 1, 2}), TreeDoesNotSpan);
}

TEST_CASE("tree structure bookkeeping: prefix, order, host edges") {
  RngStream rng(3, "tree-structure");
  for (int trial = 0; trial < 10; ++trial) {
    int n = 5 + rng.next_index(40);
    int m = (n - 1) + rng.next_index(2 * n);
    WeightedGraph g = random_connected(n, m, 0.25, 4.0, rng.child(trial));
    SpanningTree t = random_tree_of(g, rng.child(100 + trial));

    CHECK(t.num_vertices() == n);
    CHECK(t.parent[t.root] == -1);
    CHECK(t.host_edge[t.root] == -1);
    CHECK(static_cast<int>(t.order.size()) == n);
    CHECK(t.order[0] == t.root);
    for (int v = 0; v < n; ++v) {
      if (v == t.root) continue;
      const Edge& e = g.edge(t.host_edge[v]);
      bool matches = (e.u == v && e.v == t.parent[v]) || (e.v == v && e.u == t.parent[v]);
      CHECK(matches);
      CHECK(t.parent_weight[v] == e.w);
      CHECK(t.prefix[v] == doctest::Approx(t.prefix[t.parent[v]] + 1.0 / e.w));
    }

    WeightedGraph tg = t.as_graph();
    CHECK(tg.num_vertices() == n);
    CHECK(tg.num_edges() == n - 1);
    CHECK(is_connected(tg));
  }
}

TEST_CASE("batch_lca agrees with parent-walking") {
  RngStream rng(5, "lca");
  for (int trial = 0; trial < 8; ++trial) {
    int n = 4 + rng.next_index(60);
    WeightedGraph g = random_connected(n, n - 1 + rng.next_index(n), 1.0, 1.0,
                                       rng.child(trial));
    SpanningTree t = random_tree_of(g, rng.child(50 + trial));
    std::vector<std::pair<int, int>> pairs;
    for (int i = 0; i < 40; ++i) {
      pairs.emplace_back(rng.next_index(n), rng.next_index(n));
    }
    std::vector<int> got = batch_lca(t, pairs);
    REQUIRE(got.size() == pairs.size());
    for (size_t i = 0; i < pairs.size(); ++i) {
      CHECK(got[i] == slow_lca(t, pairs[i].first, pairs[i].second));
    }
  }
}

TEST_CASE("cut-based and lca-based total stretch agree") {
  RngStream rng(7, "stretch-agreement");
  for (int trial = 0; trial < 30; ++trial) {
    int n = 5 + rng.next_index(45);
    int m = (n - 1) + rng.next_index(3 * n);
    WeightedGraph g = random_connected(n, m, 0.1, 10.0, rng.child(trial));
    SpanningTree t = random_tree_of(g, rng.child(1000 + trial));
    EdgeVector st = compute_stretches(g, t);
    double via_lca = std::accumulate(st.begin(), st.end(), 0.0);
    double via_cuts = stretch_via_cuts(g, t);
    CHECK(via_cuts == doctest::Approx(via_lca).epsilon(1e-10));
  }
}

TEST_CASE("total stretch equals trace(L_G pinv(L_T))") {
  RngStream rng(9, "trace-identity");
  for (int trial = 0; trial < 10; ++trial) {
    int n = 5 + rng.next_index(45);
    int m = (n - 1) + rng.next_index(2 * n);
    WeightedGraph g = random_connected(n, m, 0.5, 3.0, rng.child(trial));
    SpanningTree t = random_tree_of(g, rng.child(10 + trial));
    EdgeVector st = compute_stretches(g, t);
    double total = std::accumulate(st.begin(), st.end(), 0.0);
    Eigen::MatrixXd lg = laplacian_dense(g);
    Eigen::MatrixXd tp = pinv_dense(t.as_graph());
    double trace = (lg * tp).trace();
    CHECK(std::abs(total - trace) <= 1e-8 * std::max(1.0, std::abs(trace)));
  }
}

TEST_CASE("tree resistance dominates graph resistance") {
  RngStream rng(11, "rayleigh");
  for (int trial = 0; trial < 10; ++trial) {
    int n = 5 + rng.next_index(30);
    int m = (n - 1) + rng.next_index(3 * n);
    WeightedGraph g = random_connected(n, m, 0.5, 5.0, rng.child(trial));
    SpanningTree t = random_tree_of(g, rng.child(20 + trial));
    Eigen::MatrixXd lp = pinv_dense(g);
    EdgeVector st = compute_stretches(g, t);
    for (int e = 0; e < g.num_edges(); ++e) {
      const Edge& ed = g.edge(e);
      double rg = lp(ed.u, ed.u) + lp(ed.v, ed.v) - 2.0 * lp(ed.u, ed.v);
      // st_T(e)/w_e is the tree-path resistance; it can never beat the graph
      CHECK(st[e] / ed.w >= rg - 1e-9);
      // and the leverage score w_e R^G(e) is bounded by the stretch
      CHECK(ed.w * rg <= st[e] + 1e-9);
    }
  }
}

TEST_CASE("lowering host weights never raises total stretch") {
  RngStream rng(13, "stretch-domination");
  int violations = 0;
  for (int trial = 0; trial < 100; ++trial) {
    int n = 5 + rng.next_index(25);
    int m = (n - 1) + rng.next_index(2 * n);
    WeightedGraph h = random_connected(n, m, 0.5, 5.0, rng.child(trial));
    SpanningTree t = random_tree_of(h, rng.child(200 + trial));
    // H' <= H edge-wise, with tree-edge weights kept so T stays hosted
    EdgeVector w(h.num_edges());
    std::vector<char> on_tree(h.num_edges(), 0);
    for (int v = 0; v < n; ++v) {
      if (v != t.root) on_tree[t.host_edge[v]] = 1;
    }
    RngStream wr = rng.child(400 + trial);
    for (int e = 0; e < h.num_edges(); ++e) {
      w[e] = on_tree[e] ? h.edge(e).w : h.edge(e).w * (0.05 + 0.95 * wr.next_double());
    }
    WeightedGraph hp = h.with_weights(w);
    EdgeVector st_h = compute_stretches(h, t);
    EdgeVector st_hp = compute_stretches(hp, t);
    double sum_h = std::accumulate(st_h.begin(), st_h.end(), 0.0);
    double sum_hp = std::accumulate(st_hp.begin(), st_hp.end(), 0.0);
    if (!(sum_hp <= sum_h + 1e-9)) ++violations;
  }
  CHECK(violations == 0);
}

TEST_CASE("max_weight_spanning_tree breaks ties toward lower edge ids") {
  WeightedGraph g = build_graph(3, {{0, 1, 1.0}, {0, 2, 1.0}, {1, 2, 1.0}});
  SpanningTree t = max_weight_spanning_tree(g);
  std::vector<int> ids;
  for (int v = 0; v < 3; ++v) {
    if (v != t.root) ids.push_back(t.host_edge[v]);
  }
  std::sort(ids.begin(), ids.end());
  CHECK(ids == std::vector<int>{0, 1});
}

TEST_CASE("compute_stretches requires matching vertex sets") {
  WeightedGraph g = cycle_graph(4);
  SpanningTree t = SpanningTree::from_edges(3, {{0, 1, 1.0}, {1, 2, 1.0}});
  CHECK_THROWS_AS(compute_stretches(g, t), TreeDoesNotSpan);
}
