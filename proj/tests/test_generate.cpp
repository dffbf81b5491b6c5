#include <algorithm>
#include <queue>
#include <vector>

#include "doctest.h"
#include "resparse/errors.hpp"
#include "resparse/generate.hpp"
#include "resparse/graph.hpp"
#include "resparse/rng.hpp"

using namespace resparse;

namespace {

// Independent reachability check so generator tests do not lean on
// connected_components from the library under test.
bool bfs_connected(const WeightedGraph& g) {
  int n = g.num_vertices();
  if (n == 0) return true;
  std::vector<std::vector<int>> adj(n);
  for (const Edge& e : g.edges()) {
    adj[e.u].push_back(e.v);
    adj[e.v].push_back(e.u);
  }
  std::vector<char> seen(n, 0);
  std::queue<int> q;
  q.push(0);
  seen[0] = 1;
  int count = 1;
  while (!q.empty()) {
    int v = q.front();
    q.pop();
    for (int u : adj[v]) {
      if (!seen[u]) {
        seen[u] = 1;
        ++count;
        q.push(u);
      }
    }
  }
  return count == n;
}

}  // namespace

TEST_CASE("path, cycle, complete, star shapes") {
  WeightedGraph p = path_graph(5);
  CHECK(p.num_vertices() == 5);
  CHECK(p.num_edges() == 4);
  CHECK(bfs_connected(p));

  WeightedGraph c = cycle_graph(6, 2.0);
  CHECK(c.num_edges() == 6);
  CHECK(c.min_weight() == doctest::Approx(2.0));
  CHECK(bfs_connected(c));

  WeightedGraph k = complete_graph(7);
  CHECK(k.num_edges() == 21);
  CHECK(k.is_unweighted());

  WeightedGraph s = star_graph(6);
  CHECK(s.num_edges() == 5);
  Vector deg = s.weighted_degrees();
  int hubs = 0;
  for (double d : deg) {
    if (d == doctest::Approx(5.0)) ++hubs;
  }
  CHECK(hubs == 1);
}

TEST_CASE("grid graph indexing (i, j) -> i*cols + j") {
  WeightedGraph g = grid_graph(3, 4);
  CHECK(g.num_vertices() == 12);
  CHECK(g.num_edges() == 3 * 3 + 2 * 4);  // rows*(cols-1) + (rows-1)*cols
  CHECK(bfs_connected(g));
  // vertex (1,1) = 5 has neighbors 1, 4, 6, 9
  std::vector<int> nbr;
  for (int k = g.adj_offsets()[5]; k < g.adj_offsets()[6]; ++k) {
    nbr.push_back(g.other_endpoint(g.adj_edges()[k], 5));
  }
  std::sort(nbr.begin(), nbr.end());
  CHECK(nbr == std::vector<int>{1, 4, 6, 9});
}

TEST_CASE("two cliques joined by one bridge") {
  int k = 5;
  WeightedGraph g = two_clique_bridge(k);
  CHECK(g.num_vertices() == 2 * k);
  CHECK(g.num_edges() == k * (k - 1) + 1);
  CHECK(bfs_connected(g));
  // bridge (k-1, k) present exactly once
  int bridges = 0;
  for (const Edge& e : g.edges()) {
    bool same_side = (e.u < k) == (e.v < k);
    bool is_bridge = (e.u == k - 1 && e.v == k);
    CHECK((same_side || is_bridge));
    if (is_bridge) ++bridges;
  }
  CHECK(bridges == 1);
}

TEST_CASE("random_connected is connected with the requested size and weights") {
  RngStream rng(42, "gen-test");
  for (int trial = 0; trial < 10; ++trial) {
    int n = 10 + rng.next_index(90);
    int m = (n - 1) + rng.next_index(3 * n);
    WeightedGraph g = random_connected(n, m, 0.5, 8.0, rng.child(trial));
    CHECK(g.num_vertices() == n);
    CHECK(g.num_edges() == m);
    CHECK(bfs_connected(g));
    CHECK(g.min_weight() >= 0.5);
    CHECK(g.max_weight() <= 8.0);
  }
}

TEST_CASE("random_connected is deterministic in the stream") {
  WeightedGraph a = random_connected(30, 80, 1.0, 2.0, RngStream(7, "s"));
  WeightedGraph b = random_connected(30, 80, 1.0, 2.0, RngStream(7, "s"));
  REQUIRE(a.num_edges() == b.num_edges());
  for (int e = 0; e < a.num_edges(); ++e) {
    CHECK(a.edge(e).u == b.edge(e).u);
    CHECK(a.edge(e).v == b.edge(e).v);
    CHECK(a.edge(e).w == b.edge(e).w);
  }
  WeightedGraph c = random_connected(30, 80, 1.0, 2.0, RngStream(8, "s"));
  bool differs = false;
  for (int e = 0; e < a.num_edges() && !differs; ++e) {
    differs = a.edge(e).u != c.edge(e).u || a.edge(e).v != c.edge(e).v ||
              a.edge(e).w != c.edge(e).w;
  }
  CHECK(differs);
}

TEST_CASE("unit-weight convenience: w_min = w_max = 1") {
  WeightedGraph g = random_connected(20, 40, 1.0, 1.0, RngStream(1));
  CHECK(g.is_unweighted());
}

TEST_CASE("generator argument validation") {
  CHECK_THROWS_AS(cycle_graph(2), ConfigError);
  CHECK_THROWS_AS(grid_graph(0, 3), ConfigError);
  CHECK_THROWS_AS(two_clique_bridge(1), ConfigError);
  CHECK_THROWS_AS(random_connected(10, 5, 1.0, 1.0, RngStream(0)), ConfigError);
  CHECK_THROWS_AS(random_connected(10, 20, 0.0, 1.0, RngStream(0)), ConfigError);
}
