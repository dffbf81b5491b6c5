#include "resparse/graph.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <utility>

#include "resparse/errors.hpp"

namespace resparse {

WeightedGraph build_graph(int n, const std::vector<Edge>& raw) {
  if (n < 0) throw VertexOutOfRange("vertex count must be non-negative");
  WeightedGraph g;
  g.n_ = n;
  g.edges_.reserve(raw.size());
  for (std::size_t i = 0; i < raw.size(); ++i) {
    Edge e = raw[i];
    if (e.u < 0 || e.u >= n || e.v < 0 || e.v >= n) {
      throw VertexOutOfRange("edge " + std::to_string(i) + " touches vertex outside [0, " +
                             std::to_string(n) + ")");
    }
    if (!(e.w > 0.0) || !std::isfinite(e.w)) {
      throw NonPositiveWeight("edge " + std::to_string(i) + " has non-positive weight");
    }
    if (e.u == e.v) {
      ++g.dropped_self_loops_;
      continue;
    }
    if (e.u > e.v) std::swap(e.u, e.v);
    g.edges_.push_back(e);
  }
  std::stable_sort(g.edges_.begin(), g.edges_.end(),
                   [](const Edge& a, const Edge& b) { return a.u < b.u || (a.u == b.u && a.v < b.v); });
  g.build_adjacency();
  return g;
}

void WeightedGraph::build_adjacency() {
  adj_offsets_.assign(n_ + 1, 0);
  for (const Edge& e : edges_) {
    ++adj_offsets_[e.u + 1];
    ++adj_offsets_[e.v + 1];
  }
  for (int v = 0; v < n_; ++v) adj_offsets_[v + 1] += adj_offsets_[v];
  adj_edges_.resize(2 * edges_.size());
  std::vector<int> cursor(adj_offsets_.begin(), adj_offsets_.end() - 1);
  for (int e = 0; e < num_edges(); ++e) {
    adj_edges_[cursor[edges_[e].u]++] = e;
    adj_edges_[cursor[edges_[e].v]++] = e;
  }
}

double WeightedGraph::total_weight() const {
  double s = 0.0;
  for (const Edge& e : edges_) s += e.w;
  return s;
}

double WeightedGraph::min_weight() const {
  double m = std::numeric_limits<double>::infinity();
  for (const Edge& e : edges_) m = std::min(m, e.w);
  return m;
}

double WeightedGraph::max_weight() const {
  double m = 0.0;
  for (const Edge& e : edges_) m = std::max(m, e.w);
  return m;
}

bool WeightedGraph::is_unweighted() const {
  for (const Edge& e : edges_) {
    if (e.w != 1.0) return false;
  }
  return true;
}

Vector WeightedGraph::weighted_degrees() const {
  Vector d(n_, 0.0);
  for (const Edge& e : edges_) {
    d[e.u] += e.w;
    d[e.v] += e.w;
  }
  return d;
}

WeightedGraph WeightedGraph::with_weights(const EdgeVector& w) const {
  if (static_cast<int>(w.size()) != num_edges()) {
    throw DimensionMismatch("weight vector length does not match edge count");
  }
  WeightedGraph g = *this;
  for (int e = 0; e < num_edges(); ++e) {
    if (!(w[e] > 0.0) || !std::isfinite(w[e])) {
      throw NonPositiveWeight("replacement weight for edge " + std::to_string(e) +
                              " is non-positive");
    }
    g.edges_[e].w = w[e];
  }
  return g;
}

WeightedGraph WeightedGraph::induced_edges(const std::vector<int>& keep_ids) const {
  WeightedGraph g;
  g.n_ = n_;
  g.edges_.reserve(keep_ids.size());
  int prev = -1;
  for (int id : keep_ids) {
    if (id < 0 || id >= num_edges()) throw SubgraphMismatch("edge id out of range");
    if (id <= prev) throw SubgraphMismatch("edge ids must be strictly ascending");
    prev = id;
    g.edges_.push_back(edges_[id]);
  }
  g.build_adjacency();
  return g;
}

WeightedGraph WeightedGraph::merge_parallel() const {
  WeightedGraph g;
  g.n_ = n_;
  g.dropped_self_loops_ = dropped_self_loops_;
  g.edges_.reserve(edges_.size());
  for (const Edge& e : edges_) {
    if (!g.edges_.empty() && g.edges_.back().u == e.u && g.edges_.back().v == e.v) {
      g.edges_.back().w += e.w;
    } else {
      g.edges_.push_back(e);
    }
  }
  g.build_adjacency();
  return g;
}

Vector apply_laplacian(const WeightedGraph& g, const Vector& x) {
  Vector y;
  apply_laplacian(g, x, y);
  return y;
}

void apply_laplacian(const WeightedGraph& g, const Vector& x, Vector& y) {
  if (static_cast<int>(x.size()) != g.num_vertices()) {
    throw DimensionMismatch("vector length does not match vertex count");
  }
  y.assign(g.num_vertices(), 0.0);
  for (const Edge& e : g.edges()) {
    double d = e.w * (x[e.u] - x[e.v]);
    y[e.u] += d;
    y[e.v] -= d;
  }
}

double quadratic_form(const WeightedGraph& g, const Vector& x) {
  if (static_cast<int>(x.size()) != g.num_vertices()) {
    throw DimensionMismatch("vector length does not match vertex count");
  }
  double s = 0.0;
  for (const Edge& e : g.edges()) {
    double d = x[e.u] - x[e.v];
    s += e.w * d * d;
  }
  return s;
}

std::vector<std::vector<int>> connected_components(const WeightedGraph& g) {
  int n = g.num_vertices();
  std::vector<int> comp(n, -1);
  std::vector<std::vector<int>> out;
  std::vector<int> stack;
  for (int s = 0; s < n; ++s) {
    if (comp[s] >= 0) continue;
    int c = static_cast<int>(out.size());
    out.emplace_back();
    comp[s] = c;
    stack.push_back(s);
    while (!stack.empty()) {
      int v = stack.back();
      stack.pop_back();
      out[c].push_back(v);
      for (int i = g.adj_offsets()[v]; i < g.adj_offsets()[v + 1]; ++i) {
        int u = g.other_endpoint(g.adj_edges()[i], v);
        if (comp[u] < 0) {
          comp[u] = c;
          stack.push_back(u);
        }
      }
    }
  }
  for (auto& c : out) std::sort(c.begin(), c.end());
  return out;
}

bool is_connected(const WeightedGraph& g) {
  if (g.num_vertices() <= 1) return true;
  return connected_components(g).size() == 1;
}

}  // namespace resparse
