#include "resparse/resistance.hpp"

#include <cmath>

#include "resparse/errors.hpp"

namespace resparse {

namespace {

void check_pairs(int n, const std::vector<std::pair<int, int>>& pairs) {
  for (const auto& [u, v] : pairs) {
    if (u < 0 || u >= n || v < 0 || v >= n) {
      throw VertexOutOfRange("resistance query endpoint out of range");
    }
  }
}

// One signed aggregate of scaled edge indicators: y = B' W^{1/2} q_r with
// q_r entries +-1/sqrt(k). Sign draws consume the row stream in edge order;
// both sketch variants share this so their outputs match bitwise.
void sketch_rhs(const WeightedGraph& g, RngStream row_rng, double inv_sqrt_k, Vector& y) {
  y.assign(g.num_vertices(), 0.0);
  for (const Edge& e : g.edges()) {
    double c = (row_rng.next_u64() >> 63) ? inv_sqrt_k : -inv_sqrt_k;
    c *= std::sqrt(e.w);
    y[e.u] += c;
    y[e.v] -= c;
  }
}

}  // namespace

int sketch_rows(int n, double eps_jl, const Params& params) {
  if (!(eps_jl > 0.0) || eps_jl >= 1.0) throw ConfigError("sketch eps must lie in (0,1)");
  double k = std::ceil(params.c_jl * std::log(static_cast<double>(std::max(n, 2))) /
                       (eps_jl * eps_jl));
  return static_cast<int>(std::max(k, 1.0));
}

ResistanceSketch build_sketch(const Solver& solver, double eps_jl, RngStream rng,
                              const Params& params) {
  const WeightedGraph& g = solver.graph();
  ResistanceSketch s;
  s.rows = sketch_rows(g.num_vertices(), eps_jl, params);
  s.eps_jl = eps_jl;
  s.solver_delta = solver.delta();
  s.z.reserve(s.rows);
  RngStream base = rng.substream("sketch");
  const double inv_sqrt_k = 1.0 / std::sqrt(static_cast<double>(s.rows));
  Vector y;
  for (int r = 0; r < s.rows; ++r) {
    sketch_rhs(g, base.child(r), inv_sqrt_k, y);
    s.z.push_back(solver.solve(y));
  }
  return s;
}

double sketch_resistance(const ResistanceSketch& s, int u, int v) {
  if (s.z.empty()) return 0.0;
  const int n = static_cast<int>(s.z[0].size());
  if (u < 0 || u >= n || v < 0 || v >= n) {
    throw VertexOutOfRange("resistance query endpoint out of range");
  }
  double acc = 0.0;
  for (const Vector& zr : s.z) {
    double d = zr[u] - zr[v];
    acc += d * d;
  }
  return acc;
}

Vector sketch_pair_resistances(const Solver& solver,
                               const std::vector<std::pair<int, int>>& pairs, double eps_jl,
                               RngStream rng, const Params& params) {
  const WeightedGraph& g = solver.graph();
  check_pairs(g.num_vertices(), pairs);
  const int rows = sketch_rows(g.num_vertices(), eps_jl, params);
  RngStream base = rng.substream("sketch");
  const double inv_sqrt_k = 1.0 / std::sqrt(static_cast<double>(rows));
  Vector acc(pairs.size(), 0.0);
  Vector y;
  for (int r = 0; r < rows; ++r) {
    sketch_rhs(g, base.child(r), inv_sqrt_k, y);
    Vector z = solver.solve(y);
    for (size_t i = 0; i < pairs.size(); ++i) {
      double d = z[pairs[i].first] - z[pairs[i].second];
      acc[i] += d * d;
    }
  }
  return acc;
}

Vector solve_pair_resistances(const Solver& solver,
                              const std::vector<std::pair<int, int>>& pairs) {
  const WeightedGraph& g = solver.graph();
  const int n = g.num_vertices();
  check_pairs(n, pairs);
  Vector out(pairs.size(), 0.0);
  Vector b(n, 0.0);
  for (size_t i = 0; i < pairs.size(); ++i) {
    auto [u, v] = pairs[i];
    if (u == v) continue;
    b[u] = 1.0;
    b[v] = -1.0;
    Vector x = solver.solve(b);
    b[u] = 0.0;
    b[v] = 0.0;
    out[i] = quadratic_form(g, x);
  }
  return out;
}

std::vector<std::pair<int, int>> edge_pairs(const WeightedGraph& g) {
  std::vector<std::pair<int, int>> pairs;
  pairs.reserve(g.num_edges());
  for (const Edge& e : g.edges()) pairs.emplace_back(e.u, e.v);
  return pairs;
}

}  // namespace resparse
