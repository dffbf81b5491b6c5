#pragma once

#include <utility>
#include <vector>

#include "resparse/graph.hpp"
#include "resparse/params.hpp"
#include "resparse/rng.hpp"
#include "resparse/solver.hpp"

namespace resparse {

// Number of random-projection rows for distortion eps_jl on n vertices.
int sketch_rows(int n, double eps_jl, const Params& params = {});

// Euclidean embedding whose pairwise squared distances approximate
// effective resistances in the solver's graph: row r holds the potentials
// of one random signed edge-current aggregate pushed through the solver.
struct ResistanceSketch {
  int rows = 0;
  std::vector<Vector> z;  // z[r][v]
  double eps_jl = 0.0;
  double solver_delta = 0.0;
};

ResistanceSketch build_sketch(const Solver& solver, double eps_jl, RngStream rng,
                              const Params& params = {});

double sketch_resistance(const ResistanceSketch& s, int u, int v);

// Row-streamed variant: accumulates (z_r[u]-z_r[v])^2 per pair in row order
// without materializing the embedding, so results are bit-identical to
// querying build_sketch regardless of the memory strategy.
Vector sketch_pair_resistances(const Solver& solver,
                               const std::vector<std::pair<int, int>>& pairs, double eps_jl,
                               RngStream rng, const Params& params = {});

// One solve per pair: R^(u,v) = x' L x with x = solve(chi_u - chi_v).
// Falls inside [(1-delta)^2, (1+delta)^2] times the true resistance for a
// solver honoring its energy-error contract.
Vector solve_pair_resistances(const Solver& solver,
                              const std::vector<std::pair<int, int>>& pairs);

// Endpoint pairs of every edge, in edge order.
std::vector<std::pair<int, int>> edge_pairs(const WeightedGraph& g);

}  // namespace resparse
