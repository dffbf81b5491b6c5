#pragma once

#include "resparse/graph.hpp"
#include "resparse/rng.hpp"

namespace resparse {

WeightedGraph path_graph(int n, double w = 1.0);
WeightedGraph cycle_graph(int n, double w = 1.0);
WeightedGraph complete_graph(int n, double w = 1.0);
WeightedGraph star_graph(int n, double w = 1.0);
// rows x cols lattice, unit weights; vertex (i, j) is i*cols + j.
WeightedGraph grid_graph(int rows, int cols);
// Two K_k cliques joined by the single edge (k-1, k).
WeightedGraph two_clique_bridge(int k);

// Connected random multigraph: a random-permutation path backbone plus
// m - (n-1) uniformly random non-loop pairs. Weights are log-uniform in
// [w_min, w_max] (pass 1, 1 for a unit-weight graph).
WeightedGraph random_connected(int n, int m, double w_min, double w_max, RngStream rng);

}  // namespace resparse
