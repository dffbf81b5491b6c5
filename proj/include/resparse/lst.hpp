#pragma once

#include <vector>

#include "resparse/graph.hpp"
#include "resparse/params.hpp"
#include "resparse/rng.hpp"
#include "resparse/tree.hpp"

namespace resparse {

// Low-stretch spanning tree by clustered contraction. Edges enter the
// working pool in descending weight classes (ratio params.akpw_class_ratio);
// each round decomposes the contracted multigraph into shallow BFS balls,
// whose internal BFS edges become tree edges, and contracts the balls.
// A tree input is returned unchanged (every edge is eventually forced).
// Deterministic for a fixed rng stream.
SpanningTree low_stretch_tree(const WeightedGraph& g, RngStream rng,
                              const Params& params = {});

// One-sided cut approximation: tau * cap_H(C) >= cap_G(C) for every cut C,
// with high probability. Max-weight spanning tree edges are viewed as
// `scale` parallel copies and every copy is kept independently with
// probability p, so H keeps at most one (collapsed) edge per input edge.
struct CutApproxResult {
  WeightedGraph h;
  std::vector<int> host_ids;  // h.edges()[j] reweights g.edges()[host_ids[j]]
  double tau = 1.0;
  double p = 1.0;
  int scale = 1;
  double weight_rescale = 1.0;  // integerization factor used for tree choice
};

// target_density <= 0 uses the default scale ceil(c_scale * log2(n)^2);
// a positive value picks p so the expected edge count is about
// target_density * m, then derives the scale that justifies that p.
CutApproxResult incremental_cut_sparsifier(const WeightedGraph& g, double target_density,
                                           RngStream rng, const Params& params = {});

// Cut-sparsify first, then build the low-stretch tree on the smaller graph;
// the returned tree carries the original weights of g.
SpanningTree fast_low_stretch_tree(const WeightedGraph& g, RngStream rng,
                                   const Params& params = {});

}  // namespace resparse
