#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "resparse/graph.hpp"
#include "resparse/params.hpp"
#include "resparse/rng.hpp"
#include "resparse/tree.hpp"

namespace resparse {

struct StageRecord {
  std::string name;
  double kappa = 0.0;  // 0 when the stage has no kappa
  double eps = 0.0;    // 0 when the stage is deterministic
  int edges_in = 0;
  int edges_out = 0;
  double millis = 0.0;
  double score_total = 0.0;  // sum of sampling scores (0 for non-sampling stages)
  bool saturated = false;    // stage passed its input through unchanged
  bool compounds = false;    // stage's (1 + eps) multiplies into the output guarantee
};

struct SparsifierResult {
  WeightedGraph g_tilde;
  double epsilon = 0.0;
  std::vector<StageRecord> stages;
  std::uint64_t seed = 0;
  int edge_count() const { return g_tilde.num_edges(); }
  // Product of the (1+eps_i) factors of the stages that compound into the
  // final guarantee; pipelines keep this at most 1 + epsilon.
  double epsilon_product() const;
};

// H = G + kappa*S (the S-edges' weights scaled by 1+kappa) and a graph I
// with H <= I <= 2H (spectrally, with high probability). S-edges are kept
// deterministically; off-S edges are importance-sampled with scores
// st_S(e)/kappa at fixed eps 1/3, and the result is scaled by 3/2. When the
// sampler would not shrink anything the stage passes H through unchanged.
struct IncrementalResult {
  WeightedGraph h;
  WeightedGraph sparsifier;
  double kappa = 0.0;
  int draws = 0;
  double score_total = 0.0;  // t over the off-S edges
  bool saturated = false;
};

IncrementalResult incremental_spectral_sparsifier(const WeightedGraph& g,
                                                  const std::vector<int>& s_edge_ids,
                                                  const Vector& stretches, double kappa,
                                                  RngStream rng, const Params& params = {});

// Sparse subgraph of an unweighted graph whose shortest paths stretch each
// dropped edge by at most stretch_bound hops.
struct SpannerResult {
  WeightedGraph s;
  std::vector<int> edge_ids;  // ids into the host graph, ascending
  int stretch_bound = 1;      // 2k - 1 with k = ceil(log2 n)
};

SpannerResult build_spanner(const WeightedGraph& g, RngStream rng, const Params& params = {});

// Samples the edges of h with scores 4 * w_e * R^T(e), T a low-stretch tree
// of the crude approximation: crude must satisfy B <= crude <= 4B for some
// B with B <= h <= kappa*B (kappa is recorded, not used in the scores).
WeightedGraph leverage(const WeightedGraph& h, const WeightedGraph& crude, double kappa,
                       double eps, RngStream rng, const Params& params = {},
                       StageRecord* record = nullptr);

SparsifierResult sparsify_general(const WeightedGraph& g, double eps, std::uint64_t seed,
                                  const Params& params = {});
SparsifierResult sparsify_spine_heavy(const WeightedGraph& g, double eps, std::uint64_t seed,
                                      const Params& params = {});
SparsifierResult sparsify_linear(const WeightedGraph& g, double eps, std::uint64_t seed,
                                 const Params& params = {});
SparsifierResult sparsify_unweighted(const WeightedGraph& g, double eps, std::uint64_t seed,
                                     const Params& params = {});
SparsifierResult sparsify_chain(const WeightedGraph& g, double eps, std::uint64_t seed,
                                const Params& params = {});

// Dispatch by algorithm name: general, spine-heavy, linear, unweighted, chain.
SparsifierResult sparsify(const WeightedGraph& g, const std::string& algo, double eps,
                          std::uint64_t seed, const Params& params = {});

}  // namespace resparse
