#pragma once

#include "resparse/graph.hpp"
#include "resparse/params.hpp"
#include "resparse/rng.hpp"

namespace resparse {

// Importance-sampling plan over the edges of a host graph. p_prime holds
// one positive score per edge; the sampler draws
//   q = ceil(C_s * t_eff * ln(t_eff) / eps^2),   t_eff = max(sum p', 2)
// edges with replacement from p'_e / t and reweights so the expectation is
// the host Laplacian. saturated flags plans whose q already exceeds
// m * (c_qcap + ln m); callers that only care about size pass the host
// through instead of sampling.
struct SamplePlan {
  Vector p_prime;
  double total = 0.0;  // t
  int draws = 0;       // q
  double eps = 0.0;
  bool saturated = false;
};

SamplePlan make_plan(const WeightedGraph& g, const Vector& p_prime, double eps,
                     const Params& params = {});

// Executes exactly plan.draws draws (saturation is advisory). A drawn edge
// with count c gets weight c * w_e * t / (p'_e * q); duplicates of the same
// host edge merge into the count.
WeightedGraph sample_edges(const WeightedGraph& g, const SamplePlan& plan, RngStream rng);

// plan + sample, honoring saturation by returning the host unchanged.
WeightedGraph oversample_sparsify(const WeightedGraph& g, const Vector& p_prime, double eps,
                                  RngStream rng, const Params& params = {});

}  // namespace resparse
