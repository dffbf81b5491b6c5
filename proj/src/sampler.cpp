#include "resparse/sampler.hpp"

#include <cmath>
#include <cstdint>
#include <vector>

#include "resparse/errors.hpp"

namespace resparse {

SamplePlan make_plan(const WeightedGraph& g, const Vector& p_prime, double eps,
                     const Params& params) {
  const int m = g.num_edges();
  if (static_cast<int>(p_prime.size()) != m) {
    throw DimensionMismatch("sampling scores must match the edge count");
  }
  if (!(eps > 0.0) || eps >= 1.0) throw ConfigError("sampling eps must lie in (0,1)");
  SamplePlan plan;
  plan.p_prime = p_prime;
  plan.eps = eps;
  double t = 0.0;
  for (int e = 0; e < m; ++e) {
    if (!(p_prime[e] > 0.0)) throw NonPositiveProbability("sampling score must be positive");
    t += p_prime[e];
  }
  plan.total = t;
  double t_eff = std::max(t, 2.0);
  double q = std::ceil(params.C_s * t_eff * std::log(t_eff) / (eps * eps));
  plan.draws = static_cast<int>(std::min(q, 2.0e9));
  double cap = static_cast<double>(std::max(m, 1)) *
               (params.c_qcap + std::log(static_cast<double>(std::max(m, 2))));
  plan.saturated = q >= cap;
  return plan;
}

WeightedGraph sample_edges(const WeightedGraph& g, const SamplePlan& plan, RngStream rng) {
  const int m = g.num_edges();
  if (static_cast<int>(plan.p_prime.size()) != m) {
    throw DimensionMismatch("plan does not match the host graph");
  }
  if (m == 0) return build_graph(g.num_vertices(), {});

  // Alias table (Vose) over p'_e / t.
  std::vector<double> prob(m);
  std::vector<int> alias(m, 0);
  {
    std::vector<double> scaled(m);
    for (int e = 0; e < m; ++e) scaled[e] = plan.p_prime[e] * m / plan.total;
    std::vector<int> small, large;
    small.reserve(m);
    large.reserve(m);
    for (int e = 0; e < m; ++e) (scaled[e] < 1.0 ? small : large).push_back(e);
    while (!small.empty() && !large.empty()) {
      int s = small.back();
      small.pop_back();
      int l = large.back();
      prob[s] = scaled[s];
      alias[s] = l;
      scaled[l] += scaled[s] - 1.0;
      if (scaled[l] < 1.0) {
        large.pop_back();
        small.push_back(l);
      }
    }
    for (int e : large) prob[e] = 1.0;
    for (int e : small) prob[e] = 1.0;  // rounding residue
  }

  RngStream r = rng.substream("sample");
  std::vector<std::int64_t> counts(m, 0);
  const int q = plan.draws;
  for (int d = 0; d < q; ++d) {
    int e = r.next_index(m);
    if (r.next_double() >= prob[e]) e = alias[e];
    ++counts[e];
  }

  std::vector<Edge> kept;
  for (int e = 0; e < m; ++e) {
    if (counts[e] == 0) continue;
    const Edge& he = g.edges()[e];
    double w = static_cast<double>(counts[e]) * he.w * plan.total /
               (plan.p_prime[e] * static_cast<double>(q));
    kept.push_back(Edge{he.u, he.v, w});
  }
  return build_graph(g.num_vertices(), kept);
}

WeightedGraph oversample_sparsify(const WeightedGraph& g, const Vector& p_prime, double eps,
                                  RngStream rng, const Params& params) {
  SamplePlan plan = make_plan(g, p_prime, eps, params);
  if (plan.saturated) return g;
  return sample_edges(g, plan, rng);
}

}  // namespace resparse
