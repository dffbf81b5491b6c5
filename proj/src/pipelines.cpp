#include "resparse/pipelines.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <utility>

#include "resparse/errors.hpp"
#include "resparse/lst.hpp"
#include "resparse/resistance.hpp"
#include "resparse/sampler.hpp"
#include "resparse/solver.hpp"

namespace resparse {

namespace {

class Stopwatch {
 public:
  double ms() const {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0_)
        .count();
  }

 private:
  std::chrono::steady_clock::time_point t0_ = std::chrono::steady_clock::now();
};

void check_eps(double eps) {
  if (!(eps > 0.0) || !(eps < 1.0)) {
    throw ConfigError("eps must lie in (0, 1)");
  }
}

void check_connected(const WeightedGraph& g) {
  if (g.num_vertices() == 0) throw ConfigError("empty graph");
  if (!is_connected(g)) throw Disconnected("input graph is not connected");
}

WeightedGraph scale_graph(const WeightedGraph& g, double c) {
  EdgeVector w(g.num_edges());
  for (int e = 0; e < g.num_edges(); ++e) w[e] = g.edge(e).w * c;
  return g.with_weights(w);
}

std::vector<int> tree_edge_ids(const SpanningTree& t) {
  std::vector<int> ids;
  ids.reserve(t.num_vertices() > 0 ? t.num_vertices() - 1 : 0);
  for (int v = 0; v < t.num_vertices(); ++v) {
    if (v != t.root) ids.push_back(t.host_edge[v]);
  }
  std::sort(ids.begin(), ids.end());
  return ids;
}

double kappa_polylog(int n, double coeff, int power) {
  double lg = std::log2(static_cast<double>(std::max(n, 2)));
  return std::max(1.0, std::ceil(coeff * std::pow(lg, power)));
}

// One sampling pass of h with externally supplied scores, recording the
// stage. Honors saturation by passing h through.
WeightedGraph sample_stage(const WeightedGraph& h, const Vector& p_prime, double eps,
                           RngStream rng, const Params& params, const char* name, double kappa,
                           bool compounds, std::vector<StageRecord>& stages) {
  Stopwatch sw;
  SamplePlan plan = make_plan(h, p_prime, eps, params);
  WeightedGraph out = plan.saturated ? h : sample_edges(h, plan, rng);
  StageRecord rec;
  rec.name = name;
  rec.kappa = kappa;
  rec.eps = eps;
  rec.edges_in = h.num_edges();
  rec.edges_out = out.num_edges();
  rec.score_total = plan.total;
  rec.saturated = plan.saturated;
  rec.compounds = compounds;
  rec.millis = sw.ms();
  stages.push_back(std::move(rec));
  return out;
}

// Effective-resistance scores for the edges of g, estimated on `host`
// (which must share g's vertex set) through a prepared solver and a
// sketched embedding. The returned scores already divide out the lower
// edge of the estimation window, so p'_e >= w_e * R^host(e).
Vector sketched_scores(const WeightedGraph& g, const Solver& solver, double eps_jl,
                       double window_lo, RngStream rng, const Params& params) {
  Vector rhat = sketch_pair_resistances(solver, edge_pairs(g), eps_jl, rng, params);
  Vector p(g.num_edges());
  for (int e = 0; e < g.num_edges(); ++e) p[e] = g.edge(e).w * rhat[e] / window_lo;
  return p;
}

// Shared body of sparsify_general so other pipelines can run it on
// intermediate graphs under their own rng streams. compounds marks whether
// the sampling error feeds the caller's final guarantee.
WeightedGraph general_core(const WeightedGraph& g, double eps, RngStream rng,
                           const Params& params, std::vector<StageRecord>& stages,
                           const char* label, bool compounds) {
  Stopwatch sw;
  double delta = eps * params.delta_frac;
  double eps_jl = eps * params.jl_budget_frac;
  Solver solver = Solver::prepare(g, delta, SolverMethod::PcgTree, rng.substream("solver"), params);
  double lo = (1.0 - eps_jl) * (1.0 - delta) * (1.0 - delta);
  Vector p = sketched_scores(g, solver, eps_jl, lo, rng.substream("sketch"), params);
  StageRecord est;
  est.name = std::string(label) + "-scores";
  est.edges_in = g.num_edges();
  est.edges_out = g.num_edges();
  est.millis = sw.ms();
  stages.push_back(std::move(est));
  return sample_stage(g, p, eps, rng.substream("sample"), params, label, 0.0, compounds, stages);
}

// Spine-heavy sparsification: boost a low-stretch tree until the average
// off-tree stretch is O(log n), estimate resistances in the boosted graph
// with fixed precision, and oversample the original edges. Fixed-precision
// windows: solver delta 1/16, sketch eps 1/4, so the estimate sits within
// (1 +- 1/2) of R^H and dividing by 1/2 keeps p' >= kappa * w * R^H
// >= w * R^G.
WeightedGraph spine_heavy_core(const WeightedGraph& g, double eps, RngStream rng,
                               const Params& params, std::vector<StageRecord>& stages,
                               bool compounds) {
  Stopwatch sw;
  int n = g.num_vertices();
  int m = g.num_edges();
  SpanningTree t = low_stretch_tree(g, rng.substream("lst"), params);
  EdgeVector st = compute_stretches(g, t);
  double st_sum = 0.0;
  for (double s : st) st_sum += s;
  double lg = std::log2(static_cast<double>(std::max(n, 2)));
  double kappa = std::max(1.0, std::ceil(params.c_spine * st_sum * lg / std::max(m, 1)));

  WeightedGraph h = scale_spine(g, t, kappa);
  std::vector<int> tid = tree_edge_ids(t);
  SpanningTree th = SpanningTree::from_edge_ids(h, tid, t.root);

  const double delta = 1.0 / 16.0;
  const double eps_jl = 0.25;
  // (1 +- 1/4)(1 +- 1/16)^2 c [1/2, 3/2]
  const double est_lo = 0.5;
  Solver solver = Solver::prepare_with_tree(h, th, delta, SolverMethod::PcgTree, params);
  Vector rhat = sketch_pair_resistances(solver, edge_pairs(g), eps_jl, rng.substream("sketch"),
                                        params);
  Vector p(m);
  for (int e = 0; e < m; ++e) p[e] = kappa * g.edge(e).w * rhat[e] / est_lo;

  StageRecord est;
  est.name = "spine-scores";
  est.kappa = kappa;
  est.edges_in = m;
  est.edges_out = m;
  est.millis = sw.ms();
  stages.push_back(std::move(est));

  if (params.spine_resparsify != 0) {
    WeightedGraph mid = sample_stage(g, p, eps / 2.0, rng.substream("sample"), params,
                                     "spine-sample", kappa, compounds, stages);
    return general_core(mid, eps / 3.0, rng.substream("resparsify"), params, stages,
                        "spine-resparsify", compounds);
  }
  return sample_stage(g, p, eps, rng.substream("sample"), params, "spine-sample", kappa,
                      compounds, stages);
}

// The shared tail of the linear-work pipelines: boost the skeleton by
// kappa, shrink the boosted graph with the self-contained spine-heavy
// routine, rescale so it brackets a graph B with B <= g <= (1+kappa) B
// from below within a factor 4, and take leverage scores against g.
SparsifierResult skeleton_finish(const WeightedGraph& g, const std::vector<int>& skeleton_ids,
                                 const Vector& stretches, double kappa, double eps,
                                 RngStream rng, const Params& params,
                                 std::vector<StageRecord> stages, std::uint64_t seed) {
  SparsifierResult result;
  result.epsilon = eps;
  result.seed = seed;

  Stopwatch sw_inc;
  IncrementalResult inc = incremental_spectral_sparsifier(g, skeleton_ids, stretches, kappa,
                                                          rng.substream("incremental"), params);
  StageRecord irec;
  irec.name = "incremental";
  irec.kappa = kappa;
  irec.eps = 1.0 / 3.0;
  irec.edges_in = g.num_edges();
  irec.edges_out = inc.sparsifier.num_edges();
  irec.saturated = inc.saturated;
  irec.millis = sw_inc.ms();
  stages.push_back(std::move(irec));

  // I sits in [H, 2H]; spine-heavy at eps 1/3 keeps S in [(2/3) I, (4/3) I]
  // so S is in [(2/3) H, (8/3) H]. With B = H / (1 + kappa) (so B <= g <=
  // (1 + kappa) B), scaling S by 3 / (2 (1 + kappa)) lands in [B, 4B].
  WeightedGraph s_raw = spine_heavy_core(inc.sparsifier, 1.0 / 3.0, rng.substream("spine"),
                                         params, stages, false);
  WeightedGraph crude = scale_graph(s_raw, 3.0 / (2.0 * (1.0 + kappa)));

  StageRecord lrec;
  result.g_tilde = leverage(g, crude, 1.0 + kappa, eps, rng.substream("leverage"), params, &lrec);
  stages.push_back(std::move(lrec));
  result.stages = std::move(stages);
  return result;
}

StageRecord make_record(const char* name, int edges_in, int edges_out, double millis) {
  StageRecord rec;
  rec.name = name;
  rec.edges_in = edges_in;
  rec.edges_out = edges_out;
  rec.millis = millis;
  return rec;
}

}  // namespace

double SparsifierResult::epsilon_product() const {
  double prod = 1.0;
  for (const StageRecord& s : stages) {
    if (s.compounds && s.eps > 0.0) prod *= 1.0 + s.eps;
  }
  return prod;
}

IncrementalResult incremental_spectral_sparsifier(const WeightedGraph& g,
                                                  const std::vector<int>& s_edge_ids,
                                                  const Vector& stretches, double kappa,
                                                  RngStream rng, const Params& params) {
  int n = g.num_vertices();
  int m = g.num_edges();
  if (!(kappa > 0.0)) throw ConfigError("kappa must be positive");
  if (static_cast<int>(stretches.size()) != m) {
    throw DimensionMismatch("stretch vector length does not match edge count");
  }
  std::vector<char> in_s(m, 0);
  int prev = -1;
  for (int id : s_edge_ids) {
    if (id < 0 || id >= m) throw SubgraphMismatch("edge id out of range");
    if (id <= prev) throw SubgraphMismatch("edge ids must be strictly ascending");
    in_s[id] = 1;
    prev = id;
  }

  IncrementalResult out;
  out.kappa = kappa;

  EdgeVector hw(m);
  for (int e = 0; e < m; ++e) hw[e] = g.edge(e).w * (in_s[e] ? 1.0 + kappa : 1.0);
  out.h = g.with_weights(hw);

  std::vector<int> off_ids;
  off_ids.reserve(m - static_cast<int>(s_edge_ids.size()));
  for (int e = 0; e < m; ++e) {
    if (!in_s[e]) off_ids.push_back(e);
  }
  if (off_ids.empty()) {
    // Nothing to sample: H is its own sparsifier (H <= H <= 2H).
    out.sparsifier = out.h;
    out.saturated = true;
    return out;
  }

  WeightedGraph sub = g.induced_edges(off_ids);
  Vector scores(off_ids.size());
  for (std::size_t j = 0; j < off_ids.size(); ++j) scores[j] = stretches[off_ids[j]] / kappa;

  const double eps = 1.0 / 3.0;
  SamplePlan plan = make_plan(sub, scores, eps, params);
  out.score_total = plan.total;
  if (plan.saturated) {
    out.sparsifier = out.h;
    out.saturated = true;
    return out;
  }
  WeightedGraph sampled = sample_edges(sub, plan, rng.substream("incremental"));
  out.draws = plan.draws;

  // Scale everything by 3/2: (1 - 1/3) * 3/2 = 1 and (1 + 1/3) * 3/2 = 2,
  // so H <= I <= 2H exactly at the concentration edges.
  std::vector<Edge> ie;
  ie.reserve(s_edge_ids.size() + sampled.edges().size());
  for (int id : s_edge_ids) {
    const Edge& ed = g.edge(id);
    ie.push_back({ed.u, ed.v, 1.5 * (1.0 + kappa) * ed.w});
  }
  for (const Edge& ed : sampled.edges()) ie.push_back({ed.u, ed.v, 1.5 * ed.w});
  out.sparsifier = build_graph(n, ie);
  return out;
}

SpannerResult build_spanner(const WeightedGraph& g, RngStream rng, const Params& params) {
  (void)params;
  if (!g.is_unweighted()) throw NotUnweighted("spanner construction expects unit weights");
  check_connected(g);
  int n = g.num_vertices();
  int m = g.num_edges();

  SpannerResult out;
  int k = std::max(1, static_cast<int>(std::ceil(std::log2(static_cast<double>(std::max(n, 2))))));
  out.stretch_bound = 2 * k - 1;

  RngStream rs = rng.substream("spanner");
  std::vector<char> picked(m, 0);
  // cluster[v] = id of the cluster center v currently belongs to, -1 once v
  // has fallen out of the clustering.
  std::vector<int> cluster(n);
  for (int v = 0; v < n; ++v) cluster[v] = v;
  std::vector<int> live(m);
  for (int e = 0; e < m; ++e) live[e] = e;

  // Per-vertex lists of live edge ids, rebuilt each phase.
  std::vector<std::vector<int>> adj(n);
  // Scratch for the per-cluster lowest-id edge scan.
  std::vector<int> best_edge(n, -1);

  auto rebuild_adjacency = [&]() {
    for (auto& a : adj) a.clear();
    for (int e : live) {
      adj[g.edge(e).u].push_back(e);
      adj[g.edge(e).v].push_back(e);
    }
  };

  auto add_per_cluster_edges = [&](int v) {
    // One lowest-id live edge towards every distinct neighboring cluster.
    std::vector<int> touched;
    for (int e : adj[v]) {
      int u = g.other_endpoint(e, v);
      int c = cluster[u];
      if (c < 0 || c == cluster[v]) continue;
      if (best_edge[c] < 0) {
        touched.push_back(c);
        best_edge[c] = e;
      } else if (e < best_edge[c]) {
        best_edge[c] = e;
      }
    }
    for (int c : touched) {
      picked[best_edge[c]] = 1;
      best_edge[c] = -1;
    }
  };

  std::vector<char> sampled(n, 0);
  for (int phase = 1; phase < k; ++phase) {
    rebuild_adjacency();
    // Mark surviving centers in ascending order so the coin sequence is
    // reproducible.
    std::vector<int> centers;
    for (int v = 0; v < n; ++v) {
      if (cluster[v] >= 0) centers.push_back(cluster[v]);
    }
    std::sort(centers.begin(), centers.end());
    centers.erase(std::unique(centers.begin(), centers.end()), centers.end());
    double keep_prob = std::pow(static_cast<double>(n), -1.0 / k);
    std::fill(sampled.begin(), sampled.end(), 0);
    for (int c : centers) sampled[c] = rs.next_bernoulli(keep_prob) ? 1 : 0;

    std::vector<int> next_cluster = cluster;
    for (int v = 0; v < n; ++v) {
      if (cluster[v] < 0 || sampled[cluster[v]]) continue;
      // v's cluster was not sampled: join the first sampled neighboring
      // cluster through the lowest-id edge, else leave the clustering and
      // connect once to every neighboring cluster.
      int join_edge = -1;
      int join_center = -1;
      for (int e : adj[v]) {
        int u = g.other_endpoint(e, v);
        int c = cluster[u];
        if (c < 0 || !sampled[c]) continue;
        if (join_edge < 0 || e < join_edge) {
          join_edge = e;
          join_center = c;
        }
      }
      if (join_edge >= 0) {
        picked[join_edge] = 1;
        next_cluster[v] = join_center;
      } else {
        add_per_cluster_edges(v);
        next_cluster[v] = -1;
      }
    }
    cluster.swap(next_cluster);

    std::vector<int> still;
    for (int e : live) {
      int cu = cluster[g.edge(e).u];
      int cv = cluster[g.edge(e).v];
      if (cu >= 0 && cv >= 0 && cu != cv) still.push_back(e);
    }
    live.swap(still);
  }

  rebuild_adjacency();
  for (int v = 0; v < n; ++v) {
    if (cluster[v] >= 0) add_per_cluster_edges(v);
  }

  for (int e = 0; e < m; ++e) {
    if (picked[e]) out.edge_ids.push_back(e);
  }
  std::vector<Edge> se;
  se.reserve(out.edge_ids.size());
  for (int e : out.edge_ids) se.push_back(g.edge(e));
  out.s = build_graph(n, se);
  return out;
}

WeightedGraph leverage(const WeightedGraph& h, const WeightedGraph& crude, double kappa,
                       double eps, RngStream rng, const Params& params, StageRecord* record) {
  if (h.num_vertices() != crude.num_vertices()) {
    throw VertexSetMismatch("target and crude approximation disagree on vertex count");
  }
  check_eps(eps);
  Stopwatch sw;
  SpanningTree t = low_stretch_tree(crude, rng.substream("tree"), params);
  Vector rt = tree_resistances(t, edge_pairs(h));
  Vector p(h.num_edges());
  for (int e = 0; e < h.num_edges(); ++e) p[e] = 4.0 * h.edge(e).w * rt[e];

  SamplePlan plan = make_plan(h, p, eps, params);
  WeightedGraph out = plan.saturated ? h : sample_edges(h, plan, rng.substream("sample"));
  if (record) {
    record->name = "leverage";
    record->kappa = kappa;
    record->eps = eps;
    record->edges_in = h.num_edges();
    record->edges_out = out.num_edges();
    record->score_total = plan.total;
    record->saturated = plan.saturated;
    record->compounds = true;
    record->millis = sw.ms();
  }
  return out;
}

SparsifierResult sparsify_general(const WeightedGraph& g, double eps, std::uint64_t seed,
                                  const Params& params) {
  check_eps(eps);
  check_connected(g);
  SparsifierResult result;
  result.epsilon = eps;
  result.seed = seed;
  RngStream rng(seed, "sparsify-general");
  result.g_tilde = general_core(g, eps, rng, params, result.stages, "general", true);
  return result;
}

SparsifierResult sparsify_spine_heavy(const WeightedGraph& g, double eps, std::uint64_t seed,
                                      const Params& params) {
  check_eps(eps);
  check_connected(g);
  SparsifierResult result;
  result.epsilon = eps;
  result.seed = seed;
  RngStream rng(seed, "sparsify-spine-heavy");
  result.g_tilde = spine_heavy_core(g, eps, rng, params, result.stages, true);
  return result;
}

SparsifierResult sparsify_linear(const WeightedGraph& g, double eps, std::uint64_t seed,
                                 const Params& params) {
  check_eps(eps);
  check_connected(g);
  SparsifierResult result;
  result.epsilon = eps;
  result.seed = seed;
  if (g.num_edges() == g.num_vertices() - 1) {
    // A spanning tree has no redundancy to remove.
    result.g_tilde = g;
    StageRecord rec = make_record("tree-early-exit", g.num_edges(), g.num_edges(), 0.0);
    rec.saturated = true;
    result.stages.push_back(std::move(rec));
    return result;
  }
  RngStream rng(seed, "sparsify-linear");

  Stopwatch sw;
  SpanningTree t = fast_low_stretch_tree(g, rng.substream("fast-lst"), params);
  EdgeVector st = compute_stretches(g, t);
  result.stages.push_back(make_record("fast-lst", g.num_edges(), t.num_vertices() - 1, sw.ms()));

  double kappa = kappa_polylog(g.num_vertices(), params.c_kappa1, 5);
  return skeleton_finish(g, tree_edge_ids(t), st, kappa, eps, rng, params,
                         std::move(result.stages), seed);
}

SparsifierResult sparsify_unweighted(const WeightedGraph& g, double eps, std::uint64_t seed,
                                     const Params& params) {
  check_eps(eps);
  if (!g.is_unweighted()) throw NotUnweighted("pipeline expects unit weights");
  check_connected(g);
  SparsifierResult result;
  result.epsilon = eps;
  result.seed = seed;
  if (g.num_edges() == g.num_vertices() - 1) {
    result.g_tilde = g;
    StageRecord rec = make_record("tree-early-exit", g.num_edges(), g.num_edges(), 0.0);
    rec.saturated = true;
    result.stages.push_back(std::move(rec));
    return result;
  }
  RngStream rng(seed, "sparsify-unweighted");

  Stopwatch sw;
  SpannerResult sp = build_spanner(g, rng.substream("spanner"), params);
  StageRecord srec = make_record("spanner", g.num_edges(), sp.s.num_edges(), sw.ms());
  srec.kappa = sp.stretch_bound;
  result.stages.push_back(std::move(srec));

  // Every off-spanner edge closes a cycle of <= stretch_bound spanner hops,
  // so its stretch into the spanner is at most stretch_bound.
  Vector st(g.num_edges(), static_cast<double>(sp.stretch_bound));
  double kappa = kappa_polylog(g.num_vertices(), params.c_kappa2, 3);
  return skeleton_finish(g, sp.edge_ids, st, kappa, eps, rng, params, std::move(result.stages),
                         seed);
}

SparsifierResult sparsify_chain(const WeightedGraph& g, double eps, std::uint64_t seed,
                                const Params& params) {
  check_eps(eps);
  check_connected(g);
  SparsifierResult result;
  result.epsilon = eps;
  result.seed = seed;
  RngStream rng(seed, "sparsify-chain");

  Stopwatch sw;
  SpanningTree t = fast_low_stretch_tree(g, rng.substream("fast-lst"), params);
  EdgeVector st = compute_stretches(g, t);
  result.stages.push_back(make_record("fast-lst", g.num_edges(), t.num_vertices() - 1, sw.ms()));

  double kappa = kappa_polylog(g.num_vertices(), params.c_kappa1, 5);
  std::vector<int> tid = tree_edge_ids(t);

  // Base: I covers H_0 = G + kappa*T within [H_0, 2H_0]; one fixed-eps
  // general pass and a 3/4 rescale bracket H_0 within [H_0/2, 2H_0].
  Stopwatch sw_inc;
  IncrementalResult inc = incremental_spectral_sparsifier(g, tid, st, kappa,
                                                          rng.substream("incremental"), params);
  StageRecord irec;
  irec.name = "incremental";
  irec.kappa = kappa;
  irec.eps = 1.0 / 3.0;
  irec.edges_in = g.num_edges();
  irec.edges_out = inc.sparsifier.num_edges();
  irec.saturated = inc.saturated;
  irec.millis = sw_inc.ms();
  result.stages.push_back(std::move(irec));

  WeightedGraph s0 = general_core(inc.sparsifier, 1.0 / 3.0, rng.substream("base"), params,
                                  result.stages, "chain-base", false);
  WeightedGraph approx = scale_graph(s0, 0.75);

  // Halve the boost until it is at most 2, re-sparsifying against the new
  // target each time. Invariant: approx sits in [H/2, 2H] for the current
  // H = G + boost*T. A leverage step at kappa 2, eps 1/2 returns a graph in
  // [H'/2, (3/2) H'] for the halved H', which re-establishes the invariant.
  double boost = kappa;
  int step = 0;
  while (boost > 2.0) {
    boost /= 2.0;
    EdgeVector hw(g.num_edges());
    for (int e = 0; e < g.num_edges(); ++e) hw[e] = g.edge(e).w;
    for (int id : tid) hw[id] *= 1.0 + boost;
    WeightedGraph h_next = g.with_weights(hw);

    StageRecord rec;
    approx = leverage(h_next, approx, 2.0, 0.5, rng.substream("step").child(step), params, &rec);
    rec.name = "chain-step";
    rec.kappa = boost;
    rec.compounds = false;  // steps re-target a fresh H, they do not chain
    result.stages.push_back(std::move(rec));
    ++step;
  }

  // Final target is G itself. With boost <= 2 we have G <= H <= 3G, so
  // B = H/3 satisfies B <= G <= 3B and (2/3)*approx lands in [B, 4B].
  StageRecord frec;
  result.g_tilde = leverage(g, scale_graph(approx, 2.0 / 3.0), 3.0, eps,
                            rng.substream("final"), params, &frec);
  frec.name = "chain-final";
  result.stages.push_back(std::move(frec));
  return result;
}

SparsifierResult sparsify(const WeightedGraph& g, const std::string& algo, double eps,
                          std::uint64_t seed, const Params& params) {
  if (algo == "general") return sparsify_general(g, eps, seed, params);
  if (algo == "spine" || algo == "spine-heavy") return sparsify_spine_heavy(g, eps, seed, params);
  if (algo == "linear") return sparsify_linear(g, eps, seed, params);
  if (algo == "unweighted") return sparsify_unweighted(g, eps, seed, params);
  if (algo == "chain") return sparsify_chain(g, eps, seed, params);
  throw ConfigError("unknown sparsifier: " + algo);
}

}  // namespace resparse
