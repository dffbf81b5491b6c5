#include "resparse/eigen.hpp"

#include <cmath>
#include <functional>

#include "resparse/errors.hpp"
#include "resparse/pipelines.hpp"

namespace resparse {

namespace {

double dot(const Vector& a, const Vector& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

// Removes the null_dir component and rescales to unit norm. Returns false
// when x collapses onto null_dir (caller restarts with a fresh vector).
bool project_normalize(Vector& x, const Vector& null_dir) {
  double c = dot(x, null_dir) / dot(null_dir, null_dir);
  for (std::size_t i = 0; i < x.size(); ++i) x[i] -= c * null_dir[i];
  double nrm = std::sqrt(dot(x, x));
  if (!(nrm > 1e-14)) return false;
  for (double& v : x) v /= nrm;
  return true;
}

EigenResult run_inverse_power(int n, double eps,
                              const std::function<Vector(const Vector&)>& solve_op,
                              const std::function<double(const Vector&)>& rayleigh_of,
                              const Vector& null_dir, RngStream rng, const Params& params) {
  if (n < 2) throw ConfigError("eigenpair needs at least two vertices");

  Vector x(n);
  for (int attempt = 0; attempt < 16; ++attempt) {
    for (int v = 0; v < n; ++v) x[v] = rng.next_gaussian();
    if (project_normalize(x, null_dir)) break;
  }

  double ln_n = std::log(static_cast<double>(std::max(n, 3)));
  double ln_eps = std::max(1.0, std::log(1.0 / eps));
  int cap = static_cast<int>(std::ceil(params.c_power * ln_n * ln_eps)) + 20;

  EigenResult out;
  out.epsilon = eps;
  double prev = rayleigh_of(x);
  int stable = 0;
  int it = 0;
  while (it < cap) {
    ++it;
    Vector y = solve_op(x);
    if (!project_normalize(y, null_dir)) {
      // Solve collapsed numerically; keep the current iterate.
      break;
    }
    x.swap(y);
    double r = rayleigh_of(x);
    out.rayleigh_trace.push_back(r);
    stable = (std::abs(r - prev) < (eps / 10.0) * std::abs(prev)) ? stable + 1 : 0;
    prev = r;
    if (stable >= 3) break;
  }
  out.vector = std::move(x);
  out.rayleigh = prev;
  out.iterations = it;
  return out;
}

}  // namespace

EigenResult inverse_power(const WeightedGraph& g, double eps, const Solver& solver,
                          RngStream rng, const Params& params) {
  if (!(eps > 0.0) || !(eps < 1.0)) throw ConfigError("eps must lie in (0, 1)");
  if (g.num_vertices() != solver.graph().num_vertices()) {
    throw VertexSetMismatch("solver was prepared on a different vertex set");
  }
  if (!is_connected(g)) throw Disconnected("fiedler pair needs a connected graph");
  Vector ones(g.num_vertices(), 1.0);
  return run_inverse_power(
      g.num_vertices(), eps, [&](const Vector& b) { return solver.solve(b); },
      [&](const Vector& x) { return quadratic_form(g, x); }, ones, rng, params);
}

EigenResult fiedler(const WeightedGraph& g, double eps, std::uint64_t seed,
                    const Params& params) {
  if (!(eps > 0.0) || !(eps < 1.0)) throw ConfigError("eps must lie in (0, 1)");
  if (!is_connected(g)) throw Disconnected("fiedler pair needs a connected graph");
  SparsifierResult sp = sparsify_general(g, eps / 2.0, seed, params);
  Solver solver = Solver::prepare(sp.g_tilde, eps / 10.0, SolverMethod::PcgTree,
                                  RngStream(seed, "fiedler-solver"), params);
  EigenResult out =
      inverse_power(g, eps / 3.0, solver, RngStream(seed, "fiedler-power"), params);
  out.epsilon = eps;
  return out;
}

EigenResult fiedler_normalized(const WeightedGraph& g, double eps, std::uint64_t seed,
                               const Params& params) {
  if (!(eps > 0.0) || !(eps < 1.0)) throw ConfigError("eps must lie in (0, 1)");
  if (!is_connected(g)) throw Disconnected("fiedler pair needs a connected graph");
  const int n = g.num_vertices();
  Vector deg = g.weighted_degrees();
  Vector sqrt_d(n), inv_sqrt_d(n);
  for (int v = 0; v < n; ++v) {
    if (!(deg[v] > 0.0)) throw ZeroDegree("normalized laplacian needs positive degrees");
    sqrt_d[v] = std::sqrt(deg[v]);
    inv_sqrt_d[v] = 1.0 / sqrt_d[v];
  }

  SparsifierResult sp = sparsify_general(g, eps / 2.0, seed, params);
  Solver solver = Solver::prepare(sp.g_tilde, eps / 10.0, SolverMethod::PcgTree,
                                  RngStream(seed, "fiedler-solver"), params);

  // One application of (D^{-1/2} L D^{-1/2})^+ up to a multiple of the
  // kernel direction D^{1/2} 1, which the projection removes.
  auto solve_op = [&](const Vector& b) {
    Vector rhs(n);
    for (int v = 0; v < n; ++v) rhs[v] = sqrt_d[v] * b[v];
    Vector x = solver.solve(rhs);
    for (int v = 0; v < n; ++v) x[v] *= sqrt_d[v];
    return x;
  };
  auto rayleigh_of = [&](const Vector& x) {
    Vector y(n);
    for (int v = 0; v < n; ++v) y[v] = inv_sqrt_d[v] * x[v];
    return quadratic_form(g, y);
  };

  EigenResult out = run_inverse_power(n, eps / 3.0, solve_op, rayleigh_of, sqrt_d,
                                      RngStream(seed, "fiedler-power"), params);
  out.epsilon = eps;
  out.normalized = true;
  return out;
}

}  // namespace resparse
