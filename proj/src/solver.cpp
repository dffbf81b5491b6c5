#include "resparse/solver.hpp"

#include <Eigen/Dense>
#include <Eigen/SparseCholesky>
#include <Eigen/SparseCore>
#include <algorithm>
#include <cmath>
#include <utility>
#include <vector>

#include "resparse/errors.hpp"
#include "resparse/lst.hpp"
#include "resparse/pipelines.hpp"

namespace resparse {

namespace {

// Grounded dense factorizations stay tractable well past this, but the
// dense method exists for exactness checks, not scale.
constexpr int kDenseSolverLimit = 2000;

double vec_dot(const Vector& a, const Vector& b) {
  double s = 0.0;
  for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double vec_norm(const Vector& a) { return std::sqrt(vec_dot(a, a)); }

// Removes the mean; Laplacian solutions and residuals live in 1-perp.
void project_out_ones(Vector& v) {
  if (v.empty()) return;
  double mean = 0.0;
  for (double x : v) mean += x;
  mean /= static_cast<double>(v.size());
  for (double& x : v) x -= mean;
}

// Exact tree solve into out, without the pseudoinverse projection.
// Currents accumulate leaf-to-root (reverse preorder), potentials unwind
// root-to-leaf; the root is pinned at zero.
void tree_solve_raw(const SpanningTree& t, const Vector& b, Vector& out) {
  const int n = static_cast<int>(t.parent.size());
  Vector flow(b);
  for (int i = n - 1; i >= 1; --i) {
    int v = t.order[i];
    flow[t.parent[v]] += flow[v];
  }
  out.assign(n, 0.0);
  for (int i = 1; i < n; ++i) {
    int v = t.order[i];
    out[v] = out[t.parent[v]] + flow[v] / t.parent_weight[v];
  }
}

// Laplacian with the grounded row and column removed; grounding at the last
// vertex keeps indices 0..n-2 unchanged.
Eigen::SparseMatrix<double> grounded_laplacian(const WeightedGraph& g) {
  const int grounded = g.num_vertices() - 1;
  const int n = g.num_vertices();
  std::vector<Eigen::Triplet<double>> trips;
  trips.reserve(static_cast<size_t>(g.num_edges()) * 2 + n);
  Vector diag(n, 0.0);
  for (const Edge& e : g.edges()) {
    diag[e.u] += e.w;
    diag[e.v] += e.w;
    if (e.u != grounded && e.v != grounded) {
      trips.emplace_back(e.u, e.v, -e.w);
      trips.emplace_back(e.v, e.u, -e.w);
    }
  }
  for (int v = 0; v < n; ++v) {
    if (v != grounded) trips.emplace_back(v, v, diag[v]);
  }
  Eigen::SparseMatrix<double> m(n - 1, n - 1);
  m.setFromTriplets(trips.begin(), trips.end());
  return m;
}

}  // namespace

SolverMethod solver_method_from_string(const std::string& name) {
  if (name == "pcg-tree") return SolverMethod::PcgTree;
  if (name == "pcg-incremental") return SolverMethod::PcgIncremental;
  if (name == "dense") return SolverMethod::Dense;
  if (name == "chebyshev") return SolverMethod::ChebyshevTree;
  throw ConfigError("unknown solver method: " + name);
}

std::string solver_method_name(SolverMethod m) {
  switch (m) {
    case SolverMethod::PcgTree: return "pcg-tree";
    case SolverMethod::PcgIncremental: return "pcg-incremental";
    case SolverMethod::Dense: return "dense";
    case SolverMethod::ChebyshevTree: return "chebyshev";
  }
  return "unknown";
}

Vector solve_tree(const SpanningTree& t, const Vector& b, bool* projected) {
  const int n = static_cast<int>(t.parent.size());
  if (static_cast<int>(b.size()) != n) {
    throw DimensionMismatch("rhs length does not match tree vertex count");
  }
  Vector rhs(b);
  double sum = 0.0, amax = 0.0;
  for (double x : rhs) {
    sum += x;
    amax = std::max(amax, std::fabs(x));
  }
  bool did_project = std::fabs(sum) > 1e-12 * (1.0 + amax * n);
  if (projected) *projected = did_project;
  double mean = sum / std::max(1, n);
  for (double& x : rhs) x -= mean;
  Vector x;
  tree_solve_raw(t, rhs, x);
  project_out_ones(x);
  return x;
}

struct Solver::Impl {
  WeightedGraph g;
  SolverMethod method = SolverMethod::PcgTree;
  double delta = 1e-6;
  double theta = 0.5;

  // Tree-preconditioned methods.
  SpanningTree tree;
  bool has_tree = false;
  double stretch_sum = 0.0;

  // Incremental-sparsifier preconditioner.
  std::shared_ptr<Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>>> ldlt;
  WeightedGraph preconditioner_graph;

  // Dense method.
  std::shared_ptr<Eigen::LDLT<Eigen::MatrixXd>> dense;

  double lambda2_est = 1.0;
  int max_iter = 1000;
  int cheb_iters = 0;
  double cheb_lo = 1.0, cheb_hi = 1.0;

  void apply_preconditioner(const Vector& r, Vector& z) const {
    const int n = g.num_vertices();
    if (method == SolverMethod::PcgIncremental) {
      Eigen::VectorXd rg(n - 1);
      for (int i = 0; i + 1 < n; ++i) rg[i] = r[i];
      Eigen::VectorXd zg = ldlt->solve(rg);
      z.assign(n, 0.0);
      for (int i = 0; i + 1 < n; ++i) z[i] = zg[i];
    } else {
      tree_solve_raw(tree, r, z);
    }
    project_out_ones(z);
  }

  // Plain PCG with a crude relative-residual stop; used only inside
  // prepare() to estimate lambda_2, where certification is not needed.
  Vector rough_solve(const Vector& b, double rel_tol, int iters) const {
    const int n = g.num_vertices();
    Vector x(n, 0.0), r(b), z, p, ap(n);
    double bnorm = vec_norm(b);
    if (bnorm == 0.0) return x;
    z.resize(n);
    apply_preconditioner(r, z);
    p = z;
    double rz = vec_dot(r, z);
    for (int k = 0; k < iters; ++k) {
      apply_laplacian(g, p, ap);
      double pap = vec_dot(p, ap);
      if (pap <= 0.0) break;
      double alpha = rz / pap;
      for (int i = 0; i < n; ++i) {
        x[i] += alpha * p[i];
        r[i] -= alpha * ap[i];
      }
      if (vec_norm(r) <= rel_tol * bnorm) break;
      apply_preconditioner(r, z);
      double rz_new = vec_dot(r, z);
      double beta = rz_new / rz;
      rz = rz_new;
      for (int i = 0; i < n; ++i) p[i] = z[i] + beta * p[i];
    }
    project_out_ones(x);
    return x;
  }

  // Inverse power iteration with rough inner solves. Any Rayleigh quotient
  // over 1-perp upper-bounds lambda_2, so theta * estimate is the usable
  // lower bound in the stopping rule.
  void estimate_lambda2(RngStream rng) {
    const int n = g.num_vertices();
    if (n < 2) {
      lambda2_est = 1.0;
      return;
    }
    Vector x(n);
    for (int i = 0; i < n; ++i) x[i] = rng.next_gaussian();
    project_out_ones(x);
    double nrm = vec_norm(x);
    if (nrm == 0.0) {
      x[0] = 1.0;
      x[n - 1] = -1.0;
      nrm = std::sqrt(2.0);
    }
    for (double& v : x) v /= nrm;
    for (int round = 0; round < 8; ++round) {
      Vector y = rough_solve(x, 0.2, 400);
      project_out_ones(y);
      double yn = vec_norm(y);
      if (yn == 0.0) break;
      for (double& v : y) v /= yn;
      x = std::move(y);
    }
    Vector lx(n);
    apply_laplacian(g, x, lx);
    double xx = vec_dot(x, x);
    lambda2_est = xx > 0.0 ? vec_dot(x, lx) / xx : 1.0;
  }
};

Solver Solver::prepare(const WeightedGraph& g, double delta, SolverMethod method,
                       RngStream rng, const Params& params) {
  if (!(delta > 0.0) || delta >= 1.0) throw ConfigError("solver delta must lie in (0,1)");
  if (!is_connected(g)) throw Disconnected("solver requires a connected graph");
  auto impl = std::make_shared<Impl>();
  impl->g = g;
  impl->method = method;
  impl->delta = delta;
  impl->theta = params.theta;
  const int n = g.num_vertices();

  switch (method) {
    case SolverMethod::PcgTree:
    case SolverMethod::ChebyshevTree: {
      impl->tree = low_stretch_tree(g, rng.child(1), params);
      impl->has_tree = true;
      break;
    }
    case SolverMethod::PcgIncremental: {
      SpanningTree t = low_stretch_tree(g, rng.child(1), params);
      Vector st = compute_stretches(g, t);
      double kappa = params.c_pc_kappa;
      if (kappa <= 0.0) {
        double lg = std::log2(std::max(4.0, static_cast<double>(n)));
        kappa = std::max(4.0, lg * lg);
      }
      std::vector<int> tree_ids;
      tree_ids.reserve(std::max(0, n - 1));
      for (int v = 0; v < n; ++v) {
        if (v != t.root) tree_ids.push_back(t.host_edge[v]);
      }
      std::sort(tree_ids.begin(), tree_ids.end());
      IncrementalResult inc =
          incremental_spectral_sparsifier(g, tree_ids, st, kappa, rng.child(2), params);
      impl->preconditioner_graph = inc.sparsifier;
      auto ldlt = std::make_shared<Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>>>();
      ldlt->compute(grounded_laplacian(inc.sparsifier));
      if (ldlt->info() != Eigen::Success) {
        throw Error("factorization of the incremental preconditioner failed");
      }
      impl->ldlt = std::move(ldlt);
      // L <= L_H <= (1+kappa) L and L_H <= 2 L_I within the sparsifier
      // guarantee, so the preconditioned condition number is O(kappa).
      impl->max_iter =
          static_cast<int>(std::ceil(10.0 * std::sqrt(4.0 * (1.0 + kappa)))) + 300;
      break;
    }
    case SolverMethod::Dense: {
      if (n > kDenseSolverLimit) {
        throw DenseTooLarge("dense solver supports at most 2000 vertices");
      }
      Eigen::MatrixXd a = Eigen::MatrixXd::Zero(std::max(0, n - 1), std::max(0, n - 1));
      for (const Edge& e : g.edges()) {
        if (e.u < n - 1) a(e.u, e.u) += e.w;
        if (e.v < n - 1) a(e.v, e.v) += e.w;
        if (e.u < n - 1 && e.v < n - 1) {
          a(e.u, e.v) -= e.w;
          a(e.v, e.u) -= e.w;
        }
      }
      impl->dense = std::make_shared<Eigen::LDLT<Eigen::MatrixXd>>(a);
      impl->max_iter = 1;
      break;
    }
  }

  if (impl->has_tree) {
    Vector st = compute_stretches(g, impl->tree);
    double total = 0.0;
    for (double s : st) total += s;
    impl->stretch_sum = total;
    if (method == SolverMethod::PcgTree) {
      impl->max_iter =
          static_cast<int>(std::ceil(10.0 * std::sqrt(std::max(2.0, total)))) + 300;
    } else {
      // Tree-preconditioned spectrum lies in [1, sum of stretches]; the
      // n-2 eigenvalues other than the largest are each at least 1, which
      // tightens the upper end to total - (n - 2).
      double hi = std::max(1.0, total - std::max(0, n - 2));
      hi *= 1.0 + 1e-9;
      double kappa = hi;  // lower end is exactly 1
      double rk = std::sqrt(kappa);
      double sigma = (rk - 1.0) / (rk + 1.0);
      int iters = 1;
      if (sigma > 0.0) {
        iters = static_cast<int>(std::ceil(std::log(4.0 / delta) / -std::log(sigma))) + 2;
      }
      impl->cheb_iters = std::max(1, iters);
      impl->cheb_lo = 1.0;
      impl->cheb_hi = hi;
      impl->max_iter = impl->cheb_iters;
    }
  }

  if (method == SolverMethod::PcgTree || method == SolverMethod::PcgIncremental) {
    impl->estimate_lambda2(rng.child(3));
  }
  return Solver(std::move(impl));
}

Solver Solver::prepare_with_tree(const WeightedGraph& g, const SpanningTree& t, double delta,
                                 SolverMethod method, const Params& params) {
  if (method != SolverMethod::PcgTree && method != SolverMethod::ChebyshevTree) {
    throw ConfigError("prepare_with_tree supports tree-preconditioned methods only");
  }
  if (!(delta > 0.0) || delta >= 1.0) throw ConfigError("solver delta must lie in (0,1)");
  const int n = g.num_vertices();
  if (static_cast<int>(t.parent.size()) != n) {
    throw DimensionMismatch("tree vertex count does not match graph");
  }
  for (int v = 0; v < n; ++v) {
    if (v == t.root) continue;
    int id = t.host_edge[v];
    if (id < 0 || id >= g.num_edges()) throw TreeNotSubgraph("tree edge id out of range");
    const Edge& e = g.edges()[id];
    bool match = (e.u == v && e.v == t.parent[v]) || (e.v == v && e.u == t.parent[v]);
    if (!match || e.w != t.parent_weight[v]) {
      throw TreeNotSubgraph("tree edge does not match host graph");
    }
  }
  auto impl = std::make_shared<Impl>();
  impl->g = g;
  impl->method = method;
  impl->delta = delta;
  impl->theta = params.theta;
  impl->tree = t;
  impl->has_tree = true;
  Vector st = compute_stretches(g, t);
  double total = 0.0;
  for (double s : st) total += s;
  impl->stretch_sum = total;
  if (method == SolverMethod::PcgTree) {
    impl->max_iter =
        static_cast<int>(std::ceil(10.0 * std::sqrt(std::max(2.0, total)))) + 300;
    impl->estimate_lambda2(RngStream(0x5eed5eedULL, "solver-lambda"));
  } else {
    double hi = std::max(1.0, total - std::max(0, n - 2));
    hi *= 1.0 + 1e-9;
    double rk = std::sqrt(hi);
    double sigma = (rk - 1.0) / (rk + 1.0);
    int iters = 1;
    if (sigma > 0.0) {
      iters = static_cast<int>(std::ceil(std::log(4.0 / delta) / -std::log(sigma))) + 2;
    }
    impl->cheb_iters = std::max(1, iters);
    impl->cheb_lo = 1.0;
    impl->cheb_hi = hi;
    impl->max_iter = impl->cheb_iters;
  }
  return Solver(std::move(impl));
}

Vector Solver::solve(const Vector& b, SolveStats* stats) const {
  const Impl& im = *impl_;
  const int n = im.g.num_vertices();
  if (static_cast<int>(b.size()) != n) {
    throw DimensionMismatch("rhs length does not match graph vertex count");
  }
  Vector rhs(b);
  double sum = 0.0, amax = 0.0;
  for (double x : rhs) {
    sum += x;
    amax = std::max(amax, std::fabs(x));
  }
  bool projected = std::fabs(sum) > 1e-12 * (1.0 + amax * n);
  double mean = sum / std::max(1, n);
  for (double& x : rhs) x -= mean;
  if (stats) {
    *stats = SolveStats{};
    stats->projected_rhs = projected;
  }
  double bnorm = vec_norm(rhs);
  if (bnorm == 0.0 || n < 2) return Vector(n, 0.0);

  if (im.method == SolverMethod::Dense) {
    Eigen::VectorXd bg(n - 1);
    for (int i = 0; i + 1 < n; ++i) bg[i] = rhs[i];
    Eigen::VectorXd xg = im.dense->solve(bg);
    Vector x(n, 0.0);
    for (int i = 0; i + 1 < n; ++i) x[i] = xg[i];
    project_out_ones(x);
    if (stats) {
      Vector lx(n);
      apply_laplacian(im.g, x, lx);
      double rn = 0.0;
      for (int i = 0; i < n; ++i) {
        double d = rhs[i] - lx[i];
        rn += d * d;
      }
      stats->rel_residual = std::sqrt(rn) / bnorm;
    }
    return x;
  }

  if (im.method == SolverMethod::ChebyshevTree) {
    // Fixed-count preconditioned Chebyshev on the pinned range
    // [cheb_lo, cheb_hi]; iteration count was sized so the relative
    // energy-norm error is below delta.
    const double c = (im.cheb_hi - im.cheb_lo) / 2.0;
    const double d = (im.cheb_hi + im.cheb_lo) / 2.0;
    Vector x(n, 0.0), r(rhs), z(n), p(n), ap(n);
    double alpha = 0.0, beta = 0.0;
    for (int k = 0; k < im.cheb_iters; ++k) {
      im.apply_preconditioner(r, z);
      if (k == 0) {
        p = z;
        alpha = 1.0 / d;
      } else {
        beta = (k == 1) ? 0.5 * (c * alpha) * (c * alpha)
                        : (c * alpha / 2.0) * (c * alpha / 2.0);
        alpha = 1.0 / (d - beta / alpha);
        for (int i = 0; i < n; ++i) p[i] = z[i] + beta * p[i];
      }
      apply_laplacian(im.g, p, ap);
      for (int i = 0; i < n; ++i) {
        x[i] += alpha * p[i];
        r[i] -= alpha * ap[i];
      }
    }
    project_out_ones(x);
    if (stats) {
      stats->iterations = im.cheb_iters;
      Vector lx(n);
      apply_laplacian(im.g, x, lx);
      double rn = 0.0;
      for (int i = 0; i < n; ++i) {
        double dlt = rhs[i] - lx[i];
        rn += dlt * dlt;
      }
      stats->rel_residual = std::sqrt(rn) / bnorm;
    }
    return x;
  }

  // PCG. The stop certifies the energy-norm error: with ell a lower bound
  // on lambda_2,  ||x - x*||_L <= ||r|| / sqrt(ell), and b'x approaches
  // ||x*||_L^2 from the Krylov side, so
  //   ||r||^2 <= delta^2 * ell * b'x  implies the relative L-norm target.
  const double ell = im.theta * im.lambda2_est;
  const double floor2 = 1e-28 * bnorm * bnorm;
  Vector x(n, 0.0), r(rhs), z(n), p(n), ap(n);
  im.apply_preconditioner(r, z);
  p = z;
  double rz = vec_dot(r, z);
  double bx = 0.0;
  int iters = 0;
  bool converged = false;
  for (int k = 1; k <= im.max_iter; ++k) {
    iters = k;
    apply_laplacian(im.g, p, ap);
    double pap = vec_dot(p, ap);
    if (pap <= 0.0) {
      converged = true;  // p vanished in 1-perp; residual already at floor
      break;
    }
    double alpha = rz / pap;
    for (int i = 0; i < n; ++i) {
      x[i] += alpha * p[i];
      r[i] -= alpha * ap[i];
    }
    if (k % 64 == 0) {
      // Recompute the residual from scratch to shed accumulated drift.
      apply_laplacian(im.g, x, ap);
      for (int i = 0; i < n; ++i) r[i] = rhs[i] - ap[i];
      project_out_ones(r);
    }
    double rn2 = vec_dot(r, r);
    bx = vec_dot(rhs, x);
    if (rn2 <= floor2 || rn2 <= im.delta * im.delta * ell * std::max(bx, 0.0)) {
      converged = true;
      break;
    }
    im.apply_preconditioner(r, z);
    double rz_new = vec_dot(r, z);
    double beta = rz_new / rz;
    rz = rz_new;
    for (int i = 0; i < n; ++i) p[i] = z[i] + beta * p[i];
  }
  project_out_ones(x);
  double rn = 0.0;
  {
    Vector lx(n);
    apply_laplacian(im.g, x, lx);
    for (int i = 0; i < n; ++i) {
      double dlt = rhs[i] - lx[i];
      rn += dlt * dlt;
    }
    rn = std::sqrt(rn);
  }
  if (!converged) {
    throw MaxIterationsExceeded("pcg failed to certify the requested accuracy",
                                iters, rn / bnorm);
  }
  if (stats) {
    stats->iterations = iters;
    stats->rel_residual = rn / bnorm;
  }
  return x;
}

const WeightedGraph& Solver::graph() const { return impl_->g; }
SolverMethod Solver::method() const { return impl_->method; }
double Solver::delta() const { return impl_->delta; }
double Solver::lambda2_estimate() const { return impl_->lambda2_est; }
int Solver::max_iterations() const { return impl_->max_iter; }
int Solver::chebyshev_iterations() const { return impl_->cheb_iters; }

}  // namespace resparse
