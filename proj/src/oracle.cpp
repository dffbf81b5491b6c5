#include "resparse/oracle.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <string>

#include "resparse/errors.hpp"

namespace resparse {

namespace {

constexpr int kDenseLimit = 2000;
constexpr double kKernelCutoff = 1e-9;

void check_dense_size(const WeightedGraph& g, const char* who) {
  if (g.num_vertices() > kDenseLimit) {
    throw DenseTooLarge(std::string(who) + ": n = " + std::to_string(g.num_vertices()) +
                        " exceeds the dense limit " + std::to_string(kDenseLimit));
  }
}

// L^{+/2}: eigenvectors scaled by 1/sqrt(lambda) above the kernel cutoff.
Eigen::MatrixXd pinv_half(const Eigen::MatrixXd& lap) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(lap);
  const Eigen::VectorXd& ev = es.eigenvalues();
  double cutoff = kKernelCutoff * std::max(ev.cwiseAbs().maxCoeff(), 1e-300);
  Eigen::VectorXd inv_sqrt = Eigen::VectorXd::Zero(ev.size());
  for (int i = 0; i < ev.size(); ++i) {
    if (ev[i] > cutoff) inv_sqrt[i] = 1.0 / std::sqrt(ev[i]);
  }
  return es.eigenvectors() * inv_sqrt.asDiagonal() * es.eigenvectors().transpose();
}

}  // namespace

Eigen::MatrixXd laplacian_dense(const WeightedGraph& g) {
  check_dense_size(g, "laplacian_dense");
  int n = g.num_vertices();
  Eigen::MatrixXd lap = Eigen::MatrixXd::Zero(n, n);
  for (const Edge& e : g.edges()) {
    lap(e.u, e.u) += e.w;
    lap(e.v, e.v) += e.w;
    lap(e.u, e.v) -= e.w;
    lap(e.v, e.u) -= e.w;
  }
  return lap;
}

Eigen::MatrixXd pinv_dense(const WeightedGraph& g) {
  check_dense_size(g, "pinv_dense");
  Eigen::MatrixXd lap = laplacian_dense(g);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(lap);
  const Eigen::VectorXd& ev = es.eigenvalues();
  double cutoff = kKernelCutoff * std::max(ev.cwiseAbs().maxCoeff(), 1e-300);
  Eigen::VectorXd inv = Eigen::VectorXd::Zero(ev.size());
  for (int i = 0; i < ev.size(); ++i) {
    if (ev[i] > cutoff) inv[i] = 1.0 / ev[i];
  }
  return es.eigenvectors() * inv.asDiagonal() * es.eigenvectors().transpose();
}

ApproxReport spectral_approx_check(const WeightedGraph& g, const WeightedGraph& h, double eps,
                                   std::uint64_t seed) {
  if (g.num_vertices() != h.num_vertices()) {
    throw VertexSetMismatch("graphs have different vertex counts");
  }
  check_dense_size(g, "spectral_approx_check");
  ApproxReport rep;
  rep.epsilon = eps;
  rep.n = g.num_vertices();
  rep.m_in = g.num_edges();
  rep.m_out = h.num_edges();
  rep.seed = seed;

  int n = g.num_vertices();
  Eigen::MatrixXd p = pinv_half(laplacian_dense(g));
  Eigen::MatrixXd m = p * laplacian_dense(h) * p;
  m = 0.5 * (m + m.transpose()).eval();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m, Eigen::EigenvaluesOnly);
  Eigen::VectorXd ev = es.eigenvalues();
  // One exact zero belongs to the all-ones kernel shared by both sides; the
  // eigenvalue smallest in magnitude is dropped, everything else must sit in
  // the (1 +- eps) window. A disconnected h leaves an extra near-zero behind
  // and fails the lower bound, as it should.
  int drop = 0;
  for (int i = 1; i < n; ++i) {
    if (std::abs(ev[i]) < std::abs(ev[drop])) drop = i;
  }
  rep.lambda_min_ratio = std::numeric_limits<double>::infinity();
  rep.lambda_max_ratio = -std::numeric_limits<double>::infinity();
  for (int i = 0; i < n; ++i) {
    if (i == drop) continue;
    rep.lambda_min_ratio = std::min(rep.lambda_min_ratio, ev[i]);
    rep.lambda_max_ratio = std::max(rep.lambda_max_ratio, ev[i]);
  }
  if (n <= 1) rep.lambda_min_ratio = rep.lambda_max_ratio = 1.0;

  RngStream rng(seed, "quad-check");
  rep.quad_min = std::numeric_limits<double>::infinity();
  rep.quad_max = -std::numeric_limits<double>::infinity();
  Vector x(n);
  for (int trial = 0; trial < 1000; ++trial) {
    double mean = 0.0;
    for (int i = 0; i < n; ++i) {
      x[i] = rng.next_gaussian();
      mean += x[i];
    }
    mean /= n;
    for (int i = 0; i < n; ++i) x[i] -= mean;
    double qg = quadratic_form(g, x);
    if (qg <= 0.0) continue;  // x fell in the kernel; no information
    double ratio = quadratic_form(h, x) / qg;
    rep.quad_min = std::min(rep.quad_min, ratio);
    rep.quad_max = std::max(rep.quad_max, ratio);
  }

  constexpr double tol = 1e-9;
  rep.pass = rep.lambda_min_ratio >= 1.0 - eps - tol && rep.lambda_max_ratio <= 1.0 + eps + tol;
  return rep;
}

CutCheckResult cut_check(const WeightedGraph& g, const WeightedGraph& h, double tau,
                         std::uint64_t seed) {
  if (g.num_vertices() != h.num_vertices()) {
    throw VertexSetMismatch("graphs have different vertex counts");
  }
  int n = g.num_vertices();
  CutCheckResult res;
  res.worst_ratio = 0.0;
  res.passed = true;

  auto check_mask = [&](std::uint64_t mask) {
    // Vertex 0 is pinned to one side, so each proper cut appears once.
    double cap_g = 0.0, cap_h = 0.0;
    for (const Edge& e : g.edges()) {
      if (((mask >> e.u) & 1) != ((mask >> e.v) & 1)) cap_g += e.w;
    }
    for (const Edge& e : h.edges()) {
      if (((mask >> e.u) & 1) != ((mask >> e.v) & 1)) cap_h += e.w;
    }
    double lhs = tau * cap_h;
    double ratio = lhs > 0.0 ? cap_g / lhs : (cap_g > 0.0 ? std::numeric_limits<double>::infinity() : 0.0);
    res.worst_ratio = std::max(res.worst_ratio, ratio);
    if (lhs + 1e-12 * (1.0 + cap_g) < cap_g) res.passed = false;
    ++res.cuts_checked;
  };

  if (n <= 16) {
    res.exhaustive = true;
    std::uint64_t limit = 1ULL << (n - 1);
    for (std::uint64_t mask = 1; mask < limit; ++mask) check_mask(mask << 1 | 0ULL);
  } else {
    // Too many cuts to enumerate; sample. The caller sees exhaustive=false.
    res.exhaustive = false;
    RngStream rng(seed, "cut-check");
    for (int trial = 0; trial < 100000; ++trial) {
      std::uint64_t mask = 0;
      int ones = 0;
      for (int v = 1; v < n && v < 64; ++v) {
        if (rng.next_bernoulli(0.5)) {
          mask |= 1ULL << v;
          ++ones;
        }
      }
      if (ones == 0 || ones == n - 1) continue;
      check_mask(mask);
    }
  }
  return res;
}

DenseEigen dense_eigen(const WeightedGraph& g, bool normalized) {
  check_dense_size(g, "dense_eigen");
  Eigen::MatrixXd lap = laplacian_dense(g);
  if (normalized) {
    Vector deg = g.weighted_degrees();
    Eigen::VectorXd dinv(g.num_vertices());
    for (int v = 0; v < g.num_vertices(); ++v) {
      if (deg[v] <= 0.0) throw ZeroDegree("vertex " + std::to_string(v) + " has zero degree");
      dinv[v] = 1.0 / std::sqrt(deg[v]);
    }
    lap = (dinv.asDiagonal() * lap * dinv.asDiagonal()).eval();
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(lap);
  return DenseEigen{es.eigenvalues(), es.eigenvectors()};
}

}  // namespace resparse
