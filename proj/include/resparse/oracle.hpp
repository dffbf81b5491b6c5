#pragma once

#include <Eigen/Dense>
#include <cstdint>

#include "resparse/graph.hpp"
#include "resparse/rng.hpp"

namespace resparse {

// Dense reference routines. Everything here is O(n^3)-ish and guarded at
// n <= 2000 (DenseTooLarge); it exists to certify the sparse code, so it
// shares no machinery with the fast paths.

Eigen::MatrixXd laplacian_dense(const WeightedGraph& g);

// Moore-Penrose pseudoinverse via eigendecomposition; eigenvalues below
// 1e-9 * lambda_max are treated as the kernel.
Eigen::MatrixXd pinv_dense(const WeightedGraph& g);

struct ApproxReport {
  double lambda_min_ratio = 0.0;  // smallest generalized eigenvalue off the kernel
  double lambda_max_ratio = 0.0;  // largest
  double quad_min = 0.0;          // extremes of 1000 random quadratic-form ratios
  double quad_max = 0.0;
  double epsilon = 0.0;
  bool pass = false;
  int n = 0;
  int m_in = 0;
  int m_out = 0;
  std::uint64_t seed = 0;
};

// Certifies (1-eps) L_g <= L_h <= (1+eps) L_g by the extreme eigenvalues of
// pinv_half(L_g) * L_h * pinv_half(L_g), plus a random quadratic-form
// pre-check recorded in the report. Tolerance 1e-9 on both ends.
ApproxReport spectral_approx_check(const WeightedGraph& g, const WeightedGraph& h, double eps,
                                   std::uint64_t seed = 0);

struct CutCheckResult {
  bool passed = false;
  bool exhaustive = false;  // false means the 1e5-random-cut fallback ran
  double worst_ratio = 0.0; // max over cuts of cap_g / (tau * cap_h)
  long long cuts_checked = 0;
};

// Checks tau * cap_h(C) >= cap_g(C) over every proper cut. Exhaustive for
// n <= 16, otherwise falls back to 1e5 seeded random cuts and says so.
CutCheckResult cut_check(const WeightedGraph& g, const WeightedGraph& h, double tau,
                         std::uint64_t seed = 0);

struct DenseEigen {
  Eigen::VectorXd values;   // ascending
  Eigen::MatrixXd vectors;  // columns match values
};

// Full spectrum of the Laplacian, or of D^{-1/2} L D^{-1/2} when normalized
// (ZeroDegree if some vertex is isolated).
DenseEigen dense_eigen(const WeightedGraph& g, bool normalized = false);

}  // namespace resparse
