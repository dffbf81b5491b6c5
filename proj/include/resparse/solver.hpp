#pragma once

#include <memory>
#include <string>

#include "resparse/graph.hpp"
#include "resparse/params.hpp"
#include "resparse/rng.hpp"
#include "resparse/tree.hpp"

namespace resparse {

enum class SolverMethod {
  PcgTree,         // PCG, low-stretch-tree preconditioner
  PcgIncremental,  // PCG, factored incremental sparsifier preconditioner
  Dense,           // grounded dense factorization, exact (n <= 2000)
  ChebyshevTree,   // fixed-iteration Chebyshev, tree preconditioner; one
                   // fixed linear operator, so separate rhs solves compose
                   // into a symmetric approximate pseudoinverse
};

SolverMethod solver_method_from_string(const std::string& name);
std::string solver_method_name(SolverMethod m);

struct SolveStats {
  int iterations = 0;
  double rel_residual = 0.0;  // ||b - Lx|| / ||b||
  bool projected_rhs = false;
};

// Exact O(n) tree solve: subtree currents leaf-to-root, potentials
// root-to-leaf. b is projected onto 1-perp first (flag reported); the result
// is the pseudoinverse solution (x perp 1).
Vector solve_tree(const SpanningTree& t, const Vector& b, bool* projected = nullptr);

// Prepared approximate Laplacian solver. solve() returns x perp 1 with
// ||x - L^+ b||_L <= delta * ||L^+ b||_L; the bound is enforced by an
// energy-certified stop (iterative methods) or exactness (dense), and
// re-certified against the dense oracle in tests. Handles are immutable
// after prepare; concurrent solve() calls are fine.
class Solver {
 public:
  static Solver prepare(const WeightedGraph& g, double delta, SolverMethod method,
                        RngStream rng, const Params& params = {});
  // Reuses a caller-supplied spanning tree (PcgTree / ChebyshevTree only).
  static Solver prepare_with_tree(const WeightedGraph& g, const SpanningTree& t, double delta,
                                  SolverMethod method, const Params& params = {});

  Vector solve(const Vector& b, SolveStats* stats = nullptr) const;

  const WeightedGraph& graph() const;
  SolverMethod method() const;
  double delta() const;
  double lambda2_estimate() const;
  int max_iterations() const;
  int chebyshev_iterations() const;  // 0 unless ChebyshevTree

  struct Impl;

 private:
  explicit Solver(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}
  std::shared_ptr<const Impl> impl_;
};

}  // namespace resparse
