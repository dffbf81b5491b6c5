#pragma once

#include <cstdint>

#include "resparse/graph.hpp"
#include "resparse/params.hpp"
#include "resparse/rng.hpp"
#include "resparse/solver.hpp"

namespace resparse {

// Approximate Fiedler pair. vector is unit norm and orthogonal to the
// all-ones vector (to D^{1/2}*1 in normalized mode) within 1e-10; rayleigh
// is the quadratic form of the graph the caller asked about.
struct EigenResult {
  Vector vector;
  double rayleigh = 0.0;
  int iterations = 0;
  double epsilon = 0.0;
  bool normalized = false;
  Vector rayleigh_trace;  // quotient after each iteration; non-increasing up
                          // to solver tolerance
};

// Inverse power iteration on the solver's graph: x <- solve(L, x),
// project, renormalize. Stops once the Rayleigh quotient moves by less
// than a relative eps/10 over three consecutive iterations, or at the
// iteration cap ceil(c_power * ln n * ln(1/eps)) + 20.
EigenResult inverse_power(const WeightedGraph& g, double eps, const Solver& solver,
                          RngStream rng, const Params& params = {});

// Sparsify at eps/2, run inverse power at eps/3 on the sparsifier, report
// the Rayleigh quotient against the original graph.
EigenResult fiedler(const WeightedGraph& g, double eps, std::uint64_t seed,
                    const Params& params = {});

// Same scheme against D^{-1/2} L D^{-1/2} with D the original graph's
// degrees; orthogonality is against D^{1/2}*1.
EigenResult fiedler_normalized(const WeightedGraph& g, double eps, std::uint64_t seed,
                               const Params& params = {});

}  // namespace resparse
