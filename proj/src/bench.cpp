#include "resparse/bench.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <ostream>

#include "resparse/errors.hpp"
#include "resparse/generate.hpp"
#include "resparse/pipelines.hpp"
#include "resparse/rng.hpp"

namespace resparse {

namespace {

// Least squares y = a + b*x.
void line_fit(const std::vector<double>& x, const std::vector<double>& y, double* a, double* b) {
  const int k = static_cast<int>(x.size());
  double mx = 0.0, my = 0.0;
  for (int i = 0; i < k; ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= k;
  my /= k;
  double sxx = 0.0, sxy = 0.0;
  for (int i = 0; i < k; ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  if (sxx <= 0.0) throw ConfigError("fit needs at least two distinct sizes");
  *b = sxy / sxx;
  *a = my - *b * mx;
}

}  // namespace

std::vector<BenchRow> run_bench(const std::string& algo, const std::vector<int>& sizes,
                                double eps, std::uint64_t seed, const Params& params,
                                std::ostream* progress) {
  if (sizes.empty()) throw ConfigError("bench needs at least one size");
  std::vector<BenchRow> rows;
  RngStream rng(seed, "bench");
  int idx = 0;
  for (int m : sizes) {
    if (m < 1) throw ConfigError("bench sizes must be positive");
    const int n = std::max(200, m / 30);
    WeightedGraph g = random_connected(n, m, 1.0, 1.0, rng.child(idx++));
    const auto start = std::chrono::steady_clock::now();
    SparsifierResult r = sparsify(g, algo, eps, seed, params);
    const auto stop = std::chrono::steady_clock::now();
    BenchRow row;
    row.algo = algo;
    row.n = g.num_vertices();
    row.m = g.num_edges();
    row.edges_out = r.edge_count();
    row.millis = std::chrono::duration<double, std::milli>(stop - start).count();
    for (const StageRecord& s : r.stages) row.stages.emplace_back(s.name, s.millis);
    rows.push_back(row);
    if (progress) {
      (*progress) << algo << " m=" << row.m << " n=" << row.n << " edges_out=" << row.edges_out
                  << " millis=" << row.millis;
      for (const auto& [name, ms] : row.stages) (*progress) << " " << name << "=" << ms;
      (*progress) << std::endl;
    }
  }
  return rows;
}

MLogFit fit_m_polylog(const std::vector<BenchRow>& rows) {
  if (rows.size() < 2) throw ConfigError("fit needs at least two rows");
  std::vector<double> x, y;
  for (const BenchRow& r : rows) {
    const double t = std::max(r.millis, 1e-3);  // clamp: log of a zero timing
    x.push_back(std::log(std::log(static_cast<double>(r.m))));
    y.push_back(std::log(t / r.m));
  }
  double a = 0.0, b = 0.0;
  line_fit(x, y, &a, &b);
  return {std::exp(a), b};
}

PowerFit fit_power(const std::vector<BenchRow>& rows) {
  if (rows.size() < 2) throw ConfigError("fit needs at least two rows");
  std::vector<double> x, y;
  for (const BenchRow& r : rows) {
    const double t = std::max(r.millis, 1e-3);
    x.push_back(std::log(static_cast<double>(r.m)));
    y.push_back(std::log(t));
  }
  double a = 0.0, b = 0.0;
  line_fit(x, y, &a, &b);
  return {std::exp(a), b};
}

}  // namespace resparse
