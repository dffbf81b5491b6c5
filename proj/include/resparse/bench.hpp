#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "resparse/params.hpp"

namespace resparse {

struct BenchRow {
  std::string algo;
  int n = 0;
  int m = 0;
  int edges_out = 0;
  double millis = 0.0;                                 // whole pipeline call
  std::vector<std::pair<std::string, double>> stages;  // per-stage wall millis
};

// Times one pipeline over random connected graphs of the given edge counts.
// n = max(200, m/30), so the graphs stay dense-ish expanders and iteration
// counts, not condition numbers, dominate the wall time. Each row's graph
// comes from an independent substream of `seed`; the timed call excludes
// generation. Rows stream to `progress` as they finish.
std::vector<BenchRow> run_bench(const std::string& algo, const std::vector<int>& sizes,
                                double eps, std::uint64_t seed, const Params& params = {},
                                std::ostream* progress = nullptr);

// Least-squares fit millis = coeff * m * ln(m)^exponent.
struct MLogFit {
  double coeff = 0.0;
  double exponent = 0.0;
};
MLogFit fit_m_polylog(const std::vector<BenchRow>& rows);

// Least-squares fit millis = coeff * m^exponent.
struct PowerFit {
  double coeff = 0.0;
  double exponent = 0.0;
};
PowerFit fit_power(const std::vector<BenchRow>& rows);

}  // namespace resparse
