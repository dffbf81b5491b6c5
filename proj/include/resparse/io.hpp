#pragma once

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "resparse/eigen.hpp"
#include "resparse/graph.hpp"
#include "resparse/oracle.hpp"
#include "resparse/params.hpp"
#include "resparse/pipelines.hpp"

namespace resparse {

// %.17g: enough digits to round-trip any double, fixed so byte outputs are
// reproducible run to run.
std::string format_double(double v);

// Edge-list format: first non-comment line "n m", then m lines "u v w",
// '#' starts a comment. Matrix-Market symmetric coordinate files are also
// accepted (Laplacian vs adjacency auto-detected from off-diagonal signs).
WeightedGraph parse_edge_list(const std::string& path);
WeightedGraph parse_edge_list_stream(std::istream& in);

std::string format_edge_list(const WeightedGraph& g);
void write_edge_list(const WeightedGraph& g, const std::string& path);

// Ordered key: value lines; doubles printed with format_double so a fixed
// (input, config, seed) triple yields byte-identical reports.
class Report {
 public:
  void add(const std::string& key, const std::string& value);
  void add(const std::string& key, double value);
  void add(const std::string& key, long long value);
  void add(const std::string& key, int value) { add(key, static_cast<long long>(value)); }
  void add(const std::string& key, bool value);
  void add(const std::string& key, std::uint64_t value);
  void add_params(const Params& params);

  const std::vector<std::pair<std::string, std::string>>& lines() const { return lines_; }
  std::string str() const;
  void write(const std::string& path) const;

 private:
  std::vector<std::pair<std::string, std::string>> lines_;
};

Report sparsifier_report(const std::string& algo, const SparsifierResult& r, int n,
                         const Params& params);
Report eigen_report(const EigenResult& r);
Report approx_check_report(const ApproxReport& r);

void write_vector(const Vector& x, const std::string& path);

// Whitespace-separated doubles, '#' comments allowed; length is up to the
// caller to check.
Vector parse_vector(const std::string& path);

}  // namespace resparse
