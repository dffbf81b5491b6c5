#include "resparse/io.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <limits>
#include <sstream>

#include "resparse/errors.hpp"

namespace resparse {

namespace {

struct Line {
  std::string text;
  int number = 0;
};

// Data lines only: blank lines dropped, '#' starts a comment anywhere on a
// line, line numbers kept for error messages.
std::vector<Line> data_lines(std::istream& in) {
  std::vector<Line> out;
  std::string raw;
  int number = 0;
  while (std::getline(in, raw)) {
    ++number;
    if (!raw.empty() && raw.back() == '\r') raw.pop_back();
    std::size_t hash = raw.find('#');
    if (hash != std::string::npos) raw.erase(hash);
    std::size_t i = raw.find_first_not_of(" \t");
    if (i == std::string::npos) continue;
    out.push_back({raw, number});
  }
  return out;
}

bool parse_int(const std::string& tok, int& out) {
  try {
    std::size_t pos = 0;
    long v = std::stol(tok, &pos);
    if (pos != tok.size() || v < std::numeric_limits<int>::min() ||
        v > std::numeric_limits<int>::max()) {
      return false;
    }
    out = static_cast<int>(v);
    return true;
  } catch (const std::exception&) {
    return false;
  }
}

// strtod directly instead of std::stod: stod rejects subnormal results
// (glibc flags them ERANGE), which would break round-tripping of written
// values near the bottom of the double range.
bool parse_real(const std::string& tok, double& out) {
  if (tok.empty()) return false;
  const char* begin = tok.c_str();
  char* end = nullptr;
  double v = std::strtod(begin, &end);
  if (end != begin + tok.size()) return false;
  if (v == HUGE_VAL || v == -HUGE_VAL) return false;  // textual overflow
  out = v;
  return true;
}

std::vector<std::string> tokens_of(const std::string& s) {
  std::vector<std::string> toks;
  std::istringstream iss(s);
  std::string t;
  while (iss >> t) toks.push_back(t);
  return toks;
}

WeightedGraph parse_matrix_market(const std::vector<Line>& lines) {
  // Banner: %%MatrixMarket matrix coordinate real {symmetric|general}
  {
    std::vector<std::string> banner = tokens_of(lines[0].text);
    if (banner.size() < 5 || banner[1] != "matrix" || banner[2] != "coordinate") {
      throw ParseError("unsupported matrix-market banner", lines[0].number);
    }
    if (banner[3] != "real" && banner[3] != "integer") {
      throw ParseError("matrix-market field must be real or integer", lines[0].number);
    }
  }
  std::size_t i = 1;
  while (i < lines.size() && !lines[i].text.empty() && lines[i].text[0] == '%') ++i;
  if (i >= lines.size()) throw ParseError("missing matrix-market size line");
  std::vector<std::string> dims = tokens_of(lines[i].text);
  int rows = 0, cols = 0, nnz = 0;
  if (dims.size() != 3 || !parse_int(dims[0], rows) || !parse_int(dims[1], cols) ||
      !parse_int(dims[2], nnz)) {
    throw ParseError("bad matrix-market size line", lines[i].number);
  }
  if (rows != cols || rows <= 0) {
    throw ParseError("matrix-market graph must be square", lines[i].number);
  }
  ++i;

  struct Entry {
    int r, c, line;
    double v;
  };
  std::vector<Entry> entries;
  bool any_negative = false;
  for (int k = 0; k < nnz; ++k, ++i) {
    if (i >= lines.size()) throw ParseError("matrix-market file ends early");
    std::vector<std::string> t = tokens_of(lines[i].text);
    Entry e;
    if (t.size() != 3 || !parse_int(t[0], e.r) || !parse_int(t[1], e.c) ||
        !parse_real(t[2], e.v)) {
      throw ParseError("bad matrix-market entry", lines[i].number);
    }
    if (e.r < 1 || e.r > rows || e.c < 1 || e.c > cols) {
      throw VertexOutOfRange("matrix-market index out of range at line " +
                             std::to_string(lines[i].number));
    }
    e.line = lines[i].number;
    if (e.r != e.c && e.v < 0.0) any_negative = true;
    entries.push_back(e);
  }
  if (i < lines.size()) throw ParseError("trailing data after matrix entries", lines[i].number);

  // Negative off-diagonals mean the file stores a Laplacian (w = -value);
  // otherwise it is an adjacency/weight matrix. Diagonals are ignored in
  // both readings, zero entries dropped.
  std::vector<Edge> edges;
  for (const Entry& e : entries) {
    if (e.r == e.c || e.v == 0.0) continue;
    double w = any_negative ? -e.v : e.v;
    if (!(w > 0.0)) {
      throw NonPositiveWeight((any_negative
                                   ? "positive off-diagonal in a laplacian matrix at line "
                                   : "negative weight at line ") +
                              std::to_string(e.line));
    }
    edges.push_back({e.r - 1, e.c - 1, w});
  }
  return build_graph(rows, edges);
}

}  // namespace

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

WeightedGraph parse_edge_list_stream(std::istream& in) {
  std::vector<Line> lines = data_lines(in);
  if (lines.empty()) throw ParseError("no data lines");
  if (lines[0].text.rfind("%%MatrixMarket", 0) == 0) return parse_matrix_market(lines);

  std::vector<std::string> head = tokens_of(lines[0].text);
  int n = 0, m = 0;
  if (head.size() != 2 || !parse_int(head[0], n) || !parse_int(head[1], m) || n < 0 || m < 0) {
    throw ParseError("expected header 'n m'", lines[0].number);
  }
  if (static_cast<int>(lines.size()) - 1 < m) {
    throw ParseError("file ends before " + std::to_string(m) + " edges");
  }
  if (static_cast<int>(lines.size()) - 1 > m) {
    throw ParseError("trailing data after " + std::to_string(m) + " edges",
                     lines[m + 1].number);
  }
  std::vector<Edge> edges;
  edges.reserve(m);
  for (int k = 1; k <= m; ++k) {
    std::vector<std::string> t = tokens_of(lines[k].text);
    int u = 0, v = 0;
    double w = 0.0;
    if (t.size() != 3 || !parse_int(t[0], u) || !parse_int(t[1], v) || !parse_real(t[2], w)) {
      throw ParseError("expected 'u v w'", lines[k].number);
    }
    if (u < 0 || u >= n || v < 0 || v >= n) {
      throw VertexOutOfRange("vertex out of range at line " + std::to_string(lines[k].number));
    }
    if (!(w > 0.0)) {
      throw NonPositiveWeight("non-positive weight at line " + std::to_string(lines[k].number));
    }
    edges.push_back({u, v, w});
  }
  return build_graph(n, edges);
}

WeightedGraph parse_edge_list(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open '" + path + "' for reading");
  return parse_edge_list_stream(in);
}

std::string format_edge_list(const WeightedGraph& g) {
  std::string out = std::to_string(g.num_vertices()) + " " + std::to_string(g.num_edges()) + "\n";
  for (const Edge& e : g.edges()) {
    out += std::to_string(e.u) + " " + std::to_string(e.v) + " " + format_double(e.w) + "\n";
  }
  return out;
}

void write_edge_list(const WeightedGraph& g, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  out << format_edge_list(g);
  if (!out) throw IoError("write to '" + path + "' failed");
}

void Report::add(const std::string& key, const std::string& value) {
  lines_.emplace_back(key, value);
}
void Report::add(const std::string& key, double value) { add(key, format_double(value)); }
void Report::add(const std::string& key, long long value) { add(key, std::to_string(value)); }
void Report::add(const std::string& key, bool value) {
  add(key, std::string(value ? "true" : "false"));
}
void Report::add(const std::string& key, std::uint64_t value) { add(key, std::to_string(value)); }

void Report::add_params(const Params& params) {
  for (const auto& [name, value] : params.items()) add("param." + name, value);
}

std::string Report::str() const {
  std::string out;
  for (const auto& [k, v] : lines_) {
    out += k;
    out += ": ";
    out += v;
    out += "\n";
  }
  return out;
}

void Report::write(const std::string& path) const {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  out << str();
  if (!out) throw IoError("write to '" + path + "' failed");
}

Report sparsifier_report(const std::string& algo, const SparsifierResult& r, int n,
                         const Params& params) {
  Report rep;
  rep.add("algorithm", algo);
  rep.add("epsilon", r.epsilon);
  rep.add("seed", r.seed);
  rep.add("n", n);
  rep.add("edges_out", r.edge_count());
  rep.add("epsilon_product", r.epsilon_product());
  rep.add("stages", static_cast<long long>(r.stages.size()));
  for (std::size_t i = 0; i < r.stages.size(); ++i) {
    const StageRecord& s = r.stages[i];
    std::string p = "stage." + std::to_string(i) + ".";
    rep.add(p + "name", s.name);
    rep.add(p + "kappa", s.kappa);
    rep.add(p + "eps", s.eps);
    rep.add(p + "edges_in", s.edges_in);
    rep.add(p + "edges_out", s.edges_out);
    rep.add(p + "score_total", s.score_total);
    rep.add(p + "saturated", s.saturated);
    rep.add(p + "compounds", s.compounds);
  }
  rep.add_params(params);
  return rep;
}

Report eigen_report(const EigenResult& r) {
  Report rep;
  rep.add("rayleigh", r.rayleigh);
  rep.add("iterations", r.iterations);
  rep.add("epsilon", r.epsilon);
  rep.add("normalized", r.normalized);
  return rep;
}

Report approx_check_report(const ApproxReport& r) {
  Report rep;
  rep.add("lambda_min_ratio", r.lambda_min_ratio);
  rep.add("lambda_max_ratio", r.lambda_max_ratio);
  rep.add("quad_min", r.quad_min);
  rep.add("quad_max", r.quad_max);
  rep.add("epsilon", r.epsilon);
  rep.add("pass", r.pass);
  rep.add("n", r.n);
  rep.add("m_in", r.m_in);
  rep.add("m_out", r.m_out);
  rep.add("seed", r.seed);
  return rep;
}

void write_vector(const Vector& x, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  for (double v : x) out << format_double(v) << "\n";
  if (!out) throw IoError("write to '" + path + "' failed");
}

Vector parse_vector(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open '" + path + "' for reading");
  Vector x;
  for (const Line& line : data_lines(in)) {
    for (const std::string& tok : tokens_of(line.text)) {
      double v = 0.0;
      if (!parse_real(tok, v)) throw ParseError("expected a number", line.number);
      x.push_back(v);
    }
  }
  return x;
}

}  // namespace resparse
