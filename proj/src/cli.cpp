#include "resparse/cli.hpp"

#include <cstdint>
#include <fstream>
#include <iostream>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"

#include "resparse/bench.hpp"
#include "resparse/eigen.hpp"
#include "resparse/errors.hpp"
#include "resparse/graph.hpp"
#include "resparse/io.hpp"
#include "resparse/lst.hpp"
#include "resparse/oracle.hpp"
#include "resparse/pipelines.hpp"
#include "resparse/resistance.hpp"
#include "resparse/rng.hpp"
#include "resparse/solver.hpp"
#include "resparse/tree.hpp"

namespace resparse {

namespace {

struct Common {
  std::uint64_t seed = 0;
  std::vector<std::string> set;
  int threads = 0;  // 0: leave the default
};

void add_common(CLI::App* cmd, Common* c) {
  cmd->add_option("--seed", c->seed, "rng seed (default 0)");
  cmd->add_option("--set", c->set, "override a tunable constant")
      ->option_text("key=value")
      ->allow_extra_args(false);
  cmd->add_option("--threads", c->threads, "threads for sketch row solves");
}

Params params_from(const Common& c) {
  std::map<std::string, double> kv;
  for (const std::string& s : c.set) {
    const std::size_t eq = s.find('=');
    if (eq == std::string::npos || eq == 0) {
      throw ConfigError("--set expects key=value, got '" + s + "'");
    }
    const std::string key = s.substr(0, eq);
    const std::string val = s.substr(eq + 1);
    double v = 0.0;
    try {
      std::size_t pos = 0;
      v = std::stod(val, &pos);
      if (pos != val.size()) throw std::invalid_argument("trailing characters");
    } catch (const std::exception&) {
      throw ConfigError("--set value for '" + key + "' is not a number");
    }
    kv[key] = v;
  }
  if (c.threads > 0) kv["threads"] = static_cast<double>(c.threads);
  Params p;
  p.apply_overrides(kv);
  return p;
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  out << text;
  if (!out) throw IoError("write to '" + path + "' failed");
}

int do_sparsify(const std::string& in, const std::string& out, const std::string& algo,
                double eps, bool verify, const Common& c) {
  const Params params = params_from(c);
  const WeightedGraph g = parse_edge_list(in);
  const SparsifierResult r = sparsify(g, algo, eps, c.seed, params);
  write_edge_list(r.g_tilde, out);
  Report rep = sparsifier_report(algo, r, g.num_vertices(), params);
  int code = 0;
  if (verify) {
    const ApproxReport check = spectral_approx_check(g, r.g_tilde, eps, c.seed);
    rep.add("verify.pass", check.pass);
    rep.add("verify.lambda_min_ratio", check.lambda_min_ratio);
    rep.add("verify.lambda_max_ratio", check.lambda_max_ratio);
    if (!check.pass) code = 1;
  }
  rep.write(out + ".report");
  std::cout << rep.str();
  return code;
}

int do_resistances(const std::string& in, const std::string& out, double eps, bool exact,
                   const std::string& solver_name, const Common& c) {
  const Params params = params_from(c);
  if (!(eps > 0.0 && eps < 1.0)) throw ConfigError("eps must lie in (0, 1)");
  const WeightedGraph g = parse_edge_list(in);
  const double delta = eps * params.delta_frac;
  RngStream rng(c.seed, "cli-resistances");
  const Solver solver = Solver::prepare(g, delta, solver_method_from_string(solver_name),
                                        rng.substream("solver"), params);
  const std::vector<std::pair<int, int>> pairs = edge_pairs(g);
  double eps_jl = 0.0;
  Vector r;
  if (exact) {
    r = solve_pair_resistances(solver, pairs);
  } else {
    eps_jl = eps * params.jl_budget_frac;
    r = sketch_pair_resistances(solver, pairs, eps_jl, rng.substream("sketch"), params);
  }
  std::string text;
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    text += std::to_string(pairs[i].first) + " " + std::to_string(pairs[i].second) + " " +
            format_double(r[i]) + "\n";
  }
  write_text(out, text);
  Report rep;
  rep.add("n", g.num_vertices());
  rep.add("m", g.num_edges());
  rep.add("epsilon", eps);
  rep.add("eps_jl", eps_jl);
  rep.add("delta", delta);
  rep.add("solver", solver_name);
  rep.add("exact", exact);
  rep.add("seed", c.seed);
  rep.add_params(params);
  rep.write(out + ".report");
  std::cout << rep.str();
  return 0;
}

int do_lst(const std::string& in, const std::string& out, bool fast, const Common& c) {
  const Params params = params_from(c);
  const WeightedGraph g = parse_edge_list(in);
  RngStream rng(c.seed, fast ? "cli-fast-lst" : "cli-lst");
  const SpanningTree t =
      fast ? fast_low_stretch_tree(g, rng, params) : low_stretch_tree(g, rng, params);
  std::vector<Edge> edges;
  for (int v = 0; v < g.num_vertices(); ++v) {
    if (v == t.root) continue;
    edges.push_back(g.edge(t.host_edge[v]));
  }
  write_edge_list(build_graph(g.num_vertices(), edges), out);
  const EdgeVector st = compute_stretches(g, t);
  double total = 0.0;
  for (double s : st) total += s;
  Report rep;
  rep.add("fast", fast);
  rep.add("n", g.num_vertices());
  rep.add("m", g.num_edges());
  rep.add("seed", c.seed);
  rep.add("stretch_sum", total);
  rep.add("stretch_cut", stretch_via_cuts(g, t));
  rep.add_params(params);
  rep.write(out + ".report");
  std::cout << rep.str();
  return 0;
}

int do_solve(const std::string& in, const std::string& bfile, const std::string& out,
             const std::string& solver_name, double delta, const Common& c) {
  const Params params = params_from(c);
  if (!(delta > 0.0 && delta < 1.0)) throw ConfigError("delta must lie in (0, 1)");
  const WeightedGraph g = parse_edge_list(in);
  const Vector b = parse_vector(bfile);
  if (static_cast<int>(b.size()) != g.num_vertices()) {
    throw DimensionMismatch("rhs has " + std::to_string(b.size()) + " entries, graph has " +
                            std::to_string(g.num_vertices()) + " vertices");
  }
  const Solver solver = Solver::prepare(g, delta, solver_method_from_string(solver_name),
                                        RngStream(c.seed, "cli-solve"), params);
  SolveStats stats;
  const Vector x = solver.solve(b, &stats);
  write_vector(x, out);
  Report rep;
  rep.add("solver", solver_name);
  rep.add("delta", delta);
  rep.add("iterations", stats.iterations);
  rep.add("rel_residual", stats.rel_residual);
  rep.add("projected_rhs", stats.projected_rhs);
  rep.add("n", g.num_vertices());
  rep.add("m", g.num_edges());
  rep.add("seed", c.seed);
  rep.add_params(params);
  rep.write(out + ".report");
  std::cout << rep.str();
  return 0;
}

int do_fiedler(const std::string& in, const std::string& out_opt, double eps, bool normalized,
               const Common& c) {
  const Params params = params_from(c);
  const WeightedGraph g = parse_edge_list(in);
  const EigenResult r = normalized ? fiedler_normalized(g, eps, c.seed, params)
                                   : fiedler(g, eps, c.seed, params);
  const std::string out = out_opt.empty() ? in + ".fiedler" : out_opt;
  write_vector(r.vector, out);
  Report rep = eigen_report(r);
  rep.add("n", g.num_vertices());
  rep.add("m", g.num_edges());
  rep.add("seed", c.seed);
  rep.add_params(params);
  rep.write(out + ".report");
  std::cout << rep.str();
  return 0;
}

int do_verify(const std::string& in, const std::string& sparse, double eps,
              const std::string& out, const Common& c) {
  const WeightedGraph g = parse_edge_list(in);
  const WeightedGraph h = parse_edge_list(sparse);
  if (h.num_vertices() != g.num_vertices()) {
    throw VertexSetMismatch("graphs have different vertex counts");
  }
  const ApproxReport check = spectral_approx_check(g, h, eps, c.seed);
  const Report rep = approx_check_report(check);
  if (!out.empty()) rep.write(out);
  std::cout << rep.str();
  return check.pass ? 0 : 1;
}

int do_bench(const std::string& algo, const std::vector<int>& sizes, double eps, bool fit,
             const Common& c) {
  const Params params = params_from(c);
  for (const auto& [name, value] : params.items()) {
    std::cout << "# param." << name << ": " << format_double(value) << "\n";
  }
  const std::vector<BenchRow> rows = run_bench(algo, sizes, eps, c.seed, params, &std::cout);
  if (fit) {
    const MLogFit ml = fit_m_polylog(rows);
    const PowerFit pw = fit_power(rows);
    std::cout << "fit.m_polylog.exponent: " << format_double(ml.exponent) << "\n";
    std::cout << "fit.m_polylog.coeff: " << format_double(ml.coeff) << "\n";
    std::cout << "fit.power.exponent: " << format_double(pw.exponent) << "\n";
    std::cout << "fit.power.coeff: " << format_double(pw.coeff) << "\n";
  }
  return 0;
}

}  // namespace

int run_cli(const std::vector<std::string>& args) {
  CLI::App app{"spectral graph sparsification toolkit"};
  app.require_subcommand(1);

  Common sp_c;
  std::string sp_in, sp_out, sp_algo = "general";
  double sp_eps = 0.5;
  bool sp_verify = false;
  CLI::App* sparsify_cmd = app.add_subcommand("sparsify", "compute a (1 +- eps) sparsifier");
  sparsify_cmd->add_option("input", sp_in, "edge-list or matrix-market file")->required();
  sparsify_cmd->add_option("--out", sp_out, "output edge list (report at <out>.report)")
      ->required();
  sparsify_cmd->add_option("--algo", sp_algo,
                           "general | spine | linear | unweighted | chain");
  sparsify_cmd->add_option("--eps", sp_eps, "approximation budget (default 0.5)");
  sparsify_cmd->add_flag("--verify", sp_verify, "check the output against the dense oracle");
  add_common(sparsify_cmd, &sp_c);

  Common re_c;
  std::string re_in, re_out, re_solver = "pcg-tree";
  double re_eps = 0.5;
  bool re_exact = false;
  CLI::App* resist_cmd =
      app.add_subcommand("resistances", "estimate effective resistances of every edge");
  resist_cmd->add_option("input", re_in, "edge-list or matrix-market file")->required();
  resist_cmd->add_option("--out", re_out, "output lines 'u v r' (report at <out>.report)")
      ->required();
  resist_cmd->add_option("--eps", re_eps,
                         "total budget; splits into sketch and solver parts (default 0.5)");
  resist_cmd->add_flag("--exact", re_exact, "one solve per edge instead of the sketch");
  resist_cmd->add_option("--solver", re_solver,
                         "pcg-tree | pcg-incremental | dense | chebyshev");
  add_common(resist_cmd, &re_c);

  Common ls_c;
  std::string ls_in, ls_out;
  bool ls_fast = false;
  CLI::App* lst_cmd = app.add_subcommand("lst", "build a low-stretch spanning tree");
  lst_cmd->add_option("input", ls_in, "edge-list or matrix-market file")->required();
  lst_cmd->add_option("--out", ls_out, "tree edge list (report at <out>.report)")->required();
  lst_cmd->add_flag("--fast", ls_fast, "cut-sparsify first, then build the tree");
  add_common(lst_cmd, &ls_c);

  Common so_c;
  std::string so_in, so_b, so_out, so_solver = "pcg-tree";
  double so_delta = 1e-6;
  CLI::App* solve_cmd = app.add_subcommand("solve", "solve L x = b");
  solve_cmd->add_option("input", so_in, "edge-list or matrix-market file")->required();
  solve_cmd->add_option("--b", so_b, "right-hand side, whitespace-separated doubles")
      ->required();
  solve_cmd->add_option("--out", so_out, "solution vector (report at <out>.report)")->required();
  solve_cmd->add_option("--solver", so_solver, "pcg-tree | pcg-incremental | dense | chebyshev");
  solve_cmd->add_option("--delta", so_delta, "relative L-norm error bound (default 1e-6)");
  add_common(solve_cmd, &so_c);

  Common fi_c;
  std::string fi_in, fi_out;
  double fi_eps = 0.5;
  bool fi_norm = false;
  CLI::App* fiedler_cmd = app.add_subcommand("fiedler", "approximate Fiedler vector");
  fiedler_cmd->add_option("input", fi_in, "edge-list or matrix-market file")->required();
  fiedler_cmd->add_option("--out", fi_out,
                          "eigenvector estimate (default <input>.fiedler; report at <out>.report)");
  fiedler_cmd->add_option("--eps", fi_eps, "approximation budget (default 0.5)");
  fiedler_cmd->add_flag("--normalized", fi_norm, "use the degree-normalized Laplacian");
  add_common(fiedler_cmd, &fi_c);

  Common ve_c;
  std::string ve_in, ve_sparse, ve_out;
  double ve_eps = 0.5;
  CLI::App* verify_cmd =
      app.add_subcommand("verify", "dense-oracle check that sparse is a (1 +- eps) sparsifier");
  verify_cmd->add_option("input", ve_in, "original graph")->required();
  verify_cmd->add_option("sparse", ve_sparse, "candidate sparsifier")->required();
  verify_cmd->add_option("--eps", ve_eps, "approximation budget (default 0.5)");
  verify_cmd->add_option("--out", ve_out, "also write the report here");
  add_common(verify_cmd, &ve_c);

  Common be_c;
  std::string be_algo = "general";
  std::vector<int> be_sizes = {10000, 30000, 100000, 300000};
  double be_eps = 0.5;
  bool be_fit = false;
  CLI::App* bench_cmd = app.add_subcommand("bench", "time a pipeline over random graphs");
  bench_cmd->add_option("--algo", be_algo, "pipeline to time (default general)");
  bench_cmd->add_option("--sizes", be_sizes, "comma-separated edge counts")
      ->delimiter(',')
      ->allow_extra_args(false);
  bench_cmd->add_option("--eps", be_eps, "approximation budget (default 0.5)");
  bench_cmd->add_flag("--fit", be_fit, "print fitted scaling exponents");
  add_common(bench_cmd, &be_c);

  try {
    std::vector<const char*> argv;
    argv.push_back("resparse");
    for (const std::string& a : args) argv.push_back(a.c_str());
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (sparsify_cmd->parsed()) return do_sparsify(sp_in, sp_out, sp_algo, sp_eps, sp_verify, sp_c);
    if (resist_cmd->parsed()) return do_resistances(re_in, re_out, re_eps, re_exact, re_solver, re_c);
    if (lst_cmd->parsed()) return do_lst(ls_in, ls_out, ls_fast, ls_c);
    if (solve_cmd->parsed()) return do_solve(so_in, so_b, so_out, so_solver, so_delta, so_c);
    if (fiedler_cmd->parsed()) return do_fiedler(fi_in, fi_out, fi_eps, fi_norm, fi_c);
    if (verify_cmd->parsed()) return do_verify(ve_in, ve_sparse, ve_eps, ve_out, ve_c);
    if (bench_cmd->parsed()) return do_bench(be_algo, be_sizes, be_eps, be_fit, be_c);
  } catch (const MaxIterationsExceeded& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}

}  // namespace resparse
