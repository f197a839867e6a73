#include "cli.hpp"

#include <CLI11.hpp>

#include <exception>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

#include "gmatch/algorithms.hpp"
#include "gmatch/experiment.hpp"
#include "gmatch/graph.hpp"
#include "gmatch/selftest.hpp"

namespace gmatch::cli {

namespace {

struct ConfigFlags {
  double epsilon = kDefaultEpsilon;
  std::size_t ppa_max_iters = 30;
  double eigen_tol = kDefaultEigenTol;
  std::size_t eigen_max_iters = kDefaultEigenMaxIters;

  void attach(CLI::App* cmd) {
    cmd->add_option("--epsilon", epsilon, "Score regulariser; s3 = epsilon")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    cmd->add_option("--ppa-max-iters", ppa_max_iters, "Projected power iteration cap")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    cmd->add_option("--eigen-tol", eigen_tol, "Power-method stopping tolerance")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    cmd->add_option("--eigen-max-iters", eigen_max_iters, "Power-method iteration cap")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
  }

  AlignConfig config() const {
    return {.epsilon = epsilon,
            .eigen_tol = eigen_tol,
            .eigen_max_iters = eigen_max_iters,
            .ppa_max_iters = ppa_max_iters};
  }
};

struct SweepFlags {
  std::vector<std::size_t> n_list = {10, 20, 30, 40, 50};
  double p = 0.2;
  std::vector<double> lambda_list = {0.0, 0.05, 0.1, 0.15, 0.2, 0.25, 0.3, 0.35, 0.4, 0.45, 0.5};
  std::size_t trials = 20;
  std::uint64_t seed = 0;
  std::string algo = "both";
  std::string csv;
  std::string heatmap;
  bool log_scale = false;
  bool timing = false;
  std::size_t workers = 1;
  ConfigFlags cfg;
};

struct MatchFlags {
  std::string g1;
  std::string g2;
  std::string algo = "ppa";
  std::string out;
  ConfigFlags cfg;
};

struct SelftestFlags {
  std::size_t max_n = 6;
  std::uint64_t seed = 0;
};

Graph load_graph(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  try {
    return parse_edge_list(in);
  } catch (const std::exception& e) {
    throw std::runtime_error(path + ": " + e.what());
  }
}

int cmd_sweep(const SweepFlags& f, std::ostream& err) {
  GridSpec grid;
  grid.n_list = f.n_list;
  grid.lambda_list = f.lambda_list;
  grid.p = f.p;
  grid.trials = f.trials;
  grid.base_seed = f.seed;
  grid.cfg = f.cfg.config();
  if (f.algo == "eigenalign") {
    grid.algorithms = {Algorithm::kEigenAlign};
  } else if (f.algo == "ppa") {
    grid.algorithms = {Algorithm::kProjectedPower};
  }

  const auto records = run_grid(grid, f.workers, [&err](std::size_t done, std::size_t total) {
    if (done == total || done % 20 == 0) err << "\r" << done << "/" << total << " instances" << std::flush;
  });
  err << '\n';
  write_csv_file(records, f.csv, {.include_wall_time = f.timing});

  for (const TrialRecord& r : records) {
    if (r.failed) {
      err << "trial n=" << r.n << " lambda=" << r.lambda << " #" << r.trial << " ("
          << algorithm_name(r.algorithm) << ") failed: " << r.failure_reason << '\n';
    }
  }

  const auto summary = summarize(records);
  for (const CellSummary& c : summary) {
    err << "n=" << c.n << " lambda=" << c.lambda << " " << algorithm_name(c.algorithm)
        << ": mean recovery " << c.mean_recovery << ", exact " << c.exact_rate << '\n';
  }
  if (!f.heatmap.empty()) {
    for (const Algorithm algo : grid.algorithms) {
      const auto path = heatmap_path_for(f.heatmap, algo);
      write_heatmap_files(summary, algo, {.log_scale = f.log_scale}, path);
      err << "wrote " << path.string() << '\n';
    }
  }
  return 0;
}

int cmd_match(const MatchFlags& f, std::ostream& out) {
  const Graph g1 = load_graph(f.g1);
  const Graph g2 = load_graph(f.g2);
  const AlignConfig cfg = f.cfg.config();
  const AlignmentOperator op = build_alignment_operator(g1, g2, cfg.epsilon);
  const AlignmentResult res = align(op, *parse_algorithm(f.algo), cfg);

  std::ostringstream text;
  text << std::setprecision(10);
  for (std::size_t i = 0; i < res.permutation.size(); ++i) {
    text << i << " -> " << res.permutation[i] << '\n';
  }
  text << "matched_edges " << res.matched_edges << '\n'
       << "objective " << res.objective << '\n'
       << "iterations " << res.iterations << '\n'
       << "converged " << (res.converged ? "true" : "false") << '\n';

  if (f.out.empty()) {
    out << text.str();
  } else {
    std::ofstream file(f.out, std::ios::binary);
    if (!file) throw std::runtime_error("cannot open '" + f.out + "' for writing");
    file << text.str();
    if (!file) throw std::runtime_error("failed writing '" + f.out + "'");
  }
  return 0;
}

int cmd_selftest(const SelftestFlags& f, std::ostream& out) {
  SelftestOptions opts;
  opts.max_n = f.max_n;
  opts.seed = f.seed;
  bool all = true;
  for (const SuiteResult& s : run_selftest(opts)) {
    out << (s.passed ? "PASS " : "FAIL ") << s.name << " (" << s.cases << " cases): " << s.detail
        << '\n';
    all = all && s.passed;
  }
  return all ? 0 : 1;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Graph matching by spectral alignment and projected power iteration", "gmatch"};
  app.require_subcommand(1);

  SweepFlags sweep;
  CLI::App* sweep_cmd = app.add_subcommand("sweep", "Planted-instance recovery sweep over (n, lambda)");
  sweep_cmd->add_option("--n", sweep.n_list, "Vertex counts (comma list)")
      ->delimiter(',')
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  sweep_cmd->add_option("--p", sweep.p, "Erdos-Renyi edge probability")
      ->check(CLI::Range(0.0, 1.0))
      ->capture_default_str();
  sweep_cmd->add_option("--lambda", sweep.lambda_list, "Noise levels (comma list)")
      ->delimiter(',')
      ->check(CLI::Range(0.0, 1.0))
      ->capture_default_str();
  sweep_cmd->add_option("--trials", sweep.trials, "Trials per cell")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  sweep_cmd->add_option("--seed", sweep.seed, "Base seed")->capture_default_str();
  sweep_cmd->add_option("--algo", sweep.algo, "eigenalign, ppa or both")
      ->check(CLI::IsMember({"eigenalign", "ppa", "both"}))
      ->capture_default_str();
  sweep_cmd->add_option("--csv", sweep.csv, "Output CSV path")->required();
  sweep_cmd->add_option("--heatmap", sweep.heatmap,
                        "PGM heatmap path; the algorithm name is inserted before the extension");
  sweep_cmd->add_flag("--log-scale", sweep.log_scale, "Logarithmic gray mapping for heatmaps");
  sweep_cmd->add_flag("--timing", sweep.timing,
                      "Write measured wall_seconds (otherwise 0, keeping output reproducible)");
  sweep_cmd->add_option("--workers", sweep.workers, "Worker threads")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  sweep.cfg.attach(sweep_cmd);

  MatchFlags match;
  CLI::App* match_cmd = app.add_subcommand("match", "Align two edge-list graphs");
  match_cmd->add_option("--g1", match.g1, "First graph (edge list)")->required();
  match_cmd->add_option("--g2", match.g2, "Second graph (edge list)")->required();
  match_cmd->add_option("--algo", match.algo, "eigenalign or ppa")
      ->check(CLI::IsMember({"eigenalign", "ppa"}))
      ->capture_default_str();
  match_cmd->add_option("--out", match.out, "Output path (default: standard output)");
  match.cfg.attach(match_cmd);

  SelftestFlags selftest;
  CLI::App* selftest_cmd = app.add_subcommand("selftest", "Run the built-in oracle suites");
  selftest_cmd->add_option("--max-n", selftest.max_n, "Largest n for brute-force oracles")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  selftest_cmd->add_option("--seed", selftest.seed, "Seed for random cases")->capture_default_str();

  std::vector<std::string> rest(args.size() > 1 ? args.begin() + 1 : args.end(), args.end());
  std::reverse(rest.begin(), rest.end());
  try {
    app.parse(rest);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err);
  }

  try {
    if (sweep_cmd->parsed()) return cmd_sweep(sweep, err);
    if (match_cmd->parsed()) return cmd_match(match, out);
    if (selftest_cmd->parsed()) return cmd_selftest(selftest, out);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
  return 1;
}

}  // namespace gmatch::cli
