#include "gmatch/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <limits>
#include <map>
#include <mutex>
#include <ostream>
#include <set>
#include <sstream>
#include <stdexcept>
#include <thread>
#include <tuple>

#include "gmatch/errors.hpp"

namespace gmatch {

namespace {

constexpr std::uint64_t kStreamSalt = 0x6A09E667F3BCC908ULL;

std::uint64_t quantize(double x) {
  return static_cast<std::uint64_t>(std::llround(x * 1e6));
}

std::string format_real(double x) {
  if (std::isnan(x)) return "nan";
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.6g", x);
  return buf;
}

auto record_key(const TrialRecord& r) {
  return std::make_tuple(r.n, r.lambda, algorithm_name(r.algorithm), r.trial);
}

}  // namespace

std::uint64_t derive_stream_id(std::uint64_t base_seed, std::size_t n, double p, double lambda,
                               std::size_t trial, StreamPurpose purpose) {
  std::uint64_t h = kStreamSalt;
  h = hash_combine(h, base_seed);
  h = hash_combine(h, n);
  h = hash_combine(h, quantize(p));
  h = hash_combine(h, quantize(lambda));
  h = hash_combine(h, trial);
  h = hash_combine(h, static_cast<std::uint64_t>(purpose));
  return h;
}

PlantedInstance make_planted_instance(std::size_t n, double p, double lambda, std::size_t trial,
                                      std::uint64_t base_seed) {
  auto seed = [&](StreamPurpose purpose) {
    return RngSeed{base_seed, derive_stream_id(base_seed, n, p, lambda, trial, purpose)};
  };
  Graph g1 = generate_er(n, p, seed(StreamPurpose::kGraph));
  const Graph noisy = apply_noise(g1, lambda, seed(StreamPurpose::kNoise));
  Permutation planted = random_permutation(n, seed(StreamPurpose::kPermutation));
  Graph g2 = permute(noisy, planted);
  return {std::move(g1), std::move(g2), std::move(planted)};
}

std::vector<TrialRecord> run_instance(std::size_t n, double p, double lambda, std::size_t trial,
                                      std::uint64_t base_seed, std::span<const Algorithm> algorithms,
                                      const AlignConfig& cfg) {
  const PlantedInstance inst = make_planted_instance(n, p, lambda, trial, base_seed);

  std::vector<TrialRecord> records;
  TrialRecord base;
  base.n = n;
  base.p = p;
  base.lambda = lambda;
  base.trial = trial;
  base.base_seed = base_seed;
  base.g1_edges = inst.g1.edge_count();
  base.g2_edges = inst.g2.edge_count();

  std::optional<AlignmentOperator> op;
  std::string setup_error;
  try {
    op.emplace(build_alignment_operator(inst.g1, inst.g2, cfg.epsilon));
    base.planted_objective = quadratic_form(*op, inst.planted);
  } catch (const std::exception& e) {
    setup_error = e.what();
  }

  for (const Algorithm algo : algorithms) {
    TrialRecord rec = base;
    rec.algorithm = algo;
    if (!op) {
      rec.failed = true;
      rec.failure_reason = setup_error;
      rec.objective = rec.objective_ratio = std::numeric_limits<double>::quiet_NaN();
      records.push_back(std::move(rec));
      continue;
    }
    try {
      const auto start = std::chrono::steady_clock::now();
      const AlignmentResult res = align(*op, algo, cfg);
      const auto stop = std::chrono::steady_clock::now();
      rec.wall_seconds = std::chrono::duration<double>(stop - start).count();

      std::size_t hits = 0;
      for (std::size_t i = 0; i < n; ++i) hits += res.permutation[i] == inst.planted[i] ? 1 : 0;
      rec.recovery_fraction = static_cast<double>(hits) / static_cast<double>(n);
      rec.exact = hits == n;
      rec.matched_edges = res.matched_edges;
      rec.objective = res.objective;
      rec.objective_ratio = res.objective / base.planted_objective;
      rec.iterations = res.iterations;
      rec.converged = res.converged;
    } catch (const std::exception& e) {
      rec.failed = true;
      rec.failure_reason = e.what();
      rec.objective = rec.objective_ratio = std::numeric_limits<double>::quiet_NaN();
    }
    records.push_back(std::move(rec));
  }
  return records;
}

TrialRecord run_trial(const TrialSpec& spec) {
  const Algorithm algos[] = {spec.algorithm};
  return run_instance(spec.n, spec.p, spec.lambda, spec.trial_index, spec.base_seed, algos,
                      spec.cfg)
      .front();
}

void validate(const GridSpec& grid) {
  if (grid.n_list.empty() || grid.lambda_list.empty()) {
    throw std::invalid_argument("GridSpec: n and lambda grids must be non-empty");
  }
  if (grid.trials == 0) throw std::invalid_argument("GridSpec: trials must be >= 1");
  if (grid.algorithms.empty()) throw std::invalid_argument("GridSpec: no algorithms selected");
  if (!(grid.p >= 0.0 && grid.p <= 1.0)) throw std::invalid_argument("GridSpec: p must lie in [0, 1]");
  for (const std::size_t n : grid.n_list) {
    if (n == 0) throw std::invalid_argument("GridSpec: n must be positive");
  }
  for (const double l : grid.lambda_list) {
    if (!(l >= 0.0 && l <= 1.0)) throw std::invalid_argument("GridSpec: lambda must lie in [0, 1]");
  }
  validate(grid.cfg);
}

void sort_records(std::vector<TrialRecord>& records) {
  std::stable_sort(records.begin(), records.end(), [](const TrialRecord& a, const TrialRecord& b) {
    return record_key(a) < record_key(b);
  });
}

std::vector<TrialRecord> run_grid(const GridSpec& grid, std::size_t workers,
                                  const ProgressFn& progress) {
  validate(grid);
  struct Task {
    std::size_t n;
    double lambda;
    std::size_t trial;
  };
  std::vector<Task> tasks;
  for (const std::size_t n : grid.n_list) {
    for (const double lambda : grid.lambda_list) {
      for (std::size_t t = 0; t < grid.trials; ++t) tasks.push_back({n, lambda, t});
    }
  }

  std::vector<std::vector<TrialRecord>> slots(tasks.size());
  std::atomic<std::size_t> next{0};
  std::atomic<std::size_t> done{0};
  std::mutex progress_mutex;
  std::mutex error_mutex;
  std::exception_ptr first_error;

  auto worker = [&] {
    for (std::size_t k = next.fetch_add(1); k < tasks.size(); k = next.fetch_add(1)) {
      try {
        const Task& task = tasks[k];
        slots[k] = run_instance(task.n, grid.p, task.lambda, task.trial, grid.base_seed,
                                grid.algorithms, grid.cfg);
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!first_error) first_error = std::current_exception();
      }
      const std::size_t finished = done.fetch_add(1) + 1;
      if (progress) {
        std::lock_guard lock(progress_mutex);
        progress(finished, tasks.size());
      }
    }
  };

  workers = std::clamp<std::size_t>(workers, 1, std::max<std::size_t>(tasks.size(), 1));
  if (workers == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(worker);
  }
  if (first_error) std::rethrow_exception(first_error);

  std::vector<TrialRecord> records;
  records.reserve(tasks.size() * grid.algorithms.size());
  for (auto& slot : slots) {
    for (auto& rec : slot) records.push_back(std::move(rec));
  }
  sort_records(records);
  return records;
}

std::vector<CellSummary> summarize(std::span<const TrialRecord> records) {
  if (records.empty()) throw std::invalid_argument("summarize: no records");
  using Key = std::tuple<std::size_t, double, std::string_view>;
  std::map<Key, CellSummary> cells;
  for (const TrialRecord& r : records) {
    CellSummary& c = cells[{r.n, r.lambda, algorithm_name(r.algorithm)}];
    c.n = r.n;
    c.p = r.p;
    c.lambda = r.lambda;
    c.algorithm = r.algorithm;
    ++c.trials;
    if (r.failed) {
      ++c.failed;
      continue;
    }
    c.mean_recovery += r.recovery_fraction;
    c.mean_objective_ratio += r.objective_ratio;
    c.exact_rate += r.exact ? 1.0 : 0.0;
    c.mean_iterations += static_cast<double>(r.iterations);
  }
  std::vector<CellSummary> out;
  out.reserve(cells.size());
  for (auto& [key, c] : cells) {
    const std::size_t ok = c.trials - c.failed;
    const double denom = ok == 0 ? std::numeric_limits<double>::quiet_NaN()
                                 : static_cast<double>(ok);
    c.mean_recovery /= denom;
    c.mean_objective_ratio /= denom;
    c.exact_rate /= denom;
    c.mean_iterations /= denom;
    out.push_back(c);
  }
  return out;
}

void write_csv(std::span<const TrialRecord> records, std::ostream& out, const CsvOptions& opts) {
  std::vector<const TrialRecord*> order;
  order.reserve(records.size());
  for (const TrialRecord& r : records) order.push_back(&r);
  std::stable_sort(order.begin(), order.end(), [](const TrialRecord* a, const TrialRecord* b) {
    return record_key(*a) < record_key(*b);
  });

  out << kCsvHeader << '\n';
  for (const TrialRecord* r : order) {
    out << r->n << ',' << format_real(r->p) << ',' << format_real(r->lambda) << ','
        << algorithm_name(r->algorithm) << ',' << r->trial << ','
        << format_real(r->recovery_fraction) << ',' << (r->exact ? 1 : 0) << ','
        << r->matched_edges << ',' << format_real(r->objective) << ','
        << format_real(r->objective_ratio) << ',' << r->iterations << ','
        << format_real(opts.include_wall_time ? r->wall_seconds : 0.0) << '\n';
  }
}

void write_csv_file(std::span<const TrialRecord> records, const std::filesystem::path& path,
                    const CsvOptions& opts) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open '" + path.string() + "' for writing");
  write_csv(records, out, opts);
  out.flush();
  if (!out) throw std::runtime_error("failed writing '" + path.string() + "'");
}

namespace {

std::vector<std::string> split_commas(const std::string& line) {
  std::vector<std::string> fields;
  std::stringstream ss(line);
  std::string field;
  while (std::getline(ss, field, ',')) fields.push_back(field);
  if (!line.empty() && line.back() == ',') fields.emplace_back();
  return fields;
}

double parse_real(const std::string& s, std::size_t line) {
  if (s == "nan") return std::numeric_limits<double>::quiet_NaN();
  try {
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw ParseError(line, "bad real '" + s + "'");
  }
}

std::uint64_t parse_uint(const std::string& s, std::size_t line) {
  if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos) {
    throw ParseError(line, "bad integer '" + s + "'");
  }
  return std::stoull(s);
}

}  // namespace

std::vector<TrialRecord> parse_csv(std::istream& in) {
  std::string line;
  std::size_t line_no = 1;
  if (!std::getline(in, line) || line != kCsvHeader) {
    throw ParseError(line_no, "unexpected CSV header");
  }
  std::vector<TrialRecord> records;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    const auto f = split_commas(line);
    if (f.size() != 12) throw ParseError(line_no, "expected 12 fields");
    TrialRecord r;
    r.n = parse_uint(f[0], line_no);
    r.p = parse_real(f[1], line_no);
    r.lambda = parse_real(f[2], line_no);
    const auto algo = parse_algorithm(f[3]);
    if (!algo) throw ParseError(line_no, "unknown algorithm '" + f[3] + "'");
    r.algorithm = *algo;
    r.trial = parse_uint(f[4], line_no);
    r.recovery_fraction = parse_real(f[5], line_no);
    r.exact = parse_uint(f[6], line_no) != 0;
    r.matched_edges = parse_uint(f[7], line_no);
    r.objective = parse_real(f[8], line_no);
    r.objective_ratio = parse_real(f[9], line_no);
    r.iterations = parse_uint(f[10], line_no);
    r.wall_seconds = parse_real(f[11], line_no);
    r.failed = std::isnan(r.objective);
    records.push_back(std::move(r));
  }
  return records;
}

int gray_level(double mean_recovery, bool log_scale) {
  if (std::isnan(mean_recovery)) return 0;
  const double r = std::clamp(mean_recovery, 0.0, 1.0);
  const double mapped = log_scale ? std::log1p(99.0 * r) / std::log(100.0) : r;
  return static_cast<int>(std::lround(255.0 * mapped));
}

namespace {

struct HeatmapGrid {
  std::vector<std::size_t> ns;
  std::vector<double> lambdas;
  std::map<std::pair<std::size_t, double>, const CellSummary*> cells;
};

HeatmapGrid collect_grid(std::span<const CellSummary> summary, Algorithm algo) {
  HeatmapGrid grid;
  std::set<std::size_t> ns;
  std::set<double> lambdas;
  for (const CellSummary& c : summary) {
    ns.insert(c.n);
    lambdas.insert(c.lambda);
    if (c.algorithm == algo) grid.cells[{c.n, c.lambda}] = &c;
  }
  if (grid.cells.empty()) {
    throw std::invalid_argument("render_heatmap: no cells for algorithm " +
                                std::string(algorithm_name(algo)));
  }
  grid.ns.assign(ns.begin(), ns.end());
  grid.lambdas.assign(lambdas.begin(), lambdas.end());
  return grid;
}

}  // namespace

void render_heatmap(std::span<const CellSummary> summary, Algorithm algo,
                    const HeatmapOptions& opts, std::ostream& out) {
  const HeatmapGrid grid = collect_grid(summary, algo);
  out << "P2\n" << grid.ns.size() << ' ' << grid.lambdas.size() << "\n255\n";
  for (const double lambda : grid.lambdas) {
    for (std::size_t k = 0; k < grid.ns.size(); ++k) {
      const auto it = grid.cells.find({grid.ns[k], lambda});
      const int gray =
          it == grid.cells.end() ? 0 : gray_level(it->second->mean_recovery, opts.log_scale);
      out << (k == 0 ? "" : " ") << gray;
    }
    out << '\n';
  }
}

void render_heatmap_legend(std::span<const CellSummary> summary, Algorithm algo,
                           const HeatmapOptions& opts, std::ostream& out) {
  const HeatmapGrid grid = collect_grid(summary, algo);
  out << "algorithm " << algorithm_name(algo) << '\n';
  out << "p " << format_real(grid.cells.begin()->second->p) << '\n';
  out << "scale " << (opts.log_scale ? "log" : "linear") << '\n';
  out << "gray " << (opts.log_scale ? "round(255*log(1+99*r)/log(100))" : "round(255*r)")
      << " where r = mean recovery fraction\n";
  out << "columns n:";
  for (const std::size_t n : grid.ns) out << ' ' << n;
  out << "\nrows lambda:";
  for (const double l : grid.lambdas) out << ' ' << format_real(l);
  out << "\n";
  out << "cells (lambda, n, mean_recovery, exact_rate, trials, failed):\n";
  for (const double lambda : grid.lambdas) {
    for (const std::size_t n : grid.ns) {
      const auto it = grid.cells.find({n, lambda});
      if (it == grid.cells.end()) continue;
      const CellSummary& c = *it->second;
      out << format_real(lambda) << ' ' << n << ' ' << format_real(c.mean_recovery) << ' '
          << format_real(c.exact_rate) << ' ' << c.trials << ' ' << c.failed << '\n';
    }
  }
}

std::filesystem::path heatmap_path_for(const std::filesystem::path& base, Algorithm algo) {
  std::filesystem::path out = base;
  out.replace_filename(base.stem().string() + "_" + std::string(algorithm_name(algo)) +
                       base.extension().string());
  return out;
}

void write_heatmap_files(std::span<const CellSummary> summary, Algorithm algo,
                         const HeatmapOptions& opts, const std::filesystem::path& path) {
  {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open '" + path.string() + "' for writing");
    render_heatmap(summary, algo, opts, out);
    if (!out) throw std::runtime_error("failed writing '" + path.string() + "'");
  }
  const std::filesystem::path legend = path.string() + ".txt";
  std::ofstream out(legend, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open '" + legend.string() + "' for writing");
  render_heatmap_legend(summary, algo, opts, out);
  if (!out) throw std::runtime_error("failed writing '" + legend.string() + "'");
}

}  // namespace gmatch
