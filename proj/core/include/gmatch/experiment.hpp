#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "gmatch/algorithms.hpp"
#include "gmatch/graph.hpp"

namespace gmatch {

// Random streams of one planted instance. Values are part of the seed
// derivation and must never change.
enum class StreamPurpose : std::uint64_t { kGraph = 1, kNoise = 2, kPermutation = 3 };

// Stream id for (instance, purpose): the words base_seed, n, round(p * 1e6),
// round(lambda * 1e6), trial and purpose are folded left to right with
// hash_combine (SplitMix64 finalizer) starting from 0x6A09E667F3BCC908. The
// algorithm is deliberately not an input, so every algorithm sees the same
// instance.
std::uint64_t derive_stream_id(std::uint64_t base_seed, std::size_t n, double p, double lambda,
                               std::size_t trial, StreamPurpose purpose);

struct PlantedInstance {
  Graph g1;
  Graph g2;             // permute(apply_noise(g1, lambda), planted)
  Permutation planted;  // g1 vertex i corresponds to g2 vertex planted[i]
};

PlantedInstance make_planted_instance(std::size_t n, double p, double lambda, std::size_t trial,
                                      std::uint64_t base_seed);

struct TrialSpec {
  std::size_t n = 0;
  double p = 0.0;
  double lambda = 0.0;
  std::size_t trial_index = 0;
  std::uint64_t base_seed = 0;
  Algorithm algorithm = Algorithm::kEigenAlign;
  AlignConfig cfg;
};

struct TrialRecord {
  std::size_t n = 0;
  double p = 0.0;
  double lambda = 0.0;
  std::size_t trial = 0;
  std::uint64_t base_seed = 0;
  Algorithm algorithm = Algorithm::kEigenAlign;

  double recovery_fraction = 0.0;  // share of vertices mapped as planted
  bool exact = false;              // recovered permutation equals the planted one
  std::size_t matched_edges = 0;
  double objective = 0.0;
  double objective_ratio = 0.0;    // objective / planted objective
  std::size_t iterations = 0;
  bool converged = false;
  double wall_seconds = 0.0;

  std::size_t g1_edges = 0;
  std::size_t g2_edges = 0;
  double planted_objective = 0.0;

  // Set when the algorithm threw (e.g. a degenerate balance ratio); the
  // numeric fields are then meaningless and serialised as 0 / nan.
  bool failed = false;
  std::string failure_reason;
};

TrialRecord run_trial(const TrialSpec& spec);

// Runs every algorithm in `algorithms` on one shared instance and operator.
std::vector<TrialRecord> run_instance(std::size_t n, double p, double lambda, std::size_t trial,
                                      std::uint64_t base_seed, std::span<const Algorithm> algorithms,
                                      const AlignConfig& cfg);

struct GridSpec {
  std::vector<std::size_t> n_list;
  std::vector<double> lambda_list;
  double p = 0.2;
  std::size_t trials = 20;
  std::vector<Algorithm> algorithms = {Algorithm::kEigenAlign, Algorithm::kProjectedPower};
  std::uint64_t base_seed = 0;
  AlignConfig cfg;
};

void validate(const GridSpec& grid);

using ProgressFn = std::function<void(std::size_t done, std::size_t total)>;

// One record per (n, lambda, trial, algorithm), sorted by
// (n, lambda, algorithm, trial). Instances are distributed over `workers`
// threads; the output does not depend on scheduling.
std::vector<TrialRecord> run_grid(const GridSpec& grid, std::size_t workers = 1,
                                  const ProgressFn& progress = {});

// Canonical record order: (n, lambda, algorithm, trial).
void sort_records(std::vector<TrialRecord>& records);

struct CellSummary {
  std::size_t n = 0;
  double p = 0.0;
  double lambda = 0.0;
  Algorithm algorithm = Algorithm::kEigenAlign;
  std::size_t trials = 0;  // records in the cell, failed ones included
  std::size_t failed = 0;
  // Means over the non-failed records; nan when every trial failed.
  double mean_recovery = 0.0;
  double mean_objective_ratio = 0.0;
  double exact_rate = 0.0;
  double mean_iterations = 0.0;
};

// Per-(n, lambda, algorithm) means, ordered like the records. Throws on empty
// input.
std::vector<CellSummary> summarize(std::span<const TrialRecord> records);

struct CsvOptions {
  // When false the wall_seconds column is written as 0 so that repeated runs
  // are byte-identical.
  bool include_wall_time = true;
};

inline constexpr const char* kCsvHeader =
    "n,p,lambda,algorithm,trial,recovery_fraction,exact,matched_edges,objective,objective_ratio,"
    "iterations,wall_seconds";

// Header plus one row per record in canonical order; reals use 6 significant
// digits.
void write_csv(std::span<const TrialRecord> records, std::ostream& out, const CsvOptions& opts = {});
void write_csv_file(std::span<const TrialRecord> records, const std::filesystem::path& path,
                    const CsvOptions& opts = {});

// Reads back what write_csv produces. Fields absent from the CSV keep their
// defaults; rows with a nan objective are marked failed.
std::vector<TrialRecord> parse_csv(std::istream& in);

struct HeatmapOptions {
  // Maps mean recovery r to 255 log(1 + 99 r) / log(100) instead of 255 r.
  bool log_scale = false;
};

int gray_level(double mean_recovery, bool log_scale);

// Plain PGM (P2): one row per lambda (ascending), one column per n
// (ascending), gray = round(255 * mapped mean recovery). Missing or all-failed
// cells are 0.
void render_heatmap(std::span<const CellSummary> summary, Algorithm algo,
                    const HeatmapOptions& opts, std::ostream& out);
void render_heatmap_legend(std::span<const CellSummary> summary, Algorithm algo,
                           const HeatmapOptions& opts, std::ostream& out);

// "dir/heat.pgm" -> "dir/heat_ppa.pgm".
std::filesystem::path heatmap_path_for(const std::filesystem::path& base, Algorithm algo);

// Writes the PGM at `path` and its legend at `path` + ".txt".
void write_heatmap_files(std::span<const CellSummary> summary, Algorithm algo,
                         const HeatmapOptions& opts, const std::filesystem::path& path);

}  // namespace gmatch
