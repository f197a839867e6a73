#include "gmatch/experiment.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace gmatch {
namespace {

std::string csv_of(const std::vector<TrialRecord>& records, bool timing = false) {
  std::ostringstream out;
  write_csv(records, out, {.include_wall_time = timing});
  return out.str();
}

TEST(StreamIdTest, DependsOnEveryInstanceCoordinate) {
  const std::uint64_t base = derive_stream_id(1, 20, 0.2, 0.05, 3, StreamPurpose::kGraph);
  EXPECT_EQ(base, derive_stream_id(1, 20, 0.2, 0.05, 3, StreamPurpose::kGraph));
  EXPECT_NE(base, derive_stream_id(2, 20, 0.2, 0.05, 3, StreamPurpose::kGraph));
  EXPECT_NE(base, derive_stream_id(1, 21, 0.2, 0.05, 3, StreamPurpose::kGraph));
  EXPECT_NE(base, derive_stream_id(1, 20, 0.3, 0.05, 3, StreamPurpose::kGraph));
  EXPECT_NE(base, derive_stream_id(1, 20, 0.2, 0.06, 3, StreamPurpose::kGraph));
  EXPECT_NE(base, derive_stream_id(1, 20, 0.2, 0.05, 4, StreamPurpose::kGraph));
  EXPECT_NE(base, derive_stream_id(1, 20, 0.2, 0.05, 3, StreamPurpose::kNoise));
}

TEST(PlantedInstanceTest, FollowsTheNoiseThenRelabelConstruction) {
  const PlantedInstance inst = make_planted_instance(15, 0.3, 0.1, 2, 99);
  auto seed = [](StreamPurpose purpose) {
    return RngSeed{99, derive_stream_id(99, 15, 0.3, 0.1, 2, purpose)};
  };
  const Graph g1 = generate_er(15, 0.3, seed(StreamPurpose::kGraph));
  const Permutation planted = random_permutation(15, seed(StreamPurpose::kPermutation));
  const Graph g2 = permute(apply_noise(g1, 0.1, seed(StreamPurpose::kNoise)), planted);
  EXPECT_EQ(inst.g1, g1);
  EXPECT_EQ(inst.g2, g2);
  EXPECT_EQ(inst.planted, planted);
}

TEST(RunTrialTest, NoiselessAlignmentIsPerfect) {
  for (const Algorithm algo : {Algorithm::kEigenAlign, Algorithm::kProjectedPower}) {
    const TrialRecord r = run_trial({.n = 20, .p = 0.2, .lambda = 0.0, .trial_index = 1,
                                     .base_seed = 0, .algorithm = algo, .cfg = {}});
    EXPECT_FALSE(r.failed);
    EXPECT_EQ(r.matched_edges, r.g1_edges);
    EXPECT_NEAR(r.objective_ratio, 1.0, 1e-12);
  }
}

TEST(RunTrialTest, SingleVertex) {
  const TrialRecord r = run_trial({.n = 1, .p = 0.5, .lambda = 0.5, .trial_index = 0,
                                   .base_seed = 3, .algorithm = Algorithm::kProjectedPower, .cfg = {}});
  EXPECT_FALSE(r.failed);
  EXPECT_EQ(r.recovery_fraction, 1.0);
  EXPECT_TRUE(r.exact);
}

TEST(RunTrialTest, MatchesIndependentRecomputation) {
  const TrialSpec spec{.n = 6, .p = 0.5, .lambda = 0.1, .trial_index = 4, .base_seed = 17,
                       .algorithm = Algorithm::kEigenAlign, .cfg = {}};
  const TrialRecord r = run_trial(spec);
  ASSERT_FALSE(r.failed) << r.failure_reason;

  const PlantedInstance inst = make_planted_instance(6, 0.5, 0.1, 4, 17);
  const AlignmentResult res = eigen_align(inst.g1, inst.g2);
  std::size_t hits = 0;
  for (std::size_t i = 0; i < 6; ++i) hits += res.permutation[i] == inst.planted[i];
  EXPECT_EQ(r.recovery_fraction, hits / 6.0);
  EXPECT_EQ(r.matched_edges, res.matched_edges);
  EXPECT_EQ(r.exact, hits == 6);
  EXPECT_GE(r.recovery_fraction, 0.0);
  EXPECT_LE(r.recovery_fraction, 1.0);
  EXPECT_GT(r.objective_ratio, 0.0);
}

TEST(RunTrialTest, ExactRecoveryMeansPlantedPermutation) {
  for (std::size_t t = 0; t < 10; ++t) {
    const TrialRecord r = run_trial({.n = 12, .p = 0.4, .lambda = 0.02, .trial_index = t,
                                     .base_seed = 5, .algorithm = Algorithm::kProjectedPower, .cfg = {}});
    EXPECT_EQ(r.exact, r.recovery_fraction == 1.0);
  }
}

TEST(RunTrialTest, DegenerateInstanceIsRecordedAsFailure) {
  const TrialRecord r = run_trial({.n = 8, .p = 0.0, .lambda = 0.0, .trial_index = 0,
                                   .base_seed = 0, .algorithm = Algorithm::kEigenAlign, .cfg = {}});
  EXPECT_TRUE(r.failed);
  EXPECT_NE(r.failure_reason.find("balance"), std::string::npos);
}

TEST(RunGridTest, SharedInstancesAcrossAlgorithms) {
  GridSpec grid{.n_list = {12}, .lambda_list = {0.05}, .p = 0.3, .trials = 1};
  const auto records = run_grid(grid);
  ASSERT_EQ(records.size(), 2u);
  EXPECT_EQ(records[0].algorithm, Algorithm::kEigenAlign);
  EXPECT_EQ(records[1].algorithm, Algorithm::kProjectedPower);
  EXPECT_EQ(records[0].g1_edges, records[1].g1_edges);
  EXPECT_EQ(records[0].g2_edges, records[1].g2_edges);
  EXPECT_EQ(records[0].planted_objective, records[1].planted_objective);
}

TEST(RunGridTest, CardinalityOrderAndWorkerIndependence) {
  GridSpec grid{.n_list = {20, 10}, .lambda_list = {0.05, 0.0}, .p = 0.2, .trials = 20, .base_seed = 4};
  const auto serial = run_grid(grid, 1);
  ASSERT_EQ(serial.size(), 160u);
  for (std::size_t k = 1; k < serial.size(); ++k) {
    const auto& a = serial[k - 1];
    const auto& b = serial[k];
    EXPECT_LE(std::make_tuple(a.n, a.lambda, algorithm_name(a.algorithm), a.trial),
              std::make_tuple(b.n, b.lambda, algorithm_name(b.algorithm), b.trial));
  }
  const auto parallel = run_grid(grid, 8);
  EXPECT_EQ(csv_of(serial), csv_of(parallel));
}

TEST(RunGridTest, ValidatesGrid) {
  EXPECT_THROW(run_grid(GridSpec{.n_list = {}, .lambda_list = {0.0}}), std::invalid_argument);
  EXPECT_THROW(run_grid(GridSpec{.n_list = {5}, .lambda_list = {0.0}, .trials = 0}), std::invalid_argument);
  EXPECT_THROW(run_grid(GridSpec{.n_list = {5}, .lambda_list = {1.5}}), std::invalid_argument);
  EXPECT_THROW(run_grid(GridSpec{.n_list = {5}, .lambda_list = {0.1}, .algorithms = {}}),
               std::invalid_argument);
}

TEST(RunGridTest, NoiseLowersRecoveryOnAverage) {
  GridSpec grid{.n_list = {30}, .lambda_list = {0.0, 0.3}, .p = 0.2, .trials = 20};
  const auto summary = summarize(run_grid(grid));
  ASSERT_EQ(summary.size(), 4u);
  for (const Algorithm algo : {Algorithm::kEigenAlign, Algorithm::kProjectedPower}) {
    double clean = -1, noisy = -1;
    for (const CellSummary& c : summary) {
      if (c.algorithm != algo) continue;
      (c.lambda == 0.0 ? clean : noisy) = c.mean_recovery;
    }
    EXPECT_GE(clean, noisy);
  }
}

TrialRecord make_record(double recovery, double ratio, std::size_t trial, bool exact = false) {
  TrialRecord r;
  r.n = 10;
  r.p = 0.2;
  r.lambda = 0.05;
  r.trial = trial;
  r.recovery_fraction = recovery;
  r.objective_ratio = ratio;
  r.objective = 100.0 * ratio;
  r.exact = exact;
  r.iterations = trial + 1;
  return r;
}

TEST(SummarizeTest, SingleAndPairedRecords) {
  const auto one = summarize(std::vector{make_record(0.4, 0.9, 0)});
  ASSERT_EQ(one.size(), 1u);
  EXPECT_EQ(one[0].mean_recovery, 0.4);
  EXPECT_EQ(one[0].mean_objective_ratio, 0.9);
  EXPECT_EQ(one[0].mean_iterations, 1.0);

  const auto two = summarize(std::vector{make_record(0.0, 1.0, 0), make_record(1.0, 1.0, 1, true)});
  EXPECT_EQ(two[0].mean_recovery, 0.5);
  EXPECT_EQ(two[0].exact_rate, 0.5);
  EXPECT_THROW(summarize(std::vector<TrialRecord>{}), std::invalid_argument);
}

TEST(SummarizeTest, TwentyRecordMeanMatchesReversedPass) {
  std::vector<TrialRecord> records;
  Rng rng({100, 0});
  for (std::size_t t = 0; t < 20; ++t) records.push_back(make_record(rng.uniform01(), 0.5 + rng.uniform01(), t));
  double reversed = 0.0;
  for (auto it = records.rbegin(); it != records.rend(); ++it) reversed += it->recovery_fraction;
  const auto cell = summarize(records);
  EXPECT_NEAR(cell[0].mean_recovery, reversed / 20.0, 1e-15);
  EXPECT_EQ(cell[0].trials, 20u);
}

TEST(SummarizeTest, FailedTrialsAreCountedButNotAveraged) {
  std::vector records{make_record(0.6, 1.0, 0), make_record(0.0, 0.0, 1)};
  records[1].failed = true;
  const auto cell = summarize(records);
  EXPECT_EQ(cell[0].failed, 1u);
  EXPECT_EQ(cell[0].mean_recovery, 0.6);
}

TEST(CsvTest, HeaderAndSingleRow) {
  const std::string text = csv_of({make_record(0.25, 0.987654321, 3)});
  std::istringstream in(text);
  std::string header, row, extra;
  std::getline(in, header);
  std::getline(in, row);
  EXPECT_FALSE(std::getline(in, extra));
  EXPECT_EQ(header, kCsvHeader);
  EXPECT_EQ(row, "10,0.2,0.05,eigenalign,3,0.25,0,0,98.7654,0.987654,4,0");
}

TEST(CsvTest, RoundTripThroughParser) {
  GridSpec grid{.n_list = {8, 12}, .lambda_list = {0.0, 0.1}, .p = 0.3, .trials = 3};
  auto records = run_grid(grid);
  records.push_back(run_trial({.n = 8, .p = 0.0, .lambda = 0.0, .trial_index = 0,
                               .base_seed = 0, .algorithm = Algorithm::kProjectedPower, .cfg = {}}));
  const std::string text = csv_of(records, true);
  std::istringstream in(text);
  const auto parsed = parse_csv(in);
  ASSERT_EQ(parsed.size(), records.size());
  EXPECT_EQ(csv_of(parsed, true), text);
  EXPECT_EQ(std::count_if(parsed.begin(), parsed.end(), [](const TrialRecord& r) { return r.failed; }), 1);
}

TEST(CsvTest, ParserRejectsGarbage) {
  std::istringstream bad_header("n,p\n");
  EXPECT_THROW(parse_csv(bad_header), std::runtime_error);
  std::istringstream bad_row(std::string(kCsvHeader) + "\n1,2,3\n");
  EXPECT_THROW(parse_csv(bad_row), std::runtime_error);
}

TEST(CsvTest, UnwritablePathNamesTheFile) {
  try {
    write_csv_file(std::vector{make_record(1, 1, 0)}, "/nonexistent-dir/x.csv");
    FAIL();
  } catch (const std::runtime_error& e) {
    EXPECT_NE(std::string(e.what()).find("/nonexistent-dir/x.csv"), std::string::npos);
  }
}

TEST(HeatmapTest, GrayEndpointsAndLogScale) {
  EXPECT_EQ(gray_level(1.0, false), 255);
  EXPECT_EQ(gray_level(0.0, false), 0);
  EXPECT_EQ(gray_level(0.5, false), 128);
  EXPECT_EQ(gray_level(1.0, true), 255);
  EXPECT_EQ(gray_level(0.0, true), 0);
  EXPECT_GT(gray_level(0.05, true), gray_level(0.05, false));
  EXPECT_EQ(gray_level(std::nan(""), false), 0);
}

TEST(HeatmapTest, RendersRowsByLambdaAndColumnsByN) {
  std::vector<CellSummary> summary;
  auto cell = [](std::size_t n, double lambda, double r) {
    CellSummary c;
    c.n = n;
    c.p = 0.2;
    c.lambda = lambda;
    c.algorithm = Algorithm::kProjectedPower;
    c.trials = 1;
    c.mean_recovery = r;
    return c;
  };
  summary.push_back(cell(20, 0.1, 0.0));
  summary.push_back(cell(10, 0.0, 1.0));
  summary.push_back(cell(20, 0.0, 1.0));
  summary.push_back(cell(10, 0.1, 0.5));
  std::ostringstream out;
  render_heatmap(summary, Algorithm::kProjectedPower, {}, out);
  EXPECT_EQ(out.str(), "P2\n2 2\n255\n255 255\n128 0\n");
  std::ostringstream none;
  EXPECT_THROW(render_heatmap(summary, Algorithm::kEigenAlign, {}, none), std::invalid_argument);

  std::ostringstream legend;
  render_heatmap_legend(summary, Algorithm::kProjectedPower, {.log_scale = true}, legend);
  EXPECT_NE(legend.str().find("columns n: 10 20"), std::string::npos);
  EXPECT_NE(legend.str().find("rows lambda: 0 0.1"), std::string::npos);
}

TEST(HeatmapTest, PathSuffixAndFiles) {
  EXPECT_EQ(heatmap_path_for("out/heat.pgm", Algorithm::kProjectedPower), "out/heat_ppa.pgm");
  EXPECT_EQ(heatmap_path_for("heat", Algorithm::kEigenAlign), "heat_eigenalign");

  const auto dir = std::filesystem::temp_directory_path() / "gmatch_heatmap_test";
  std::filesystem::create_directories(dir);
  GridSpec grid{.n_list = {8}, .lambda_list = {0.0}, .p = 0.4, .trials = 2};
  const auto summary = summarize(run_grid(grid));
  const auto path = dir / "h_ppa.pgm";
  write_heatmap_files(summary, Algorithm::kProjectedPower, {}, path);
  EXPECT_TRUE(std::filesystem::exists(path));
  EXPECT_TRUE(std::filesystem::exists(dir / "h_ppa.pgm.txt"));
  std::filesystem::remove_all(dir);
}

}  // namespace
}  // namespace gmatch
