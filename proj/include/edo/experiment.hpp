#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "edo/engine.hpp"

namespace edo {

struct NamedInstance {
  std::string label;
  Instance instance;
};

/// Stable 64-bit hash of a label (FNV-1a), used as a seed coordinate.
std::uint64_t label_hash(std::string_view label);

int default_thread_count();

// Unconstrained runs -----------------------------------------------------------

struct UnconstrainedSpec {
  std::vector<NamedInstance> instances;
  std::vector<int> mus{3, 10, 20, 50};
  std::vector<MeasureKind> measures{MeasureKind::kNVector, MeasureKind::kDVector};
  std::string op = "2opt";
  int reps = 30;
  std::uint64_t seed = 1;
  std::optional<std::int64_t> budget;  // default mu * n^2
  int checkpoints = 1000;
  TieBreak tie_break = TieBreak::kRandom;
  int threads = 0;  // 0: hardware concurrency
};

struct UnconstrainedRun {
  std::string instance;
  int n = 0;
  int mu = 0;
  MeasureKind measure = MeasureKind::kNVector;
  std::string op;
  int rep = 0;
  std::int64_t budget = 0;
  RunRecord record;
};

struct TrajectoryPoint {
  std::int64_t iteration = 0;
  double mean_d1 = 0, std_d1 = 0, mean_d2 = 0, std_d2 = 0;
};

struct UnconstrainedCell {
  std::string instance;
  int n = 0;
  int mu = 0;
  MeasureKind measure = MeasureKind::kNVector;
  std::string op;
  int reps = 0;
  int terminated = 0;
  double mean_steps = 0, std_steps = 0;
  std::vector<TrajectoryPoint> trajectory;
};

/// Mean/std across runs at the union of checkpoint iterations; a run that
/// stopped early keeps its last value.
UnconstrainedCell aggregate_unconstrained(const std::vector<const UnconstrainedRun*>& runs);

struct UnconstrainedResult {
  std::vector<UnconstrainedRun> runs;
  std::vector<UnconstrainedCell> cells;
};

UnconstrainedResult experiment_unconstrained(const UnconstrainedSpec& spec);

/// Writes unconstrained_runs.csv, unconstrained_trajectories.csv,
/// unconstrained_aggregate.csv and unconstrained_summary.csv.
void write_unconstrained(const UnconstrainedResult& result, const std::filesystem::path& dir);

// Heat map ---------------------------------------------------------------------

struct HeatmapSpec {
  std::vector<int> ns;
  std::vector<int> mus;
  std::vector<std::string> ops{"2opt"};
  int reps = 30;
  std::uint64_t seed = 1;
  TieBreak tie_break = TieBreak::kRandom;
  int threads = 0;
};

struct HeatmapRun {
  int n = 0;
  int mu = 0;
  std::string op;
  int rep = 0;
  std::uint64_t seed = 0;
  std::int64_t budget = 0;
  std::int64_t steps = 0;  // termination iteration, or budget on failure
  bool reached = false;
  double percent = 0;
};

struct HeatmapCell {
  int n = 0;
  int mu = 0;
  std::string op;
  int reps = 0;
  int reached = 0;
  std::int64_t budget = 0;
  double mean_percent = 0, std_percent = 0;
};

struct HeatmapResult {
  std::vector<HeatmapRun> runs;
  std::vector<HeatmapCell> cells;
};

/// Grid of (n, mu, operator) cells on synthetic QAP, N measure, no quality
/// gate, duplicate start, budget mu n^2.
HeatmapResult experiment_heatmap(const HeatmapSpec& spec);
HeatmapRun run_heatmap_cell(int n, int mu, const std::string& op, int rep, std::uint64_t master_seed,
                            TieBreak tie_break = TieBreak::kRandom);
HeatmapCell aggregate_heatmap(const std::vector<const HeatmapRun*>& runs);

/// Writes heatmap_runs.csv and heatmap.csv.
void write_heatmap(const HeatmapResult& result, const std::filesystem::path& dir);

// Constrained runs -------------------------------------------------------------

struct ConstrainedSpec {
  std::vector<NamedInstance> instances;  // optima required
  std::vector<int> mus{3, 10, 20, 50};
  std::vector<double> alphas{0.05, 0.2, 0.5, 1.0};
  std::vector<MeasureKind> measures{MeasureKind::kNVector, MeasureKind::kDVector};
  std::string op = "2opt";
  int reps = 30;
  std::uint64_t seed = 1;
  std::optional<std::int64_t> budget;  // default mu * n^2
  TieBreak tie_break = TieBreak::kRandom;
  int threads = 0;
};

struct ConstrainedRun {
  std::string instance;
  int n = 0;
  int mu = 0;
  double alpha = 0;
  MeasureKind measure = MeasureKind::kNVector;
  std::string op;
  int rep = 0;
  std::uint64_t seed = 0;
  std::int64_t budget = 0;
  double d1_norm = 0, d2_norm = 0, unique_fraction = 0;
};

struct ConstrainedCell {
  std::string instance;
  int n = 0;
  int mu = 0;
  double alpha = 0;
  MeasureKind measure = MeasureKind::kNVector;
  std::string op;
  int reps = 0;
  double mean_d1 = 0, std_d1 = 0, mean_d2 = 0, std_d2 = 0, mean_unique = 0, std_unique = 0;
};

struct ConstrainedResult {
  std::vector<ConstrainedRun> runs;
  std::vector<ConstrainedCell> cells;
};

ConstrainedResult experiment_constrained(const ConstrainedSpec& spec);
ConstrainedCell aggregate_constrained(const std::vector<const ConstrainedRun*>& runs);

/// Writes constrained_runs.csv and constrained_table.csv.
void write_constrained(const ConstrainedResult& result, const std::filesystem::path& dir);

std::string_view measure_name(MeasureKind measure);
MeasureKind parse_measure(std::string_view text);

}  // namespace edo
