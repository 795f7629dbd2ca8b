#pragma once

#include <cstdint>
#include <iosfwd>
#include <limits>
#include <optional>
#include <vector>

#include "edo/diversity.hpp"
#include "edo/instance.hpp"
#include "edo/mutation.hpp"

namespace edo {

enum class InitMode { kDuplicateRandom, kDuplicateOpt, kGiven };

struct EaConfig {
  int mu = 2;
  std::int64_t budget = 1;
  MeasureKind measure = MeasureKind::kNVector;
  OperatorSpec op;
  /// Quality threshold F; ignored when alpha is set.
  double threshold = std::numeric_limits<double>::infinity();
  /// F = (1 + alpha) * OPT, requires a known optimum.
  std::optional<double> alpha;
  InitMode init_mode = InitMode::kDuplicateRandom;
  std::optional<Population> initial;  // kGiven
  std::uint64_t seed = 0;
  int checkpoint_count = 1000;
  TieBreak tie_break = TieBreak::kRandom;
  bool early_stop = true;
};

/// Throws on an unusable configuration for the given instance.
void validate_config(const EaConfig& config, const Instance& instance);

/// F resolved from alpha or the explicit threshold.
double effective_threshold(const EaConfig& config, const Instance& instance);

struct Checkpoint {
  std::int64_t iteration = 0;
  double d1_norm = 0.0;
  double d2_norm = 0.0;
  int d_p = 0;
  std::int64_t c_p = 0;
  double unique_fraction = 0.0;

  friend bool operator==(const Checkpoint&, const Checkpoint&) = default;
};

struct RunRecord {
  std::vector<Checkpoint> checkpoints;
  std::optional<std::int64_t> termination_iteration;  // empty: budget exhausted
  std::int64_t evaluations = 0;
  Population final_population;
  std::uint64_t seed = 0;
};

Population init_population(const EaConfig& config, const Instance& instance, Rng& rng);

/// Mutable state of one run. Maintains object counts, per-member object
/// slots, member costs and (for the D measure) the overlap matrix.
class EaState {
 public:
  EaState(const EaConfig& config, const Instance& instance, Population initial);

  /// One iteration: one mutation, one fitness evaluation. Returns true when
  /// the offspring entered the population.
  bool step(Rng& rng);

  const Population& population() const noexcept { return population_; }
  const CountTable& counts() const noexcept { return table_; }
  std::int64_t evaluations() const noexcept { return evaluations_; }
  double member_cost(std::size_t i) const { return costs_[i]; }

  /// The driven measure has reached its optimum.
  bool at_optimum() const noexcept;
  DiversityVector measure() const;
  Checkpoint snapshot(std::int64_t iteration) const;

 private:
  double evaluate(std::size_t parent, const Permutation& child);
  void fill_overlap_row(std::size_t row);

  const Instance* instance_;
  EaConfig config_;
  double threshold_;
  bool gated_;
  Population population_;
  CountTable table_;
  std::vector<std::vector<int>> slots_;  // mu + 1 entries; the last is scratch
  std::vector<double> costs_;
  std::vector<int> overlaps_;            // (mu + 1)^2, D measure only
  std::vector<int> marks_;
  int mark_stamp_ = 0;
  std::vector<int> changed_;
  SurvivalSelector selector_;
  std::int64_t d1_bound_;
  std::int64_t evaluations_ = 0;
};

RunRecord run_ea(const EaConfig& config, const Instance& instance);

/// Header plus one row per checkpoint: iteration,d1_norm,d2_norm,d_p,c_p,unique_frac.
void write_trajectory_csv(std::ostream& out, const RunRecord& record);

/// Header plus one row: termination_iteration,evaluations,d1_norm,d2_norm,d_p,c_p,unique_frac,seed.
void write_summary_csv(std::ostream& out, const RunRecord& record);

}  // namespace edo
