#include "edo/engine.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <ostream>

#include "edo/error.hpp"

namespace edo {

void validate_config(const EaConfig& config, const Instance& instance) {
  if (config.mu < 2) fail(ErrorCode::kInvalidArgument, "mu must be at least 2");
  if (config.budget < 1) fail(ErrorCode::kInvalidArgument, "budget must be at least 1");
  if (config.checkpoint_count < 0) fail(ErrorCode::kInvalidArgument, "checkpoint count must be >= 0");
  if (config.alpha) {
    if (!(*config.alpha >= 0.0)) fail(ErrorCode::kInvalidArgument, "alpha must be >= 0");
    if (!instance_optimum(instance)) fail(ErrorCode::kInvalidArgument, "alpha given but optimum unknown");
  }
  if (std::isnan(config.threshold)) fail(ErrorCode::kInvalidArgument, "threshold is NaN");
  const ProblemKind kind = instance_kind(instance);
  if (operator_problem(config.op.kind) != kind) {
    fail(ErrorCode::kInvalidArgument, "operator " + operator_name(config.op) + " does not apply to " +
                                          std::string(to_string(kind)));
  }
  validate_operator(config.op, instance_size(instance));
  if (config.init_mode == InitMode::kDuplicateOpt && !instance_optimal_permutation(instance)) {
    fail(ErrorCode::kInvalidArgument, "duplicate-optimum start but optimum unknown");
  }
  if (config.init_mode == InitMode::kGiven) {
    if (!config.initial) fail(ErrorCode::kInvalidArgument, "given start without a population");
    validate_population(*config.initial);
    if (config.initial->kind != kind || config.initial->n != instance_size(instance)) {
      fail(ErrorCode::kInvalidArgument, "given population does not match the instance (n = " +
                                            std::to_string(config.initial->n) + ", instance n = " +
                                            std::to_string(instance_size(instance)) + ")");
    }
    if (config.initial->mu() != config.mu) {
      fail(ErrorCode::kInvalidArgument, "given population has mu = " + std::to_string(config.initial->mu()) +
                                            ", config mu = " + std::to_string(config.mu));
    }
  }
}

double effective_threshold(const EaConfig& config, const Instance& instance) {
  if (!config.alpha) return config.threshold;
  const auto opt = instance_optimum(instance);
  if (!opt) fail(ErrorCode::kInvalidArgument, "alpha given but optimum unknown");
  return (1.0 + *config.alpha) * *opt;
}

Population init_population(const EaConfig& config, const Instance& instance, Rng& rng) {
  const int n = instance_size(instance);
  const ProblemKind kind = instance_kind(instance);
  Population population{kind, n, {}};
  switch (config.init_mode) {
    case InitMode::kDuplicateRandom: {
      std::vector<int> v(static_cast<std::size_t>(n));
      std::iota(v.begin(), v.end(), 0);
      std::shuffle(v.begin(), v.end(), rng);
      population.members.assign(static_cast<std::size_t>(config.mu), make_unchecked(std::move(v)));
      break;
    }
    case InitMode::kDuplicateOpt: {
      auto opt = instance_optimal_permutation(instance);
      if (!opt) fail(ErrorCode::kInvalidArgument, "duplicate-optimum start but optimum unknown");
      population.members.assign(static_cast<std::size_t>(config.mu), *opt);
      break;
    }
    case InitMode::kGiven: {
      if (!config.initial) fail(ErrorCode::kInvalidArgument, "given start without a population");
      population = *config.initial;
      validate_population(population);
      if (population.kind != kind || population.n != n) {
        fail(ErrorCode::kInvalidArgument, "given population does not match the instance (n = " +
                                              std::to_string(population.n) + ", instance n = " +
                                              std::to_string(n) + ")");
      }
      if (population.mu() != config.mu) {
        fail(ErrorCode::kInvalidArgument, "given population has " + std::to_string(population.mu()) +
                                              " members, mu = " + std::to_string(config.mu));
      }
      break;
    }
  }
  return population;
}

EaState::EaState(const EaConfig& config, const Instance& instance, Population initial)
    : instance_(&instance),
      config_(config),
      threshold_(effective_threshold(config, instance)),
      gated_(!std::isinf(threshold_) || threshold_ < 0),
      population_(std::move(initial)),
      table_(population_.kind, population_.n),
      d1_bound_(d1_upper_bound(population_.kind, population_.n, population_.mu())) {
  validate_population(population_);
  const std::size_t mu = population_.members.size();
  slots_.resize(mu + 1);
  costs_.assign(mu, 0.0);
  for (std::size_t i = 0; i < mu; ++i) {
    object_slots(population_.members[i], population_.kind, slots_[i]);
    table_.add(slots_[i]);
    if (gated_) costs_[i] = cost(population_.members[i], instance);
  }
  if (config_.measure == MeasureKind::kDVector) {
    const std::size_t w = mu + 1;
    const auto matrix = overlap_matrix(population_);
    overlaps_.assign(w * w, 0);
    for (std::size_t i = 0; i < mu; ++i) {
      for (std::size_t j = 0; j < mu; ++j) overlaps_[i * w + j] = matrix[i * mu + j];
    }
    overlaps_[mu * w + mu] = population_.n;
    marks_.assign(static_cast<std::size_t>(population_.n) * static_cast<std::size_t>(population_.n), 0);
  }
}

double EaState::evaluate(std::size_t parent, const Permutation& child) {
  if (!gated_) return 0.0;
  if (const auto* qap = std::get_if<QapInstance>(instance_); qap && !changed_.empty()) {
    return qap_cost_after_change(*qap, population_.members[parent], child, costs_[parent], changed_);
  }
  return cost(child, *instance_);
}

void EaState::fill_overlap_row(std::size_t row) {
  const std::size_t w = population_.members.size() + 1;
  if (++mark_stamp_ == 0) {
    std::fill(marks_.begin(), marks_.end(), 0);
    mark_stamp_ = 1;
  }
  for (int s : slots_[row]) marks_[static_cast<std::size_t>(s)] = mark_stamp_;
  for (std::size_t j = 0; j + 1 < w; ++j) {
    if (j == row) continue;
    int shared = 0;
    for (int s : slots_[j]) shared += marks_[static_cast<std::size_t>(s)] == mark_stamp_;
    overlaps_[row * w + j] = overlaps_[j * w + row] = shared;
  }
}

bool EaState::step(Rng& rng) {
  ++evaluations_;
  const std::size_t mu = population_.members.size();
  const auto parent = static_cast<std::size_t>(uniform_below(rng, static_cast<int>(mu)));
  Permutation child = sample_neighbor(population_.members[parent], config_.op, rng, changed_);
  const double child_cost = evaluate(parent, child);
  if (gated_ && !(child_cost <= threshold_)) return false;

  object_slots(child, population_.kind, slots_[mu]);
  table_.add(slots_[mu]);
  Selection selection;
  if (config_.measure == MeasureKind::kDVector) {
    fill_overlap_row(mu);
    selection = selector_.select_by_overlaps(overlaps_, mu + 1, population_.n, config_.tie_break, rng);
  } else {
    selection = selector_.select_by_counts(slots_, table_, config_.tie_break, rng);
  }
  const std::size_t out = selection.index;
  table_.remove(slots_[out]);
  if (out == mu) return false;

  slots_[out].swap(slots_[mu]);
  population_.members[out] = std::move(child);
  costs_[out] = child_cost;
  if (config_.measure == MeasureKind::kDVector) {
    const std::size_t w = mu + 1;
    for (std::size_t j = 0; j < mu; ++j) {
      if (j == out) continue;
      overlaps_[out * w + j] = overlaps_[j * w + out] = overlaps_[mu * w + j];
    }
    overlaps_[out * w + out] = population_.n;
  }
  return true;
}

bool EaState::at_optimum() const noexcept {
  if (config_.measure == MeasureKind::kDVector) return table_.max_count() <= 1;
  return table_.max_count() - table_.min_count() <= 1;
}

DiversityVector EaState::measure() const {
  return config_.measure == MeasureKind::kNVector ? n_vector(table_) : d_vector(population_);
}

Checkpoint EaState::snapshot(std::int64_t iteration) const {
  Checkpoint cp;
  cp.iteration = iteration;
  const std::int64_t d1 = d1_from_counts(table_);
  cp.d1_norm = d1_bound_ > 0 ? static_cast<double>(d1) / static_cast<double>(d1_bound_) : 1.0;
  cp.d2_norm = d2_score(population_).normalized;
  const auto stats = population_stats(table_);
  cp.d_p = stats.d_p;
  cp.c_p = stats.c_p;
  cp.unique_fraction = stats.unique_fraction;
  return cp;
}

RunRecord run_ea(const EaConfig& config, const Instance& instance) {
  validate_config(config, instance);
  Rng rng(config.seed);
  EaState state(config, instance, init_population(config, instance, rng));

  std::vector<std::int64_t> schedule;
  for (int j = 1; j <= config.checkpoint_count; ++j) {
    const std::int64_t t = config.budget * j / config.checkpoint_count;
    if (t > 0 && (schedule.empty() || schedule.back() != t)) schedule.push_back(t);
  }

  RunRecord record;
  record.seed = config.seed;
  record.checkpoints.push_back(state.snapshot(0));
  DiversityVector previous = state.measure();
  auto checkpoint = [&](std::int64_t t) {
    DiversityVector current = state.measure();
    if (lex_compare(current, previous) > 0) {
      fail(ErrorCode::kInternal, "measure vector increased at iteration " + std::to_string(t));
    }
    previous = std::move(current);
    record.checkpoints.push_back(state.snapshot(t));
  };

  if (config.early_stop && state.at_optimum()) {
    record.termination_iteration = 0;
  } else {
    std::size_t next = 0;
    for (std::int64_t t = 1; t <= config.budget; ++t) {
      state.step(rng);
      const bool done = config.early_stop && state.at_optimum();
      while (next < schedule.size() && schedule[next] < t) ++next;
      const bool scheduled = next < schedule.size() && schedule[next] == t;
      if (scheduled || done || t == config.budget) checkpoint(t);
      if (done) {
        record.termination_iteration = t;
        break;
      }
    }
  }
  record.evaluations = state.evaluations();
  record.final_population = state.population();
  return record;
}

namespace {

void write_row(std::ostream& out, const Checkpoint& cp) {
  out << cp.iteration << ',' << cp.d1_norm << ',' << cp.d2_norm << ',' << cp.d_p << ',' << cp.c_p
      << ',' << cp.unique_fraction << '\n';
}

}  // namespace

void write_trajectory_csv(std::ostream& out, const RunRecord& record) {
  const auto precision = out.precision(10);
  out << "iteration,d1_norm,d2_norm,d_p,c_p,unique_frac\n";
  for (const auto& cp : record.checkpoints) write_row(out, cp);
  out.precision(precision);
}

void write_summary_csv(std::ostream& out, const RunRecord& record) {
  const auto precision = out.precision(10);
  const Checkpoint& last = record.checkpoints.back();
  out << "termination_iteration,evaluations,d1_norm,d2_norm,d_p,c_p,unique_frac,seed\n";
  if (record.termination_iteration) out << *record.termination_iteration;
  else out << "NA";
  out << ',' << record.evaluations << ',' << last.d1_norm << ',' << last.d2_norm << ',' << last.d_p
      << ',' << last.c_p << ',' << last.unique_fraction << ',' << record.seed << '\n';
  out.precision(precision);
}

}  // namespace edo
