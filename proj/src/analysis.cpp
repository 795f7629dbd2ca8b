#include "edo/analysis.hpp"

#include <cmath>

#include "edo/error.hpp"

namespace edo {

namespace {

void require_problem(ProblemKind problem, const OperatorSpec& op) {
  if (operator_problem(op.kind) != problem) {
    fail(ErrorCode::kInvalidArgument, "operator " + operator_name(op) + " does not apply to " +
                                          std::string(to_string(problem)));
  }
}

Rational ratio(std::int64_t num, std::int64_t den) {
  return Rational(num) / Rational(den);
}

}  // namespace

int mu_guarantee_bound(ProblemKind problem, const OperatorSpec& op, int n) {
  require_problem(problem, op);
  validate_operator(op, n);
  switch (op.kind) {
    case OperatorKind::kStspTwoOpt:
      return (n + 2) / 4;
    case OperatorKind::kStspExchange:
      return (n + 4) / 8;
    case OperatorKind::kAtspThreeOpt:
      return (n + 2) / 3;
    case OperatorKind::kAtspFourOpt:
      return n / 3;
    case OperatorKind::kQapKOpt:
      return (n - op.k + 3 + (op.k == 2 ? 1 : 0)) / 2;
    case OperatorKind::kStspInsertion:
      break;
  }
  fail(ErrorCode::kUnsupported, "no improvement guarantee is known for " + operator_name(op));
}

ImprovementBound improvement_prob_bound(const BoundQuery& q) {
  const int bound = mu_guarantee_bound(q.problem, q.op, q.n);
  if (q.mu < 2 || q.mu > bound) {
    fail(ErrorCode::kOutOfRange, "mu = " + std::to_string(q.mu) + " outside [2, " +
                                     std::to_string(bound) + "] for " + operator_name(q.op));
  }
  if (q.d_p < 2 || q.d_p > q.mu) {
    fail(ErrorCode::kOutOfRange, "d_P = " + std::to_string(q.d_p) + " outside [2, mu]");
  }
  const std::int64_t n = q.n;
  const std::int64_t mu = q.mu;
  const std::int64_t d = q.d_p;
  ImprovementBound out;
  switch (q.op.kind) {
    case OperatorKind::kStspTwoOpt:
      out.value = ratio(2 * ((n - 1) * (d - 2) + 1), mu * n * (n - 3));
      break;
    case OperatorKind::kStspExchange:
      out.value = ratio(4 * ((n - 2) * (d - 2) + 1), mu * n * (n - 5));
      break;
    case OperatorKind::kAtspThreeOpt:
      out.value = Rational(3 * (n * (d - 2) + 1)) * Rational((n + 1) * (d - 2) + 2) /
                  (Rational(mu * n * (n - 1)) * Rational((n - 2) * (d - 1)));
      break;
    case OperatorKind::kAtspFourOpt:
      out.exact = false;
      out.asymptotic = d == 2 ? "Omega(1/(mu n^3))" : "Omega(d_P/(mu n))";
      break;
    case OperatorKind::kQapKOpt: {
      const std::int64_t k = q.op.k;
      const std::int64_t ind = k == 2 ? 1 : 0;
      Rational factor = 1;
      const Rational base = ratio(2 * d - 3, 2 * d - 2);
      for (std::int64_t t = 2; t < k; ++t) factor *= base;
      Rational k_factorial = 1;
      for (std::int64_t t = 2; t <= k; ++t) k_factorial *= t;
      const Rational denominator = Rational(mu * (n - 1) * (n - k + 1 + ind)) *
                                   Rational(derangement_count(static_cast<int>(k))) / k_factorial;
      out.value = factor * Rational((n - k + 2 + ind) * (d - 2) + 1) / denominator;
      break;
    }
    case OperatorKind::kStspInsertion:
      fail(ErrorCode::kUnsupported, "no improvement bound for insertion");
  }
  return out;
}

RuntimeBound runtime_bound(ProblemKind problem, const OperatorSpec& op, int n, int mu) {
  const int bound = mu_guarantee_bound(problem, op, n);
  if (mu < 2 || mu > bound) {
    fail(ErrorCode::kOutOfRange, "mu = " + std::to_string(mu) + " outside [2, " +
                                     std::to_string(bound) + "] for " + operator_name(op));
  }
  RuntimeBound out;
  if (op.kind == OperatorKind::kAtspFourOpt) {
    out.exact = false;
    out.asymptotic = "O(mu^2 n^4)";
    return out;
  }
  Rational sum = 0;
  for (int j = 2; j <= mu; ++j) {
    const auto p = improvement_prob_bound({problem, op, n, mu, j});
    sum += Rational(static_cast<std::int64_t>(mu) * n, j) / p.value;
  }
  out.value = sum.convert_to<double>();
  return out;
}

Estimate make_estimate(std::int64_t successes, std::int64_t trials, double z) {
  if (trials < 1) fail(ErrorCode::kInvalidArgument, "trials must be at least 1");
  Estimate e;
  e.trials = trials;
  e.successes = successes;
  const double t = static_cast<double>(trials);
  const double p = static_cast<double>(successes) / t;
  e.frequency = p;
  e.standard_error = std::sqrt(p * (1.0 - p) / t);
  const double z2 = z * z;
  const double centre = (p + z2 / (2 * t)) / (1 + z2 / t);
  const double half = z / (1 + z2 / t) * std::sqrt(p * (1 - p) / t + z2 / (4 * t * t));
  e.wilson_low = std::max(0.0, centre - half);
  e.wilson_high = std::min(1.0, centre + half);
  return e;
}

Estimate estimate_improvement_prob(const Population& population, const OperatorSpec& spec,
                                   MeasureKind measure, std::int64_t trials, Rng& rng) {
  if (trials < 1) fail(ErrorCode::kInvalidArgument, "trials must be at least 1");
  validate_population(population);
  if (operator_problem(spec.kind) != population.kind) {
    fail(ErrorCode::kInvalidArgument, "operator does not match the population's problem kind");
  }
  validate_operator(spec, population.n);
  if (measure == MeasureKind::kDVector && population.mu() < 2) {
    fail(ErrorCode::kInvalidArgument, "D vector needs mu >= 2");
  }
  const std::size_t mu = population.members.size();
  const std::size_t w = mu + 1;
  const int n = population.n;

  std::vector<std::vector<int>> slots(w);
  CountTable table(population.kind, n);
  for (std::size_t i = 0; i < mu; ++i) {
    object_slots(population.members[i], population.kind, slots[i]);
    table.add(slots[i]);
  }
  std::vector<int> overlaps;
  std::vector<char> marks;
  if (measure == MeasureKind::kDVector) {
    const auto matrix = overlap_matrix(population);
    overlaps.assign(w * w, 0);
    for (std::size_t i = 0; i < mu; ++i) {
      for (std::size_t j = 0; j < mu; ++j) overlaps[i * w + j] = matrix[i * mu + j];
    }
    overlaps[mu * w + mu] = n;
    marks.assign(static_cast<std::size_t>(n) * static_cast<std::size_t>(n), 0);
  }

  SurvivalSelector selector;
  std::int64_t successes = 0;
  for (std::int64_t t = 0; t < trials; ++t) {
    const auto parent = static_cast<std::size_t>(uniform_below(rng, static_cast<int>(mu)));
    const Permutation child = sample_neighbor(population.members[parent], spec, rng);
    object_slots(child, population.kind, slots[mu]);
    Selection selection;
    if (measure == MeasureKind::kDVector) {
      for (int s : slots[mu]) marks[static_cast<std::size_t>(s)] = 1;
      for (std::size_t j = 0; j < mu; ++j) {
        int shared = 0;
        for (int s : slots[j]) shared += marks[static_cast<std::size_t>(s)];
        overlaps[mu * w + j] = overlaps[j * w + mu] = shared;
      }
      for (int s : slots[mu]) marks[static_cast<std::size_t>(s)] = 0;
      selection = selector.select_by_overlaps(overlaps, w, n, TieBreak::kFirst, rng);
    } else {
      table.add(slots[mu]);
      selection = selector.select_by_counts(slots, table, TieBreak::kFirst, rng);
      table.remove(slots[mu]);
    }
    if (selection.improves_on_last) ++successes;
  }
  return make_estimate(successes, trials);
}

}  // namespace edo
