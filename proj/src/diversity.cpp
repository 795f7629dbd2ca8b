#include "edo/diversity.hpp"

#include <algorithm>
#include <functional>

#include "edo/error.hpp"

namespace edo {

void validate_population(const Population& population) {
  if (population.members.empty()) fail(ErrorCode::kInvalidArgument, "population is empty");
  if (population.n < minimum_size(population.kind)) {
    fail(ErrorCode::kInvalidArgument, "population size n below the minimum for its kind");
  }
  for (std::size_t i = 0; i < population.members.size(); ++i) {
    if (population.members[i].size() != population.n) {
      fail(ErrorCode::kInvalidArgument, "member " + std::to_string(i) + " has size " +
                                            std::to_string(population.members[i].size()) +
                                            ", expected " + std::to_string(population.n));
    }
  }
}

// CountTable -----------------------------------------------------------------

CountTable::CountTable(ProblemKind kind, int n)
    : kind_(kind),
      n_(n),
      universe_(object_universe_size(kind, n)),
      counts_(static_cast<std::size_t>(n) * static_cast<std::size_t>(n), 0),
      histogram_(2, 0) {
  histogram_[0] = universe_;
}

void CountTable::shift(int slot, int delta) {
  int& c = counts_[static_cast<std::size_t>(slot)];
  const int next = c + delta;
  if (next < 0) fail(ErrorCode::kInternal, "object count below zero");
  if (static_cast<std::size_t>(next) >= histogram_.size()) histogram_.resize(static_cast<std::size_t>(next) + 1, 0);
  --histogram_[static_cast<std::size_t>(c)];
  ++histogram_[static_cast<std::size_t>(next)];
  sum_squares_ += static_cast<std::int64_t>(next) * next - static_cast<std::int64_t>(c) * c;
  c = next;
}

void CountTable::add(std::span<const int> slots) {
  ++mu_;
  for (int s : slots) shift(s, +1);
}

void CountTable::remove(std::span<const int> slots) {
  if (mu_ == 0) fail(ErrorCode::kInternal, "remove from empty count table");
  --mu_;
  for (int s : slots) shift(s, -1);
}

int CountTable::max_count() const noexcept {
  for (std::size_t c = histogram_.size(); c-- > 0;) {
    if (histogram_[c] > 0) return static_cast<int>(c);
  }
  return 0;
}

int CountTable::min_count() const noexcept {
  for (std::size_t c = 0; c < histogram_.size(); ++c) {
    if (histogram_[c] > 0) return static_cast<int>(c);
  }
  return 0;
}

CountTable build_count_table(const Population& population) {
  validate_population(population);
  CountTable table(population.kind, population.n);
  std::vector<int> slots;
  for (const auto& member : population.members) {
    object_slots(member, population.kind, slots);
    table.add(slots);
  }
  return table;
}

// DiversityVector ------------------------------------------------------------

DiversityVector::DiversityVector(std::vector<int> entries, std::int64_t length) : length_(length) {
  std::erase(entries, 0);
  if (static_cast<std::int64_t>(entries.size()) > length) {
    fail(ErrorCode::kInvalidArgument, "diversity vector has more entries than its length");
  }
  std::sort(entries.begin(), entries.end(), std::greater<>());
  nonzero_ = std::move(entries);
}

int DiversityVector::at(std::int64_t i) const noexcept {
  return i < static_cast<std::int64_t>(nonzero_.size()) ? nonzero_[static_cast<std::size_t>(i)] : 0;
}

std::vector<int> DiversityVector::expanded() const {
  std::vector<int> out(nonzero_);
  out.resize(static_cast<std::size_t>(length_), 0);
  return out;
}

std::strong_ordering lex_compare(const DiversityVector& a, const DiversityVector& b) {
  if (a.length() != b.length()) {
    fail(ErrorCode::kInvalidArgument, "comparing diversity vectors of lengths " +
                                          std::to_string(a.length()) + " and " +
                                          std::to_string(b.length()));
  }
  const auto x = a.nonzero();
  const auto y = b.nonzero();
  const std::size_t common = std::min(x.size(), y.size());
  for (std::size_t i = 0; i < common; ++i) {
    if (x[i] != y[i]) return x[i] <=> y[i];
  }
  return x.size() <=> y.size();
}

DiversityVector n_vector(const CountTable& table) {
  std::vector<int> entries;
  for (int c : table.counts()) {
    if (c > 0) entries.push_back(c);
  }
  return DiversityVector(std::move(entries), table.universe());
}

std::vector<int> overlap_matrix(const Population& population) {
  validate_population(population);
  const int n = population.n;
  const std::size_t mu = population.members.size();
  std::vector<std::vector<int>> slots(mu);
  for (std::size_t i = 0; i < mu; ++i) object_slots(population.members[i], population.kind, slots[i]);
  std::vector<char> marked(static_cast<std::size_t>(n) * static_cast<std::size_t>(n), 0);
  std::vector<int> out(mu * mu, 0);
  for (std::size_t i = 0; i < mu; ++i) {
    for (int s : slots[i]) marked[static_cast<std::size_t>(s)] = 1;
    out[i * mu + i] = n;
    for (std::size_t j = i + 1; j < mu; ++j) {
      int shared = 0;
      for (int s : slots[j]) shared += marked[static_cast<std::size_t>(s)];
      out[i * mu + j] = out[j * mu + i] = shared;
    }
    for (int s : slots[i]) marked[static_cast<std::size_t>(s)] = 0;
  }
  return out;
}

DiversityVector d_vector(const Population& population) {
  if (population.mu() < 2) fail(ErrorCode::kInvalidArgument, "D vector needs mu >= 2");
  const auto matrix = overlap_matrix(population);
  const std::size_t mu = population.members.size();
  std::vector<int> entries;
  entries.reserve(mu * (mu - 1) / 2);
  for (std::size_t i = 0; i < mu; ++i) {
    for (std::size_t j = i + 1; j < mu; ++j) entries.push_back(matrix[i * mu + j]);
  }
  const auto length = static_cast<std::int64_t>(mu * (mu - 1) / 2);
  return DiversityVector(std::move(entries), length);
}

DiversityVector measure_vector(const Population& population, MeasureKind measure) {
  return measure == MeasureKind::kNVector ? n_vector(build_count_table(population))
                                          : d_vector(population);
}

// Scalar scores --------------------------------------------------------------

std::int64_t d1_from_counts(const CountTable& table) {
  const std::int64_t mu = table.mu();
  const std::int64_t n = table.n();
  return mu * (mu - 1) * n + mu * n - table.sum_of_squares();
}

std::int64_t d1_upper_bound(ProblemKind kind, int n, int mu) {
  if (n < 1 || mu < 1) fail(ErrorCode::kInvalidArgument, "d1_upper_bound needs n, mu >= 1");
  const std::int64_t m = object_universe_size(kind, n);
  const std::int64_t tokens = static_cast<std::int64_t>(mu) * n;
  const std::int64_t q = tokens / m;
  const std::int64_t r = tokens % m;
  const std::int64_t balanced_squares = r * (q + 1) * (q + 1) + (m - r) * q * q;
  return static_cast<std::int64_t>(mu) * (mu - 1) * n + tokens - balanced_squares;
}

Score d1_score(const Population& population) {
  const auto table = build_count_table(population);
  const std::int64_t raw = d1_from_counts(table);
  const std::int64_t bound = d1_upper_bound(population.kind, population.n, population.mu());
  return {raw, bound > 0 ? static_cast<double>(raw) / static_cast<double>(bound) : 1.0};
}

std::int64_t d2_upper_bound(int n, int mu) { return static_cast<std::int64_t>(mu) * n; }

Score d2_score(const Population& population) {
  if (population.mu() < 2) fail(ErrorCode::kInvalidArgument, "D2 needs mu >= 2");
  const auto matrix = overlap_matrix(population);
  const std::size_t mu = population.members.size();
  std::int64_t raw = 0;
  for (std::size_t i = 0; i < mu; ++i) {
    int closest = 0;
    for (std::size_t j = 0; j < mu; ++j) {
      if (j != i) closest = std::max(closest, matrix[i * mu + j]);
    }
    raw += population.n - closest;
  }
  const auto bound = d2_upper_bound(population.n, population.mu());
  return {raw, static_cast<double>(raw) / static_cast<double>(bound)};
}

PopulationStats population_stats(const CountTable& table) {
  PopulationStats stats;
  stats.d_p = table.max_count();
  stats.c_p = table.max_count_multiplicity();
  const double tokens = static_cast<double>(table.mu()) * table.n();
  stats.unique_fraction = tokens > 0 ? static_cast<double>(table.objects_with_count(1)) / tokens : 0.0;
  return stats;
}

PopulationStats population_stats(const Population& population) {
  return population_stats(build_count_table(population));
}

IncidentSums incident_count_sum(int node, const CountTable& table) {
  const int n = table.n();
  if (node < 0 || node >= n) fail(ErrorCode::kOutOfRange, "node out of range");
  IncidentSums sums;
  switch (table.kind()) {
    case ProblemKind::kQap:
      fail(ErrorCode::kUnsupported, "incident sums are defined for tours; use row/column sums for QAP");
    case ProblemKind::kStsp:
      for (int v = 0; v < n; ++v) {
        if (v != node) sums.total += table.count(node < v ? Object{node, v} : Object{v, node});
      }
      break;
    case ProblemKind::kAtsp: {
      int out = 0;
      int in = 0;
      for (int v = 0; v < n; ++v) {
        if (v == node) continue;
        out += table.count({node, v});
        in += table.count({v, node});
      }
      sums.out = out;
      sums.in = in;
      sums.total = out + in;
      break;
    }
  }
  return sums;
}

// Survival selection ---------------------------------------------------------

namespace {

// Positive when profile a is larger read from the top value down.
int compare_profiles(const std::vector<int>& a, const std::vector<int>& b) {
  for (std::size_t c = a.size(); c-- > 0;) {
    if (a[c] != b[c]) return a[c] > b[c] ? 1 : -1;
  }
  return 0;
}

}  // namespace

template <typename FillProfile>
Selection SurvivalSelector::select(std::size_t size, int top, FillProfile&& fill, TieBreak tie,
                                   Rng& rng) {
  const auto width = static_cast<std::size_t>(top) + 1;
  best_.assign(width, 0);
  current_.assign(width, 0);
  last_.assign(width, 0);
  fill(size - 1, last_);

  std::size_t chosen = 0;
  std::size_t ties = 0;
  for (std::size_t i = 0; i < size; ++i) {
    std::fill(current_.begin(), current_.end(), 0);
    fill(i, current_);
    const int cmp = i == 0 ? 1 : compare_profiles(current_, best_);
    if (cmp > 0) {
      best_.swap(current_);
      chosen = i;
      ties = 1;
    } else if (cmp == 0) {
      ++ties;
      if (tie == TieBreak::kRandom && uniform_below(rng, static_cast<int>(ties)) == 0) chosen = i;
    }
  }
  return {chosen, compare_profiles(best_, last_) > 0};
}

Selection SurvivalSelector::select_by_counts(std::span<const std::vector<int>> member_slots,
                                             const CountTable& table, TieBreak tie, Rng& rng) {
  const auto counts = table.counts();
  return select(
      member_slots.size(), table.max_count(),
      [&](std::size_t i, std::vector<int>& profile) {
        for (int s : member_slots[i]) ++profile[static_cast<std::size_t>(counts[static_cast<std::size_t>(s)])];
      },
      tie, rng);
}

Selection SurvivalSelector::select_by_overlaps(std::span<const int> overlaps, std::size_t size,
                                               int n, TieBreak tie, Rng& rng) {
  return select(
      size, n,
      [&](std::size_t i, std::vector<int>& profile) {
        for (std::size_t j = 0; j < size; ++j) {
          if (j != i) ++profile[static_cast<std::size_t>(overlaps[i * size + j])];
        }
      },
      tie, rng);
}

std::size_t select_removal(const Population& p_plus, MeasureKind measure, TieBreak tie, Rng& rng) {
  validate_population(p_plus);
  SurvivalSelector selector;
  if (measure == MeasureKind::kDVector) {
    if (p_plus.mu() < 3) {
      // Removing either of two members leaves a single solution: no pairs.
      return tie == TieBreak::kFirst ? 0 : static_cast<std::size_t>(uniform_below(rng, p_plus.mu()));
    }
    const auto matrix = overlap_matrix(p_plus);
    return selector.select_by_overlaps(matrix, p_plus.members.size(), p_plus.n, tie, rng).index;
  }
  std::vector<std::vector<int>> slots(p_plus.members.size());
  for (std::size_t i = 0; i < slots.size(); ++i) object_slots(p_plus.members[i], p_plus.kind, slots[i]);
  CountTable table(p_plus.kind, p_plus.n);
  for (const auto& s : slots) table.add(s);
  return selector.select_by_counts(slots, table, tie, rng).index;
}

}  // namespace edo
