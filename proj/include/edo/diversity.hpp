#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "edo/permutation.hpp"
#include "edo/rng.hpp"

namespace edo {

/// Ordered multiset of mu solutions of one problem kind and size.
struct Population {
  ProblemKind kind = ProblemKind::kQap;
  int n = 0;
  std::vector<Permutation> members;

  int mu() const noexcept { return static_cast<int>(members.size()); }
};

/// Throws unless the population is non-empty and every member has size n.
void validate_population(const Population& population);

enum class MeasureKind { kNVector, kDVector };
enum class TieBreak { kRandom, kFirst };

/// Object -> representation count over a population. Slots are indexed as
/// Object::slot(n); only slots that name real objects are ever non-zero.
class CountTable {
 public:
  CountTable(ProblemKind kind, int n);

  void add(std::span<const int> slots);
  void remove(std::span<const int> slots);

  ProblemKind kind() const noexcept { return kind_; }
  int n() const noexcept { return n_; }
  int mu() const noexcept { return mu_; }
  std::int64_t universe() const noexcept { return universe_; }

  int count(const Object& o) const noexcept { return counts_[static_cast<std::size_t>(o.slot(n_))]; }
  std::span<const int> counts() const noexcept { return counts_; }

  /// Number of objects (zero-count objects included) holding each count value.
  std::int64_t objects_with_count(int c) const noexcept {
    return c < static_cast<int>(histogram_.size()) ? histogram_[static_cast<std::size_t>(c)] : 0;
  }

  int max_count() const noexcept;   // d_P
  std::int64_t max_count_multiplicity() const noexcept { return objects_with_count(max_count()); }  // c_P
  int min_count() const noexcept;
  std::int64_t sum_of_squares() const noexcept { return sum_squares_; }

 private:
  void shift(int slot, int delta);

  ProblemKind kind_;
  int n_;
  int mu_ = 0;
  std::int64_t universe_;
  std::vector<int> counts_;
  std::vector<std::int64_t> histogram_;
  std::int64_t sum_squares_ = 0;
};

/// Descending vector of nominal length `length()`, stored as its non-zero
/// prefix. Compared lexicographically; smaller means more diverse.
class DiversityVector {
 public:
  DiversityVector(std::vector<int> entries, std::int64_t length);

  std::span<const int> nonzero() const noexcept { return nonzero_; }
  std::int64_t length() const noexcept { return length_; }
  int at(std::int64_t i) const noexcept;
  std::vector<int> expanded() const;

  friend bool operator==(const DiversityVector&, const DiversityVector&) = default;

 private:
  std::vector<int> nonzero_;
  std::int64_t length_;
};

std::strong_ordering lex_compare(const DiversityVector& a, const DiversityVector& b);

CountTable build_count_table(const Population& population);

DiversityVector n_vector(const CountTable& table);
DiversityVector d_vector(const Population& population);
DiversityVector measure_vector(const Population& population, MeasureKind measure);

struct Score {
  std::int64_t raw = 0;
  double normalized = 0.0;
};

std::int64_t d1_from_counts(const CountTable& table);
std::int64_t d1_upper_bound(ProblemKind kind, int n, int mu);
Score d1_score(const Population& population);

/// D2 upper bound mu*n; reachable only when mu pairwise object-disjoint
/// solutions exist.
std::int64_t d2_upper_bound(int n, int mu);
Score d2_score(const Population& population);

struct PopulationStats {
  int d_p = 0;
  std::int64_t c_p = 0;
  double unique_fraction = 0.0;
};

PopulationStats population_stats(const Population& population);
PopulationStats population_stats(const CountTable& table);

/// Sum of counts of objects incident to `node`. STSP fills `total` only;
/// ATSP fills `out` and `in` as well. QAP is rejected.
struct IncidentSums {
  int total = 0;
  std::optional<int> out;
  std::optional<int> in;
};

IncidentSums incident_count_sum(int node, const CountTable& table);

// Survival selection ---------------------------------------------------------
//
// Removing member J from P+ yields the lexicographically smallest vector
// exactly when J's removal profile (the multiset of counts of J's objects
// under N, or of J's overlaps with the other members under D) is the
// lexicographically largest when read from the top value down.

struct Selection {
  std::size_t index = 0;
  /// The chosen removal yields a strictly smaller vector than removing the
  /// last member (the offspring).
  bool improves_on_last = false;
};

/// Scratch-buffer holder for repeated selections.
class SurvivalSelector {
 public:
  /// `member_slots[i]` lists the object slots of member i; `table` counts all
  /// members of P+.
  Selection select_by_counts(std::span<const std::vector<int>> member_slots,
                             const CountTable& table, TieBreak tie, Rng& rng);

  /// `overlaps` is the row-major (size x size) overlap matrix of P+.
  Selection select_by_overlaps(std::span<const int> overlaps, std::size_t size, int n,
                               TieBreak tie, Rng& rng);

 private:
  template <typename FillProfile>
  Selection select(std::size_t size, int top, FillProfile&& fill, TieBreak tie, Rng& rng);

  std::vector<int> best_;
  std::vector<int> current_;
  std::vector<int> last_;
};

/// Index J minimizing measure(P+ \ {J}); ties resolved per `tie`.
std::size_t select_removal(const Population& p_plus, MeasureKind measure, TieBreak tie, Rng& rng);

/// Row-major overlap matrix of the population (diagonal = n).
std::vector<int> overlap_matrix(const Population& population);

}  // namespace edo
