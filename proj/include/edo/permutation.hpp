#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace edo {

enum class ProblemKind { kStsp, kAtsp, kQap };

std::string_view to_string(ProblemKind kind);
ProblemKind parse_problem_kind(std::string_view text);

/// Size of the object universe: n(n-1)/2 undirected edges, n(n-1) arcs,
/// or n^2 assignments.
std::int64_t object_universe_size(ProblemKind kind, int n);

/// A bijection on {0,...,n-1}. Tours read it as a visit order, QAP
/// solutions as the position -> value mapping.
class Permutation {
 public:
  Permutation() = default;

  /// Validates `values`; throws edo::Error naming the first offending index.
  explicit Permutation(std::vector<int> values);

  static Permutation identity(int n);

  int size() const noexcept { return static_cast<int>(values_.size()); }
  int operator[](int i) const noexcept { return values_[static_cast<std::size_t>(i)]; }
  std::span<const int> values() const noexcept { return values_; }

  Permutation inverse() const;

  friend bool operator==(const Permutation&, const Permutation&) = default;
  friend auto operator<=>(const Permutation&, const Permutation&) = default;

 private:
  struct Unchecked {};
  Permutation(std::vector<int> values, Unchecked) : values_(std::move(values)) {}
  friend Permutation make_unchecked(std::vector<int> values);

  std::vector<int> values_;
};

/// Builds a permutation without validation. Callers guarantee bijectivity.
Permutation make_unchecked(std::vector<int> values);

Permutation validate_permutation(std::span<const int> values);

/// One structural unit of a solution: an undirected edge {first, second}
/// with first < second (STSP), an arc (first, second) (ATSP), or an
/// assignment position first -> value second (QAP).
struct Object {
  int first = 0;
  int second = 0;

  /// Dense slot index in an n*n table.
  int slot(int n) const noexcept { return first * n + second; }

  friend bool operator==(const Object&, const Object&) = default;
  friend auto operator<=>(const Object&, const Object&) = default;
};

using ObjectSet = std::vector<Object>;

/// Smallest n for which a solution of `kind` is defined.
int minimum_size(ProblemKind kind);

ObjectSet object_set(const Permutation& p, ProblemKind kind);

/// Slot indices of the objects of p, in the order object_set returns them.
void object_slots(const Permutation& p, ProblemKind kind, std::vector<int>& out);

int overlap(const Permutation& x, const Permutation& y, ProblemKind kind);

/// Canonical representative of the solution p encodes: tours are rotated to
/// start at node 0 (and, for STSP, oriented so the second node is smaller
/// than the last); QAP permutations are already canonical.
Permutation canonical_form(const Permutation& p, ProblemKind kind);

std::string format_one_based(const Permutation& p);

}  // namespace edo
