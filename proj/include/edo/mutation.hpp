#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "edo/permutation.hpp"
#include "edo/rng.hpp"

namespace edo {

enum class OperatorKind {
  kStspTwoOpt,
  kStspInsertion,
  kStspExchange,
  kAtspThreeOpt,
  kAtspFourOpt,
  kQapKOpt,
};

struct OperatorSpec {
  OperatorKind kind = OperatorKind::kQapKOpt;
  int k = 2;  // QAP only

  friend bool operator==(const OperatorSpec&, const OperatorSpec&) = default;
};

ProblemKind operator_problem(OperatorKind kind);

/// Smallest n on which the operator has a non-empty neighborhood.
int operator_minimum_size(const OperatorSpec& spec);

/// Throws unless `spec` is usable on solutions of size n.
void validate_operator(const OperatorSpec& spec, int n);

/// Command-line style name: 2opt, insertion, exchange, 3opt, 4opt, kopt:K.
std::string operator_name(const OperatorSpec& spec);

/// Parses an operator token for the given problem. For QAP, "2opt", "3opt"
/// and "4opt" mean k-opt with that k; "kopt:n/5" resolves to ceil(n/5).
OperatorSpec parse_operator(std::string_view token, ProblemKind problem, int n);

/// !k by the recurrence !k = (k-1)(!(k-1) + !(k-2)).
std::int64_t derangement_count(int k);
std::int64_t binomial(int n, int k);

/// Number of distinct neighbors, or -1 when no closed form exists
/// (STSP insertion).
std::int64_t neighborhood_size_closed_form(const OperatorSpec& spec, int n);

// Operators. Positions are 0-based.

/// Reverses positions i..j (i < j); the traded edges must be non-adjacent.
Permutation stsp_two_opt(const Permutation& p, int i, int j);

/// Removes the element at position i and reinserts it right after the
/// element originally at position j.
Permutation stsp_insertion(const Permutation& p, int i, int j);

/// Swaps positions i and j; cyclic distance at least 3.
Permutation stsp_exchange(const Permutation& p, int i, int j);

/// Cut positions i < j < k: prefix(0..i) + (j+1..k) + (i+1..j) + suffix.
Permutation atsp_three_opt(const Permutation& p, int i, int j, int k);

/// Cut positions i < j < k < h:
/// prefix(0..i) + (k+1..h) + (j+1..k) + (i+1..j) + suffix.
Permutation atsp_four_opt(const Permutation& p, int i, int j, int k, int h);

/// Fixed-point-free permutation of {0,...,k-1}.
class Derangement {
 public:
  explicit Derangement(std::vector<int> values);

  int size() const noexcept { return static_cast<int>(values_.size()); }
  int operator[](int i) const noexcept { return values_[static_cast<std::size_t>(i)]; }
  std::span<const int> values() const noexcept { return values_; }

  friend bool operator==(const Derangement&, const Derangement&) = default;

 private:
  std::vector<int> values_;
};

std::vector<Derangement> all_derangements(int k);
Derangement sample_derangement(int k, Rng& rng);

/// Positions in `subset` (any order, distinct) receive the values found at
/// subset[d(r)] where r is each position's rank within the sorted subset.
Permutation qap_k_opt(const Permutation& p, std::span<const int> subset, const Derangement& d);

Permutation sample_neighbor(const Permutation& p, const OperatorSpec& spec, Rng& rng);

/// Like sample_neighbor, also reporting the positions whose value changed
/// (QAP k-opt only; empty for tour operators).
Permutation sample_neighbor(const Permutation& p, const OperatorSpec& spec, Rng& rng,
                            std::vector<int>& changed_positions);

/// Every distinct neighbor exactly once.
std::vector<Permutation> enumerate_neighbors(const Permutation& p, const OperatorSpec& spec);

}  // namespace edo
