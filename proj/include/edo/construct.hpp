#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "edo/diversity.hpp"
#include "edo/mutation.hpp"

namespace edo {

/// Cyclic left shift of the value sequence: result[i] = a[i + 1 mod n].
Permutation shift(const Permutation& a);

/// mu = k*n + r: r shifts of the identity appear k+1 times, the rest k
/// times, so assignment counts differ by at most one.
Population max_div_qap(int n, int mu);

/// mu pairwise edge-disjoint Hamiltonian cycles on K_n,
/// 1 <= mu <= floor((n-1)/2).
Population max_div_stsp(int n, int mu);

/// Both orientations of ceil(mu/2) edge-disjoint undirected cycles, the
/// last one dropped when mu is odd.
Population max_div_atsp(int n, int mu);

/// floor((n+2)/2)+1 permutations with d_P = 2 admitting no improving 2-opt
/// step, n >= 5.
Population qap_two_opt_trap(int n);

/// Three tours with no improving 3-opt insertion step, n >= 8 and
/// n divisible by 4. Certified before being returned.
Population stsp_three_opt_trap(int n);

struct VerificationReport {
  bool improvement_found = false;
  std::int64_t candidates_checked = 0;
  // Witness, when found: member `mutated` moved to `neighbor`, member
  // `removed` dropped.
  std::size_t mutated = 0;
  std::size_t removed = 0;
  std::optional<Permutation> neighbor;
};

inline constexpr std::int64_t kDefaultVerifyCap = 50'000'000;

/// Exhaustive scan over all members b, all neighbors b' of b, all removals a,
/// looking for measure(P \ {a} + {b'}) < measure(P).
VerificationReport verify_no_improvement(const Population& population, const OperatorSpec& spec,
                                         MeasureKind measure,
                                         std::int64_t cap = kDefaultVerifyCap);

inline constexpr std::int64_t kDefaultBruteForceCap = 5'000'000;

/// Lexicographically minimal measure vector over all mu-multisets of
/// distinct solutions of size n.
DiversityVector brute_force_optimum(ProblemKind kind, int n, int mu, MeasureKind measure,
                                    std::int64_t cap = kDefaultBruteForceCap);

/// Every distinct solution of size n (tours in canonical form).
std::vector<Permutation> all_solutions(ProblemKind kind, int n);

}  // namespace edo
