#pragma once

#include <algorithm>
#include <numeric>
#include <vector>

#include "edo/diversity.hpp"

namespace testing_support {

inline edo::Permutation random_permutation(int n, edo::Rng& rng) {
  std::vector<int> v(static_cast<std::size_t>(n));
  std::iota(v.begin(), v.end(), 0);
  std::shuffle(v.begin(), v.end(), rng);
  return edo::Permutation(std::move(v));
}

/// Random population; with `repeat_bias` > 0 members are often copies or
/// near-copies of earlier ones, so counts above one are common.
inline edo::Population random_population(edo::ProblemKind kind, int n, int mu, edo::Rng& rng,
                                         double repeat_bias = 0.4) {
  edo::Population p{kind, n, {}};
  std::bernoulli_distribution repeat(repeat_bias);
  for (int i = 0; i < mu; ++i) {
    if (i > 0 && repeat(rng)) {
      p.members.push_back(p.members[static_cast<std::size_t>(edo::uniform_below(rng, i))]);
    } else {
      p.members.push_back(random_permutation(n, rng));
    }
  }
  return p;
}

inline edo::Permutation perm1(std::initializer_list<int> one_based) {
  std::vector<int> v;
  for (int x : one_based) v.push_back(x - 1);
  return edo::Permutation(std::move(v));
}

}  // namespace testing_support
