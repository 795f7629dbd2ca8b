#include <doctest.h>

#include "../oracles.hpp"
#include "edo/diversity.hpp"
#include "edo/error.hpp"
#include "helpers.hpp"

using namespace edo;
using testing_support::perm1;
using testing_support::random_population;

namespace {

Population worked_example(bool primed) {
  const auto a1 = perm1({1, 2, 3, 4});
  const auto a2 = perm1({1, 3, 4, 2});
  const auto a3 = perm1({3, 2, 4, 1});
  const auto a4 = perm1({2, 4, 3, 1});
  const auto a5 = perm1({2, 3, 1, 4});
  const auto a6 = perm1({4, 2, 1, 3});
  const auto a7 = perm1({3, 1, 2, 4});
  if (primed) return {ProblemKind::kQap, 4, {a1, a2, a4, a6, a7}};
  return {ProblemKind::kQap, 4, {a1, a2, a3, a4, a5}};
}

const ProblemKind kKinds[] = {ProblemKind::kStsp, ProblemKind::kAtsp, ProblemKind::kQap};

}  // namespace

TEST_CASE("worked QAP example with n = 4 and mu = 5") {
  const auto p = worked_example(false);
  const auto q = worked_example(true);
  CHECK(d2_score(p).raw == 15);
  CHECK(d2_score(q).raw == 15);
  CHECK(d_vector(p).expanded() == std::vector<int>{1, 1, 1, 1, 1, 1, 1, 1, 0, 0});
  CHECK(d_vector(q).expanded() == std::vector<int>{1, 1, 1, 1, 0, 0, 0, 0, 0, 0});
  CHECK(lex_compare(d_vector(p), d_vector(q)) == std::strong_ordering::greater);
}

TEST_CASE("count table tracks counts, histogram and squares") {
  Rng rng(3);
  for (auto kind : kKinds) {
    for (int trial = 0; trial < 40; ++trial) {
      const int n = 4 + trial % 5;
      const auto p = random_population(kind, n, 2 + trial % 6, rng);
      const auto table = build_count_table(p);
      const auto expected = oracle::counts(p);
      std::int64_t squares = 0;
      int max_count = 0;
      for (const auto& [o, c] : expected) {
        CHECK(table.count({o.first, o.second}) == c);
        squares += static_cast<std::int64_t>(c) * c;
        max_count = std::max(max_count, c);
      }
      CHECK(table.sum_of_squares() == squares);
      CHECK(table.max_count() == max_count);
      std::int64_t nonzero = 0;
      for (int c = 1; c <= max_count; ++c) nonzero += table.objects_with_count(c);
      CHECK(nonzero == static_cast<std::int64_t>(expected.size()));
      CHECK(table.objects_with_count(0) == oracle::universe(kind, n) - nonzero);
    }
  }
}

TEST_CASE("count table add and remove are inverse") {
  CountTable table(ProblemKind::kQap, 4);
  const std::vector<int> a{0, 5, 10, 15};
  table.add(a);
  table.add(a);
  CHECK(table.max_count() == 2);
  table.remove(a);
  CHECK(table.max_count() == 1);
  CHECK(table.min_count() == 0);
  table.remove(a);
  CHECK(table.max_count() == 0);
  CHECK_THROWS_AS(table.remove(a), Error);
}

TEST_CASE("measure vectors agree with the definitions") {
  Rng rng(5);
  for (auto kind : kKinds) {
    for (int trial = 0; trial < 60; ++trial) {
      const int n = 4 + trial % 5;
      const auto p = random_population(kind, n, 2 + trial % 7, rng);
      CHECK(n_vector(build_count_table(p)).expanded() == oracle::n_vector(p));
      CHECK(d_vector(p).expanded() == oracle::d_vector(p));
    }
  }
}

TEST_CASE("lexicographic comparison") {
  const DiversityVector a({2, 1}, 4);
  const DiversityVector b({2, 1, 1}, 4);
  const DiversityVector c({3}, 4);
  CHECK(lex_compare(a, b) == std::strong_ordering::less);
  CHECK(lex_compare(b, c) == std::strong_ordering::less);
  CHECK(lex_compare(a, a) == std::strong_ordering::equal);
  CHECK_THROWS_AS((void)lex_compare(a, DiversityVector({2, 1}, 5)), Error);
  CHECK(a.expanded() == std::vector<int>{2, 1, 0, 0});
}

TEST_CASE("D1 count formula matches the pairwise definition") {
  Rng rng(9);
  for (auto kind : kKinds) {
    for (int trial = 0; trial < 60; ++trial) {
      const int n = 4 + trial % 6;
      const auto p = random_population(kind, n, 1 + trial % 8, rng);
      CHECK(d1_score(p).raw == oracle::d1(p));
    }
  }
}

TEST_CASE("D1 upper bound uses the balanced count profile") {
  // 20 tokens over 16 assignments: four counts of 2, twelve of 1.
  CHECK(d1_upper_bound(ProblemKind::kQap, 4, 5) == 5 * 4 * 4 + 20 - (4 * 4 + 12));
  CHECK(d1_upper_bound(ProblemKind::kQap, 4, 5) == 72);
  // mu disjoint tours reach mu (mu - 1) n.
  CHECK(d1_upper_bound(ProblemKind::kStsp, 7, 3) == 3 * 2 * 7);
  const Population dup{ProblemKind::kQap, 5, {Permutation::identity(5), Permutation::identity(5)}};
  CHECK(d1_score(dup).raw == 0);
  CHECK(d1_score(dup).normalized == 0.0);
}

TEST_CASE("D2 matches the nearest-neighbour definition") {
  Rng rng(13);
  for (auto kind : kKinds) {
    for (int trial = 0; trial < 60; ++trial) {
      const int n = 4 + trial % 6;
      const auto p = random_population(kind, n, 2 + trial % 7, rng);
      CHECK(d2_score(p).raw == oracle::d2(p));
      CHECK(d2_score(p).normalized == doctest::Approx(static_cast<double>(oracle::d2(p)) / (p.mu() * n)));
    }
  }
  const Population one{ProblemKind::kQap, 3, {Permutation::identity(3)}};
  CHECK_THROWS_AS(d2_score(one), Error);
}

TEST_CASE("population statistics") {
  const Population p{ProblemKind::kQap, 3,
                     {Permutation::identity(3), Permutation::identity(3), perm1({2, 3, 1})}};
  const auto stats = population_stats(p);
  CHECK(stats.d_p == 2);
  CHECK(stats.c_p == 3);
  CHECK(stats.unique_fraction == doctest::Approx(3.0 / 9.0));
}

TEST_CASE("incident count sums") {
  const Population p{ProblemKind::kStsp, 5, {perm1({1, 2, 3, 4, 5}), perm1({1, 3, 5, 2, 4})}};
  const auto table = build_count_table(p);
  for (int v = 0; v < 5; ++v) CHECK(incident_count_sum(v, table).total == 4);
  const Population q{ProblemKind::kAtsp, 4, {perm1({1, 2, 3, 4})}};
  const auto s = incident_count_sum(0, build_count_table(q));
  CHECK(*s.out == 1);
  CHECK(*s.in == 1);
  CHECK_THROWS_AS(incident_count_sum(0, build_count_table(Population{ProblemKind::kQap, 3, {Permutation::identity(3)}})),
                  Error);
}

TEST_CASE("survival selection picks a true minimiser") {
  Rng rng(17);
  for (auto measure : {MeasureKind::kNVector, MeasureKind::kDVector}) {
    for (auto kind : kKinds) {
      for (int trial = 0; trial < 80; ++trial) {
        const int n = 4 + trial % 5;
        const auto p = random_population(kind, n, 3 + trial % 6, rng, 0.5);
        const auto best = oracle::argmin_removal(p, measure);
        const auto chosen = select_removal(p, measure, TieBreak::kRandom, rng);
        CHECK(best.count(chosen) == 1);
        CHECK(select_removal(p, measure, TieBreak::kFirst, rng) == *best.begin());
      }
    }
  }
}

TEST_CASE("random tie-breaking reaches every tied member") {
  Rng rng(19);
  const Population dup{ProblemKind::kQap, 5, std::vector<Permutation>(4, Permutation::identity(5))};
  std::set<std::size_t> seen;
  for (int i = 0; i < 200; ++i) seen.insert(select_removal(dup, MeasureKind::kNVector, TieBreak::kRandom, rng));
  CHECK(seen.size() == 4);
}

TEST_CASE("improvement flag compares against removing the last member") {
  Rng rng(23);
  SurvivalSelector selector;
  Population p{ProblemKind::kQap, 4, {Permutation::identity(4), Permutation::identity(4), perm1({2, 1, 4, 3})}};
  std::vector<std::vector<int>> slots(3);
  CountTable table(ProblemKind::kQap, 4);
  for (int i = 0; i < 3; ++i) {
    object_slots(p.members[static_cast<std::size_t>(i)], ProblemKind::kQap, slots[static_cast<std::size_t>(i)]);
    table.add(slots[static_cast<std::size_t>(i)]);
  }
  auto s = selector.select_by_counts(slots, table, TieBreak::kFirst, rng);
  CHECK(s.index == 0);
  CHECK(s.improves_on_last);

  // Offspring duplicating a member: removing it or its twin ties, no gain.
  p.members[2] = p.members[1];
  table = build_count_table(p);
  object_slots(p.members[2], ProblemKind::kQap, slots[2]);
  s = selector.select_by_counts(slots, table, TieBreak::kFirst, rng);
  CHECK_FALSE(s.improves_on_last);
}
