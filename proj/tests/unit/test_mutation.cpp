#include <doctest.h>

#include <cmath>
#include <map>

#include "../oracles.hpp"
#include "edo/error.hpp"
#include "edo/mutation.hpp"
#include "helpers.hpp"

using namespace edo;
using testing_support::perm1;

namespace {

// Tours are equal iff their object sets are.
std::set<std::set<oracle::Pair>> distinct_tours(const std::vector<Permutation>& tours, ProblemKind kind) {
  std::set<std::set<oracle::Pair>> out;
  for (const auto& t : tours) out.insert(oracle::objects(t, kind));
  return out;
}

int differing_positions(const Permutation& a, const Permutation& b) {
  int d = 0;
  for (int i = 0; i < a.size(); ++i) d += a[i] != b[i];
  return d;
}

}  // namespace

TEST_CASE("derangement counts") {
  for (int k = 0; k <= 9; ++k) CHECK(derangement_count(k) == oracle::derangements(k));
  for (int k = 1; k <= 12; ++k) {
    const double e = std::exp(1.0);
    CHECK(derangement_count(k) == static_cast<std::int64_t>(std::floor((static_cast<double>(oracle::factorial(k)) + 1) / e)));
  }
  for (int k = 2; k <= 6; ++k) CHECK(static_cast<std::int64_t>(all_derangements(k).size()) == derangement_count(k));
}

TEST_CASE("sampled derangements have no fixed point") {
  Rng rng(1);
  for (int k = 2; k <= 9; ++k) {
    for (int t = 0; t < 50; ++t) {
      const auto d = sample_derangement(k, rng);
      for (int i = 0; i < k; ++i) CHECK(d[i] != i);
    }
  }
  CHECK_THROWS_AS(Derangement({0, 2, 1}), Error);
}

TEST_CASE("QAP k-opt examples") {
  const auto p = perm1({1, 2, 3, 4, 5});
  const std::vector<int> subset{0, 2};
  CHECK(qap_k_opt(p, subset, Derangement({1, 0})) == perm1({3, 2, 1, 4, 5}));
  const std::vector<int> three{1, 2, 4};
  CHECK(qap_k_opt(p, three, Derangement({1, 2, 0})) == perm1({1, 3, 5, 4, 2}));
  const std::vector<int> repeated{1, 1};
  CHECK_THROWS_AS(qap_k_opt(p, repeated, Derangement({1, 0})), Error);
}

TEST_CASE("tour operator examples") {
  const auto p = perm1({1, 2, 3, 4, 5, 6});
  CHECK(stsp_two_opt(p, 1, 3) == perm1({1, 4, 3, 2, 5, 6}));
  CHECK_THROWS_AS(stsp_two_opt(p, 0, 4), Error);  // segment of length n-1
  CHECK(stsp_exchange(p, 0, 3) == perm1({4, 2, 3, 1, 5, 6}));
  CHECK_THROWS_AS(stsp_exchange(p, 0, 2), Error);
  CHECK(stsp_insertion(p, 0, 3) == perm1({2, 3, 4, 1, 5, 6}));
  CHECK_THROWS_AS(stsp_insertion(p, 0, 1), Error);
  CHECK(atsp_three_opt(p, 0, 2, 4) == perm1({1, 4, 5, 2, 3, 6}));
  CHECK(atsp_four_opt(p, 0, 1, 3, 4) == perm1({1, 5, 3, 4, 2, 6}));
  CHECK_THROWS_AS(atsp_three_opt(p, 2, 1, 4), Error);
}

TEST_CASE("neighbourhood sizes match the closed forms and are distinct") {
  for (int n = 6; n <= 10; ++n) {
    const auto p = Permutation::identity(n);
    for (auto kind : {OperatorKind::kStspTwoOpt, OperatorKind::kStspInsertion, OperatorKind::kStspExchange}) {
      const OperatorSpec spec{kind, 0};
      const auto nb = enumerate_neighbors(p, spec);
      CHECK(static_cast<std::int64_t>(nb.size()) == neighborhood_size_closed_form(spec, n));
      const auto distinct = distinct_tours(nb, ProblemKind::kStsp);
      CHECK(distinct.size() == nb.size());
      CHECK(distinct.count(oracle::objects(p, ProblemKind::kStsp)) == 0);
    }
    for (auto kind : {OperatorKind::kAtspThreeOpt, OperatorKind::kAtspFourOpt}) {
      const OperatorSpec spec{kind, 0};
      const auto nb = enumerate_neighbors(p, spec);
      CHECK(static_cast<std::int64_t>(nb.size()) == neighborhood_size_closed_form(spec, n));
      CHECK(distinct_tours(nb, ProblemKind::kAtsp).size() == nb.size());
    }
    for (int k = 2; k <= 5; ++k) {
      const OperatorSpec spec{OperatorKind::kQapKOpt, k};
      const auto nb = enumerate_neighbors(p, spec);
      CHECK(static_cast<std::int64_t>(nb.size()) == oracle::derangements(k) * oracle::choose(n, k));
      CHECK(std::set<Permutation>(nb.begin(), nb.end()).size() == nb.size());
      for (const auto& q : nb) CHECK(differing_positions(p, q) == k);
    }
  }
}

TEST_CASE("insertion changes exactly three edges") {
  const auto p = Permutation::identity(9);
  for (const auto& q : enumerate_neighbors(p, {OperatorKind::kStspInsertion, 0})) {
    CHECK(oracle::overlap(p, q, ProblemKind::kStsp) == 6);
  }
}

TEST_CASE("2-opt neighbours are exactly the tours sharing n-2 edges") {
  const int n = 7;
  const auto p = Permutation::identity(n);
  std::vector<int> v(n);
  std::iota(v.begin(), v.end(), 0);
  std::set<std::set<oracle::Pair>> expected;
  do {
    if (v[0] != 0) break;
    const Permutation q(v);
    if (oracle::overlap(p, q, ProblemKind::kStsp) == n - 2) expected.insert(oracle::objects(q, ProblemKind::kStsp));
  } while (std::next_permutation(v.begin(), v.end()));
  CHECK(distinct_tours(enumerate_neighbors(p, {OperatorKind::kStspTwoOpt, 0}), ProblemKind::kStsp) == expected);
}

TEST_CASE("sampled neighbours lie in the enumerated neighbourhood and cover it") {
  Rng rng(29);
  const int n = 7;
  const auto p = testing_support::random_permutation(n, rng);
  const OperatorSpec specs[] = {{OperatorKind::kStspTwoOpt, 0},   {OperatorKind::kStspInsertion, 0},
                                {OperatorKind::kStspExchange, 0}, {OperatorKind::kAtspThreeOpt, 0},
                                {OperatorKind::kAtspFourOpt, 0},  {OperatorKind::kQapKOpt, 2},
                                {OperatorKind::kQapKOpt, 3},      {OperatorKind::kQapKOpt, 5}};
  for (const auto& spec : specs) {
    const auto all = enumerate_neighbors(p, spec);
    std::map<Permutation, int> hits;
    for (const auto& q : all) hits[q] = 0;
    const int draws = static_cast<int>(all.size()) * 60;
    for (int t = 0; t < draws; ++t) {
      const auto q = sample_neighbor(p, spec, rng);
      REQUIRE(hits.count(q) == 1);
      ++hits[q];
    }
    int lo = draws;
    int hi = 0;
    for (const auto& [q, c] : hits) {
      lo = std::min(lo, c);
      hi = std::max(hi, c);
    }
    // Roughly uniform: every neighbour hit, none wildly over-represented.
    CHECK(lo > 15);
    CHECK(hi < 120);
  }
}

TEST_CASE("changed positions are reported for k-opt") {
  Rng rng(31);
  const auto p = Permutation::identity(10);
  std::vector<int> changed;
  const auto q = sample_neighbor(p, {OperatorKind::kQapKOpt, 4}, rng, changed);
  CHECK(changed.size() == 4);
  for (int i : changed) CHECK(q[i] != p[i]);
  CHECK(differing_positions(p, q) == 4);
}

TEST_CASE("operator parsing and validation") {
  CHECK(parse_operator("2opt", ProblemKind::kQap, 10) == OperatorSpec{OperatorKind::kQapKOpt, 2});
  CHECK(parse_operator("kopt:7", ProblemKind::kQap, 10).k == 7);
  CHECK(parse_operator("kopt:n/5", ProblemKind::kQap, 30).k == 6);
  CHECK(parse_operator("kopt:n/5", ProblemKind::kQap, 21).k == 5);
  CHECK(parse_operator("insertion", ProblemKind::kStsp, 10).kind == OperatorKind::kStspInsertion);
  CHECK(parse_operator("4opt", ProblemKind::kAtsp, 10).kind == OperatorKind::kAtspFourOpt);
  CHECK_THROWS_AS(parse_operator("insertion", ProblemKind::kAtsp, 10), Error);
  CHECK_THROWS_AS(parse_operator("kopt:1", ProblemKind::kQap, 10), Error);
  CHECK_THROWS_AS(validate_operator({OperatorKind::kStspExchange, 0}, 5), Error);
  CHECK_THROWS_AS(validate_operator({OperatorKind::kQapKOpt, 6}, 5), Error);
  CHECK(operator_name({OperatorKind::kQapKOpt, 3}) == "kopt:3");
}
