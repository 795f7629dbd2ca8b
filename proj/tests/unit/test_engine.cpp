#include <doctest.h>

#include <sstream>

#include "../oracles.hpp"
#include "edo/construct.hpp"
#include "edo/engine.hpp"
#include "edo/error.hpp"
#include "edo/qaplib_io.hpp"
#include "helpers.hpp"

using namespace edo;

namespace {

EaConfig qap_config(int mu, std::int64_t budget, std::uint64_t seed) {
  EaConfig config;
  config.mu = mu;
  config.budget = budget;
  config.op = {OperatorKind::kQapKOpt, 2};
  config.seed = seed;
  return config;
}

QapInstance with_brute_optimum(QapInstance instance) {
  double best = std::numeric_limits<double>::infinity();
  for (const auto& p : all_solutions(ProblemKind::kQap, instance.size())) {
    const double c = cost(p, instance);
    if (c < best) {
      best = c;
      instance.opt_perm = p;
    }
  }
  instance.opt_value = best;
  return instance;
}

}  // namespace

TEST_CASE("duplicate initialization") {
  const Instance instance = gen_synthetic_qap(6, 1);
  Rng rng(3);
  const auto p = init_population(qap_config(3, 10, 0), instance, rng);
  CHECK(p.mu() == 3);
  CHECK(population_stats(p).d_p == 3);
  CHECK(p.members[0] == p.members[1]);
  CHECK(p.members[1] == p.members[2]);
}

TEST_CASE("configuration errors") {
  const Instance instance = gen_synthetic_qap(6, 1);
  auto config = qap_config(3, 10, 0);
  config.init_mode = InitMode::kDuplicateOpt;
  CHECK_THROWS_AS(validate_config(config, instance), Error);

  config = qap_config(2, 10, 0);
  config.init_mode = InitMode::kGiven;
  config.initial = Population{ProblemKind::kQap, 5, {Permutation::identity(5), Permutation::identity(5)}};
  CHECK_THROWS_AS(validate_config(config, instance), Error);

  config = qap_config(3, 0, 0);
  CHECK_THROWS_AS(validate_config(config, instance), Error);

  config = qap_config(3, 10, 0);
  config.alpha = 0.1;
  CHECK_THROWS_AS(validate_config(config, instance), Error);

  config = qap_config(3, 10, 0);
  config.op = {OperatorKind::kStspTwoOpt, 0};
  CHECK_THROWS_AS(validate_config(config, instance), Error);
}

TEST_CASE("a quality gate below every cost freezes the population") {
  const Instance instance = gen_synthetic_qap(7, 2);
  auto config = qap_config(3, 100, 5);
  config.threshold = -1;
  Rng rng(5);
  Population start{ProblemKind::kQap, 7, {}};
  for (int i = 0; i < 3; ++i) start.members.push_back(testing_support::random_permutation(7, rng));
  EaState state(config, instance, start);
  for (int i = 0; i < 200; ++i) CHECK_FALSE(state.step(rng));
  CHECK(state.population().members == start.members);
  CHECK(state.evaluations() == 200);
}

TEST_CASE("budget of one is one evaluation") {
  const Instance instance = gen_synthetic_qap(6, 1);
  const auto record = run_ea(qap_config(3, 1, 9), instance);
  CHECK(record.evaluations == 1);
  CHECK_FALSE(record.termination_iteration.has_value());
}

TEST_CASE("identical seeds give identical records") {
  const Instance instance = gen_synthetic_qap(9, 4);
  for (auto measure : {MeasureKind::kNVector, MeasureKind::kDVector}) {
    auto config = qap_config(5, 405, 77);
    config.measure = measure;
    config.checkpoint_count = 17;
    const auto a = run_ea(config, instance);
    const auto b = run_ea(config, instance);
    CHECK(a.checkpoints == b.checkpoints);
    CHECK(a.termination_iteration == b.termination_iteration);
    CHECK(a.evaluations == b.evaluations);
    CHECK(a.final_population.members == b.final_population.members);
    config.seed = 78;
    const auto c = run_ea(config, instance);
    CHECK(c.final_population.members != a.final_population.members);
  }
}

TEST_CASE("small QAP converges within mu n^2") {
  const Instance instance = gen_synthetic_qap(4, 11);
  int reached = 0;
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const auto record = run_ea(qap_config(2, 32, seed), instance);
    if (record.termination_iteration) {
      ++reached;
      CHECK(population_stats(record.final_population).d_p == 1);
    }
  }
  CHECK(reached >= 29);
}

TEST_CASE("measure is monotone and the population tracks its tables") {
  for (auto measure : {MeasureKind::kNVector, MeasureKind::kDVector}) {
    for (auto kind : {ProblemKind::kQap, ProblemKind::kStsp, ProblemKind::kAtsp}) {
      const int n = 9;
      Instance instance = kind == ProblemKind::kQap ? Instance(gen_synthetic_qap(n, 3))
                                                    : Instance(gen_synthetic_tsp(n, kind == ProblemKind::kStsp, 3));
      EaConfig config;
      config.mu = 6;
      config.budget = 1000;
      config.measure = measure;
      config.op = kind == ProblemKind::kQap    ? OperatorSpec{OperatorKind::kQapKOpt, 3}
                  : kind == ProblemKind::kStsp ? OperatorSpec{OperatorKind::kStspTwoOpt, 0}
                                               : OperatorSpec{OperatorKind::kAtspThreeOpt, 0};
      Rng rng(21);
      EaState state(config, instance, init_population(config, instance, rng));
      auto previous = oracle::measure(state.population(), measure);
      for (int i = 0; i < 400; ++i) {
        state.step(rng);
        const auto current = oracle::measure(state.population(), measure);
        REQUIRE(current <= previous);
        REQUIRE(state.population().mu() == 6);
        REQUIRE(state.measure().expanded() == current);
        previous = current;
      }
      const auto stats = population_stats(state.population());
      CHECK(stats.d_p == state.counts().max_count());
    }
  }
}

TEST_CASE("quality constraint is never violated") {
  const Instance instance = with_brute_optimum(gen_synthetic_qap(6, 8));
  auto config = qap_config(4, 2000, 2);
  config.alpha = 0.15;
  config.init_mode = InitMode::kDuplicateOpt;
  validate_config(config, instance);
  const double limit = effective_threshold(config, instance);
  CHECK(limit == doctest::Approx(1.15 * *instance_optimum(instance)));
  Rng rng(2);
  EaState state(config, instance, init_population(config, instance, rng));
  bool moved = false;
  for (int i = 0; i < 2000; ++i) {
    moved |= state.step(rng);
    for (std::size_t m = 0; m < 4; ++m) {
      REQUIRE(state.member_cost(m) == doctest::Approx(cost(state.population().members[m], instance)));
      REQUIRE(state.member_cost(m) <= limit);
    }
  }
  CHECK(moved);
}

TEST_CASE("exact optimum with alpha zero keeps the optimum copies") {
  const Instance instance = with_brute_optimum(gen_synthetic_qap(5, 12));
  auto config = qap_config(3, 200, 4);
  config.alpha = 0.0;
  config.init_mode = InitMode::kDuplicateOpt;
  const auto record = run_ea(config, instance);
  for (const auto& m : record.final_population.members) {
    CHECK(cost(m, instance) <= *instance_optimum(instance));
  }
}

TEST_CASE("D measure with mu above n never stops early") {
  const Instance instance = gen_synthetic_qap(5, 1);
  auto config = qap_config(7, 500, 3);
  config.measure = MeasureKind::kDVector;
  const auto record = run_ea(config, instance);
  CHECK_FALSE(record.termination_iteration.has_value());
  CHECK(record.evaluations == 500);
}

TEST_CASE("N-driven run stops at the balanced profile") {
  const Instance instance = gen_synthetic_qap(6, 1);
  auto config = qap_config(9, 9 * 36 * 4, 3);
  const auto record = run_ea(config, instance);
  REQUIRE(record.termination_iteration.has_value());
  const auto table = build_count_table(record.final_population);
  CHECK(table.max_count() - table.min_count() <= 1);
  CHECK(record.checkpoints.back().iteration == *record.termination_iteration);
  CHECK(record.checkpoints.back().d1_norm == doctest::Approx(1.0));
}

TEST_CASE("from duplicates every distinct 2-opt offspring reduces (d_P, c_P)") {
  for (int n = 4; n <= 8; ++n) {
    for (int mu = 2; mu <= (n + 2) / 2; ++mu) {
      const Population dups{ProblemKind::kQap, n, std::vector<Permutation>(static_cast<std::size_t>(mu), Permutation::identity(n))};
      const auto before = population_stats(dups);
      Rng rng(1);
      for (const auto& child : enumerate_neighbors(dups.members[0], {OperatorKind::kQapKOpt, 2})) {
        Population plus = dups;
        plus.members.push_back(child);
        const auto removed = select_removal(plus, MeasureKind::kNVector, TieBreak::kFirst, rng);
        plus.members.erase(plus.members.begin() + static_cast<std::ptrdiff_t>(removed));
        const auto after = population_stats(plus);
        CHECK(std::pair(after.d_p, after.c_p) < std::pair(before.d_p, before.c_p));
      }
    }
  }
}

TEST_CASE("CSV output") {
  const Instance instance = gen_synthetic_qap(6, 1);
  auto config = qap_config(3, 108, 1);
  config.checkpoint_count = 4;
  const auto record = run_ea(config, instance);
  std::ostringstream traj;
  write_trajectory_csv(traj, record);
  CHECK(traj.str().rfind("iteration,d1_norm,d2_norm,d_p,c_p,unique_frac\n", 0) == 0);
  std::ostringstream summary;
  write_summary_csv(summary, record);
  const std::string text = summary.str();
  CHECK(text.rfind("termination_iteration,evaluations,d1_norm,d2_norm,d_p,c_p,unique_frac,seed\n", 0) == 0);
  CHECK(std::count(text.begin(), text.end(), '\n') == 2);
}
