#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>

#include "edo/error.hpp"
#include "edo/experiment.hpp"
#include "edo/qaplib_io.hpp"

using namespace edo;

namespace {

std::string first_line(const std::filesystem::path& path) {
  std::ifstream in(path);
  std::string line;
  std::getline(in, line);
  return line;
}

std::size_t line_count(const std::filesystem::path& path) {
  std::ifstream in(path);
  std::size_t count = 0;
  for (std::string line; std::getline(in, line);) ++count;
  return count;
}

double sample_std(const std::vector<double>& v) {
  double mean = 0;
  for (double x : v) mean += x;
  mean /= static_cast<double>(v.size());
  double sq = 0;
  for (double x : v) sq += (x - mean) * (x - mean);
  return v.size() > 1 ? std::sqrt(sq / static_cast<double>(v.size() - 1)) : 0.0;
}

QapInstance with_identity_optimum(QapInstance q) {
  q.opt_perm = Permutation::identity(q.size());
  q.opt_value = cost(*q.opt_perm, q);
  return q;
}

}  // namespace

TEST_CASE("label hash is stable and distinguishes labels") {
  CHECK(label_hash("") == 0xcbf29ce484222325ULL);
  CHECK(label_hash("a") == 0xaf63dc4c8601ec8cULL);
  CHECK(label_hash("nug30") != label_hash("nug31"));
}

TEST_CASE("heat map aggregation matches the per-run rows") {
  HeatmapSpec spec;
  spec.ns = {6, 8};
  spec.mus = {2, 6, 9};
  spec.ops = {"2opt", "3opt"};
  spec.reps = 4;
  spec.seed = 5;
  spec.threads = 2;
  const auto result = experiment_heatmap(spec);
  CHECK(result.runs.size() == 2 * 3 * 2 * 4);
  CHECK(result.cells.size() == 2 * 3 * 2);
  for (const auto& cell : result.cells) {
    std::vector<double> pct;
    int reached = 0;
    for (const auto& run : result.runs) {
      if (run.n == cell.n && run.mu == cell.mu && run.op == cell.op) {
        pct.push_back(run.percent);
        reached += run.reached;
        CHECK(run.budget == static_cast<std::int64_t>(run.mu) * run.n * run.n);
        CHECK(run.percent == doctest::Approx(100.0 * static_cast<double>(run.steps) / static_cast<double>(run.budget)));
      }
    }
    REQUIRE(pct.size() == 4);
    double mean = 0;
    for (double x : pct) mean += x / 4;
    CHECK(cell.mean_percent == doctest::Approx(mean));
    CHECK(cell.std_percent == doctest::Approx(sample_std(pct)));
    CHECK(cell.reached == reached);
  }
  // Any cell reruns in isolation to the same numbers.
  for (const auto& run : result.runs) {
    if (run.rep != 2) continue;
    const auto again = run_heatmap_cell(run.n, run.mu, run.op, run.rep, spec.seed);
    CHECK(again.seed == run.seed);
    CHECK(again.steps == run.steps);
    CHECK(again.reached == run.reached);
  }
  // Thread count does not change results.
  spec.threads = 1;
  const auto serial = experiment_heatmap(spec);
  for (std::size_t i = 0; i < serial.runs.size(); ++i) CHECK(serial.runs[i].steps == result.runs[i].steps);
}

TEST_CASE("unconstrained experiment") {
  UnconstrainedSpec spec;
  spec.instances.push_back({"syn7", gen_synthetic_qap(7, 3)});
  spec.instances.push_back({"tsp8", gen_synthetic_tsp(8, true, 3)});
  spec.mus = {3, 9};
  spec.reps = 3;
  spec.checkpoints = 10;
  spec.threads = 2;
  const auto result = experiment_unconstrained(spec);
  CHECK(result.runs.size() == 2 * 2 * 2 * 3);
  CHECK(result.cells.size() == 2 * 2 * 2);
  for (const auto& cell : result.cells) {
    std::vector<double> steps;
    int terminated = 0;
    for (const auto& run : result.runs) {
      if (run.instance != cell.instance || run.mu != cell.mu || run.measure != cell.measure) continue;
      const auto& t = run.record.termination_iteration;
      terminated += t.has_value();
      steps.push_back(static_cast<double>(t ? *t : run.budget));
    }
    REQUIRE(steps.size() == 3);
    CHECK(cell.terminated == terminated);
    CHECK(cell.mean_steps == doctest::Approx((steps[0] + steps[1] + steps[2]) / 3));
    CHECK(cell.std_steps == doctest::Approx(sample_std(steps)));
    CHECK_FALSE(cell.trajectory.empty());
  }
  const auto dir = std::filesystem::temp_directory_path() / "edo_unconstrained_test";
  std::filesystem::remove_all(dir);
  write_unconstrained(result, dir);
  CHECK(first_line(dir / "unconstrained_runs.csv") ==
        "instance,n,mu,measure,operator,rep,seed,budget,termination_iteration,d1_norm,d2_norm,d_p,c_p,unique_frac");
  CHECK(line_count(dir / "unconstrained_runs.csv") == result.runs.size() + 1);
  CHECK(line_count(dir / "unconstrained_summary.csv") == result.cells.size() + 1);
  CHECK(std::filesystem::exists(dir / "unconstrained_trajectories.csv"));
  CHECK(std::filesystem::exists(dir / "unconstrained_aggregate.csv"));
  std::filesystem::remove_all(dir);

  spec.mus = {1};
  CHECK_THROWS_AS(experiment_unconstrained(spec), Error);
}

TEST_CASE("constrained experiment") {
  ConstrainedSpec spec;
  spec.instances.push_back({"syn6", with_identity_optimum(gen_synthetic_qap(6, 2))});
  spec.mus = {3};
  spec.alphas = {0.0, 0.5};
  spec.reps = 3;
  spec.threads = 1;
  const auto result = experiment_constrained(spec);
  CHECK(result.runs.size() == 2 * 2 * 3);
  CHECK(result.cells.size() == 2 * 2);
  for (const auto& cell : result.cells) {
    CHECK(cell.mean_d1 >= 0.0);
    CHECK(cell.mean_d1 <= 1.0);
  }
  const auto dir = std::filesystem::temp_directory_path() / "edo_constrained_test";
  std::filesystem::remove_all(dir);
  write_constrained(result, dir);
  CHECK(first_line(dir / "constrained_table.csv") ==
        "instance,n,mu,alpha,measure,operator,reps,mean_d1,std_d1,mean_d2,std_d2,mean_unique,std_unique");
  std::filesystem::remove_all(dir);

  ConstrainedSpec missing;
  missing.instances.push_back({"noopt", gen_synthetic_qap(6, 2)});
  missing.reps = 1;
  missing.mus = {3};
  CHECK_THROWS_AS(experiment_constrained(missing), Error);
}
