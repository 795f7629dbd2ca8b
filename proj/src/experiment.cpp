#include "edo/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <condition_variable>
#include <cstring>
#include <exception>
#include <fstream>
#include <mutex>
#include <thread>

#include "edo/error.hpp"
#include "edo/qaplib_io.hpp"

namespace edo {

std::uint64_t label_hash(std::string_view label) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : label) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

int default_thread_count() {
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

std::string_view measure_name(MeasureKind measure) {
  return measure == MeasureKind::kNVector ? "n" : "d";
}

MeasureKind parse_measure(std::string_view text) {
  if (text == "n" || text == "N") return MeasureKind::kNVector;
  if (text == "d" || text == "D") return MeasureKind::kDVector;
  fail(ErrorCode::kParse, "unknown measure '" + std::string(text) + "' (expected n or d)");
}

namespace {

template <typename Result, typename Work, typename Collect>
void run_ordered(std::size_t count, int threads, Work&& work, Collect&& collect) {
  if (threads <= 0) threads = default_thread_count();
  threads = static_cast<int>(std::min<std::size_t>(static_cast<std::size_t>(threads), count));
  if (threads <= 1) {
    for (std::size_t i = 0; i < count; ++i) {
      Result r = work(i);
      collect(i, r);
    }
    return;
  }
  std::vector<std::optional<Result>> results(count);
  std::vector<std::exception_ptr> errors(count);
  std::vector<char> done(count, 0);
  std::atomic<std::size_t> next{0};
  std::mutex mutex;
  std::condition_variable ready;

  std::vector<std::thread> pool;
  for (int t = 0; t < threads; ++t) {
    pool.emplace_back([&] {
      for (std::size_t i; (i = next.fetch_add(1)) < count;) {
        std::optional<Result> r;
        std::exception_ptr error;
        try {
          r = work(i);
        } catch (...) {
          error = std::current_exception();
        }
        std::lock_guard lock(mutex);
        results[i] = std::move(r);
        errors[i] = error;
        done[i] = 1;
        ready.notify_all();
      }
    });
  }
  std::exception_ptr failure;
  for (std::size_t i = 0; i < count && !failure; ++i) {
    std::optional<Result> r;
    {
      std::unique_lock lock(mutex);
      ready.wait(lock, [&] { return done[i] != 0; });
      if (errors[i]) {
        failure = errors[i];
        next.store(count);
        break;
      }
      r = std::move(results[i]);
    }
    try {
      collect(i, *r);
    } catch (...) {
      failure = std::current_exception();
      next.store(count);
    }
  }
  for (auto& worker : pool) worker.join();
  if (failure) std::rethrow_exception(failure);
}

struct MeanStd {
  double mean = 0;
  double std = 0;
};

MeanStd mean_std(const std::vector<double>& values) {
  MeanStd out;
  if (values.empty()) return out;
  double sum = 0;
  for (double v : values) sum += v;
  out.mean = sum / static_cast<double>(values.size());
  if (values.size() > 1) {
    double sq = 0;
    for (double v : values) sq += (v - out.mean) * (v - out.mean);
    out.std = std::sqrt(sq / static_cast<double>(values.size() - 1));
  }
  return out;
}

std::ofstream open_csv(const std::filesystem::path& dir, const std::string& name) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  const auto path = dir / name;
  std::ofstream out(path);
  if (!out) fail(ErrorCode::kIo, "cannot write " + path.string());
  out.precision(10);
  return out;
}

void check_common(const std::vector<int>& mus, int reps) {
  if (reps < 1) fail(ErrorCode::kInvalidArgument, "repetitions must be at least 1");
  if (mus.empty()) fail(ErrorCode::kInvalidArgument, "empty mu list");
  for (int mu : mus) {
    if (mu < 2) fail(ErrorCode::kInvalidArgument, "mu = " + std::to_string(mu) + " rejected: mu must be at least 2");
  }
}

std::int64_t default_budget(int mu, int n) {
  return static_cast<std::int64_t>(mu) * n * n;
}

std::uint64_t alpha_bits(double alpha) {
  std::uint64_t bits = 0;
  static_assert(sizeof bits == sizeof alpha);
  std::memcpy(&bits, &alpha, sizeof bits);
  return bits;
}

}  // namespace

// Unconstrained ---------------------------------------------------------------

UnconstrainedCell aggregate_unconstrained(const std::vector<const UnconstrainedRun*>& runs) {
  if (runs.empty()) fail(ErrorCode::kInvalidArgument, "no runs to aggregate");
  UnconstrainedCell cell;
  const auto& first = *runs.front();
  cell.instance = first.instance;
  cell.n = first.n;
  cell.mu = first.mu;
  cell.measure = first.measure;
  cell.op = first.op;
  cell.reps = static_cast<int>(runs.size());

  std::vector<std::int64_t> iterations;
  std::vector<double> steps;
  for (const auto* run : runs) {
    for (const auto& cp : run->record.checkpoints) iterations.push_back(cp.iteration);
    if (run->record.termination_iteration) ++cell.terminated;
    steps.push_back(static_cast<double>(run->record.termination_iteration.value_or(run->budget)));
  }
  std::sort(iterations.begin(), iterations.end());
  iterations.erase(std::unique(iterations.begin(), iterations.end()), iterations.end());
  const auto s = mean_std(steps);
  cell.mean_steps = s.mean;
  cell.std_steps = s.std;

  std::vector<std::size_t> cursor(runs.size(), 0);
  std::vector<double> d1(runs.size());
  std::vector<double> d2(runs.size());
  for (std::int64_t t : iterations) {
    for (std::size_t r = 0; r < runs.size(); ++r) {
      const auto& cps = runs[r]->record.checkpoints;
      while (cursor[r] + 1 < cps.size() && cps[cursor[r] + 1].iteration <= t) ++cursor[r];
      d1[r] = cps[cursor[r]].d1_norm;
      d2[r] = cps[cursor[r]].d2_norm;
    }
    const auto a = mean_std(d1);
    const auto b = mean_std(d2);
    cell.trajectory.push_back({t, a.mean, a.std, b.mean, b.std});
  }
  return cell;
}

UnconstrainedResult experiment_unconstrained(const UnconstrainedSpec& spec) {
  check_common(spec.mus, spec.reps);
  if (spec.instances.empty()) fail(ErrorCode::kInvalidArgument, "no instances given");
  if (spec.measures.empty()) fail(ErrorCode::kInvalidArgument, "no measures given");
  struct Task {
    std::size_t instance;
    int mu;
    MeasureKind measure;
    int rep;
  };
  std::vector<Task> tasks;
  for (std::size_t i = 0; i < spec.instances.size(); ++i) {
    for (int mu : spec.mus) {
      for (MeasureKind m : spec.measures) {
        for (int rep = 0; rep < spec.reps; ++rep) tasks.push_back({i, mu, m, rep});
      }
    }
  }
  UnconstrainedResult result;
  result.runs.resize(tasks.size());
  run_ordered<UnconstrainedRun>(
      tasks.size(), spec.threads,
      [&](std::size_t t) {
        const Task& task = tasks[t];
        const NamedInstance& named = spec.instances[task.instance];
        const int n = instance_size(named.instance);
        EaConfig config;
        config.mu = task.mu;
        config.budget = spec.budget.value_or(default_budget(task.mu, n));
        config.measure = task.measure;
        config.op = parse_operator(spec.op, instance_kind(named.instance), n);
        config.init_mode = InitMode::kDuplicateRandom;
        config.seed = derive_seed(spec.seed, {1, label_hash(named.label), static_cast<std::uint64_t>(task.mu),
                                              static_cast<std::uint64_t>(task.measure), label_hash(spec.op),
                                              static_cast<std::uint64_t>(task.rep)});
        config.checkpoint_count = spec.checkpoints;
        config.tie_break = spec.tie_break;
        UnconstrainedRun run;
        run.instance = named.label;
        run.n = n;
        run.mu = task.mu;
        run.measure = task.measure;
        run.op = spec.op;
        run.rep = task.rep;
        run.budget = config.budget;
        run.record = run_ea(config, named.instance);
        return run;
      },
      [&](std::size_t t, UnconstrainedRun& run) { result.runs[t] = std::move(run); });

  for (std::size_t start = 0; start < result.runs.size(); start += static_cast<std::size_t>(spec.reps)) {
    std::vector<const UnconstrainedRun*> group;
    for (int r = 0; r < spec.reps; ++r) group.push_back(&result.runs[start + static_cast<std::size_t>(r)]);
    result.cells.push_back(aggregate_unconstrained(group));
  }
  return result;
}

void write_unconstrained(const UnconstrainedResult& result, const std::filesystem::path& dir) {
  auto runs = open_csv(dir, "unconstrained_runs.csv");
  auto traj = open_csv(dir, "unconstrained_trajectories.csv");
  runs << "instance,n,mu,measure,operator,rep,seed,budget,termination_iteration,d1_norm,d2_norm,d_p,c_p,unique_frac\n";
  traj << "instance,n,mu,measure,operator,rep,seed,iteration,d1_norm,d2_norm,d_p,c_p,unique_frac\n";
  for (const auto& run : result.runs) {
    const auto& rec = run.record;
    const auto& last = rec.checkpoints.back();
    runs << run.instance << ',' << run.n << ',' << run.mu << ',' << measure_name(run.measure) << ','
         << run.op << ',' << run.rep << ',' << rec.seed << ',' << run.budget << ',';
    if (rec.termination_iteration) runs << *rec.termination_iteration;
    else runs << "NA";
    runs << ',' << last.d1_norm << ',' << last.d2_norm << ',' << last.d_p << ',' << last.c_p << ','
         << last.unique_fraction << '\n';
    for (const auto& cp : rec.checkpoints) {
      traj << run.instance << ',' << run.n << ',' << run.mu << ',' << measure_name(run.measure) << ','
           << run.op << ',' << run.rep << ',' << rec.seed << ',' << cp.iteration << ',' << cp.d1_norm
           << ',' << cp.d2_norm << ',' << cp.d_p << ',' << cp.c_p << ',' << cp.unique_fraction << '\n';
    }
  }
  auto agg = open_csv(dir, "unconstrained_aggregate.csv");
  auto summary = open_csv(dir, "unconstrained_summary.csv");
  agg << "instance,n,mu,measure,operator,reps,iteration,mean_d1,std_d1,mean_d2,std_d2\n";
  summary << "instance,n,mu,measure,operator,reps,terminated,mean_steps,std_steps\n";
  for (const auto& cell : result.cells) {
    for (const auto& p : cell.trajectory) {
      agg << cell.instance << ',' << cell.n << ',' << cell.mu << ',' << measure_name(cell.measure) << ','
          << cell.op << ',' << cell.reps << ',' << p.iteration << ',' << p.mean_d1 << ',' << p.std_d1 << ','
          << p.mean_d2 << ',' << p.std_d2 << '\n';
    }
    summary << cell.instance << ',' << cell.n << ',' << cell.mu << ',' << measure_name(cell.measure) << ','
            << cell.op << ',' << cell.reps << ',' << cell.terminated << ',' << cell.mean_steps << ','
            << cell.std_steps << '\n';
  }
}

// Heat map ---------------------------------------------------------------------

HeatmapRun run_heatmap_cell(int n, int mu, const std::string& op, int rep, std::uint64_t master_seed,
                            TieBreak tie_break) {
  const Instance instance = gen_synthetic_qap(n, derive_seed(master_seed, {2, static_cast<std::uint64_t>(n)}));
  EaConfig config;
  config.mu = mu;
  config.budget = default_budget(mu, n);
  config.measure = MeasureKind::kNVector;
  config.op = parse_operator(op, ProblemKind::kQap, n);
  config.seed = derive_seed(master_seed, {3, static_cast<std::uint64_t>(n), static_cast<std::uint64_t>(mu),
                                          label_hash(op), static_cast<std::uint64_t>(rep)});
  config.checkpoint_count = 0;
  config.tie_break = tie_break;
  const RunRecord record = run_ea(config, instance);
  HeatmapRun run;
  run.n = n;
  run.mu = mu;
  run.op = op;
  run.rep = rep;
  run.seed = config.seed;
  run.budget = config.budget;
  run.reached = record.termination_iteration.has_value();
  run.steps = record.termination_iteration.value_or(config.budget);
  run.percent = 100.0 * static_cast<double>(run.steps) / static_cast<double>(run.budget);
  return run;
}

HeatmapCell aggregate_heatmap(const std::vector<const HeatmapRun*>& runs) {
  if (runs.empty()) fail(ErrorCode::kInvalidArgument, "no runs to aggregate");
  HeatmapCell cell;
  cell.n = runs.front()->n;
  cell.mu = runs.front()->mu;
  cell.op = runs.front()->op;
  cell.budget = runs.front()->budget;
  cell.reps = static_cast<int>(runs.size());
  std::vector<double> pct;
  for (const auto* run : runs) {
    pct.push_back(run->percent);
    cell.reached += run->reached ? 1 : 0;
  }
  const auto s = mean_std(pct);
  cell.mean_percent = s.mean;
  cell.std_percent = s.std;
  return cell;
}

HeatmapResult experiment_heatmap(const HeatmapSpec& spec) {
  check_common(spec.mus, spec.reps);
  if (spec.ns.empty() || spec.ops.empty()) fail(ErrorCode::kInvalidArgument, "empty n or operator list");
  struct Task {
    int n;
    int mu;
    std::size_t op;
    int rep;
  };
  std::vector<Task> tasks;
  for (std::size_t o = 0; o < spec.ops.size(); ++o) {
    for (int n : spec.ns) {
      parse_operator(spec.ops[o], ProblemKind::kQap, n);
      for (int mu : spec.mus) {
        for (int rep = 0; rep < spec.reps; ++rep) tasks.push_back({n, mu, o, rep});
      }
    }
  }
  HeatmapResult result;
  result.runs.resize(tasks.size());
  run_ordered<HeatmapRun>(
      tasks.size(), spec.threads,
      [&](std::size_t t) {
        const Task& task = tasks[t];
        return run_heatmap_cell(task.n, task.mu, spec.ops[task.op], task.rep, spec.seed, spec.tie_break);
      },
      [&](std::size_t t, HeatmapRun& run) { result.runs[t] = std::move(run); });
  for (std::size_t start = 0; start < result.runs.size(); start += static_cast<std::size_t>(spec.reps)) {
    std::vector<const HeatmapRun*> group;
    for (int r = 0; r < spec.reps; ++r) group.push_back(&result.runs[start + static_cast<std::size_t>(r)]);
    result.cells.push_back(aggregate_heatmap(group));
  }
  return result;
}

void write_heatmap(const HeatmapResult& result, const std::filesystem::path& dir) {
  auto runs = open_csv(dir, "heatmap_runs.csv");
  runs << "n,mu,operator,rep,seed,budget,steps,reached,percent\n";
  for (const auto& r : result.runs) {
    runs << r.n << ',' << r.mu << ',' << r.op << ',' << r.rep << ',' << r.seed << ',' << r.budget << ','
         << r.steps << ',' << (r.reached ? 1 : 0) << ',' << r.percent << '\n';
  }
  auto cells = open_csv(dir, "heatmap.csv");
  cells << "n,mu,operator,reps,reached,budget,mean_percent,std_percent\n";
  for (const auto& c : result.cells) {
    cells << c.n << ',' << c.mu << ',' << c.op << ',' << c.reps << ',' << c.reached << ',' << c.budget << ','
          << c.mean_percent << ',' << c.std_percent << '\n';
  }
}

// Constrained ------------------------------------------------------------------

ConstrainedCell aggregate_constrained(const std::vector<const ConstrainedRun*>& runs) {
  if (runs.empty()) fail(ErrorCode::kInvalidArgument, "no runs to aggregate");
  const auto& first = *runs.front();
  ConstrainedCell cell;
  cell.instance = first.instance;
  cell.n = first.n;
  cell.mu = first.mu;
  cell.alpha = first.alpha;
  cell.measure = first.measure;
  cell.op = first.op;
  cell.reps = static_cast<int>(runs.size());
  std::vector<double> d1, d2, unique;
  for (const auto* run : runs) {
    d1.push_back(run->d1_norm);
    d2.push_back(run->d2_norm);
    unique.push_back(run->unique_fraction);
  }
  const auto a = mean_std(d1);
  const auto b = mean_std(d2);
  const auto c = mean_std(unique);
  cell.mean_d1 = a.mean;
  cell.std_d1 = a.std;
  cell.mean_d2 = b.mean;
  cell.std_d2 = b.std;
  cell.mean_unique = c.mean;
  cell.std_unique = c.std;
  return cell;
}

ConstrainedResult experiment_constrained(const ConstrainedSpec& spec) {
  check_common(spec.mus, spec.reps);
  if (spec.instances.empty()) fail(ErrorCode::kInvalidArgument, "no instances given");
  for (const auto& named : spec.instances) {
    if (!instance_optimal_permutation(named.instance)) {
      fail(ErrorCode::kInvalidArgument, "instance " + named.label + " has no known optimum");
    }
  }
  for (double alpha : spec.alphas) {
    if (!(alpha >= 0)) fail(ErrorCode::kInvalidArgument, "alpha must be >= 0");
  }
  struct Task {
    std::size_t instance;
    int mu;
    double alpha;
    MeasureKind measure;
    int rep;
  };
  std::vector<Task> tasks;
  for (std::size_t i = 0; i < spec.instances.size(); ++i) {
    for (int mu : spec.mus) {
      for (double alpha : spec.alphas) {
        for (MeasureKind m : spec.measures) {
          for (int rep = 0; rep < spec.reps; ++rep) tasks.push_back({i, mu, alpha, m, rep});
        }
      }
    }
  }
  ConstrainedResult result;
  result.runs.resize(tasks.size());
  run_ordered<ConstrainedRun>(
      tasks.size(), spec.threads,
      [&](std::size_t t) {
        const Task& task = tasks[t];
        const NamedInstance& named = spec.instances[task.instance];
        const int n = instance_size(named.instance);
        EaConfig config;
        config.mu = task.mu;
        config.budget = spec.budget.value_or(default_budget(task.mu, n));
        config.measure = task.measure;
        config.op = parse_operator(spec.op, instance_kind(named.instance), n);
        config.alpha = task.alpha;
        config.init_mode = InitMode::kDuplicateOpt;
        config.seed = derive_seed(spec.seed, {4, label_hash(named.label), static_cast<std::uint64_t>(task.mu),
                                              alpha_bits(task.alpha), static_cast<std::uint64_t>(task.measure),
                                              label_hash(spec.op), static_cast<std::uint64_t>(task.rep)});
        config.checkpoint_count = 0;
        config.early_stop = false;
        config.tie_break = spec.tie_break;
        const RunRecord record = run_ea(config, named.instance);
        const auto& last = record.checkpoints.back();
        ConstrainedRun run;
        run.instance = named.label;
        run.n = n;
        run.mu = task.mu;
        run.alpha = task.alpha;
        run.measure = task.measure;
        run.op = spec.op;
        run.rep = task.rep;
        run.seed = config.seed;
        run.budget = config.budget;
        run.d1_norm = last.d1_norm;
        run.d2_norm = last.d2_norm;
        run.unique_fraction = last.unique_fraction;
        return run;
      },
      [&](std::size_t t, ConstrainedRun& run) { result.runs[t] = std::move(run); });
  for (std::size_t start = 0; start < result.runs.size(); start += static_cast<std::size_t>(spec.reps)) {
    std::vector<const ConstrainedRun*> group;
    for (int r = 0; r < spec.reps; ++r) group.push_back(&result.runs[start + static_cast<std::size_t>(r)]);
    result.cells.push_back(aggregate_constrained(group));
  }
  return result;
}

void write_constrained(const ConstrainedResult& result, const std::filesystem::path& dir) {
  auto runs = open_csv(dir, "constrained_runs.csv");
  runs << "instance,n,mu,alpha,measure,operator,rep,seed,budget,d1_norm,d2_norm,unique_frac\n";
  for (const auto& r : result.runs) {
    runs << r.instance << ',' << r.n << ',' << r.mu << ',' << r.alpha << ',' << measure_name(r.measure) << ','
         << r.op << ',' << r.rep << ',' << r.seed << ',' << r.budget << ',' << r.d1_norm << ',' << r.d2_norm
         << ',' << r.unique_fraction << '\n';
  }
  auto table = open_csv(dir, "constrained_table.csv");
  table << "instance,n,mu,alpha,measure,operator,reps,mean_d1,std_d1,mean_d2,std_d2,mean_unique,std_unique\n";
  for (const auto& c : result.cells) {
    table << c.instance << ',' << c.n << ',' << c.mu << ',' << c.alpha << ',' << measure_name(c.measure) << ','
          << c.op << ',' << c.reps << ',' << c.mean_d1 << ',' << c.std_d1 << ',' << c.mean_d2 << ',' << c.std_d2
          << ',' << c.mean_unique << ',' << c.std_unique << '\n';
  }
}

}  // namespace edo
