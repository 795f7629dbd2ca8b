#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <limits>
#include <memory>
#include <string>
#include <vector>

#include "edo/edo.h"

namespace fs = std::filesystem;

namespace {

struct CliError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void check(edo_status status) {
  if (status != EDO_OK) throw CliError(edo_last_error());
}

struct InstanceDeleter {
  void operator()(edo_instance* p) const { edo_instance_free(p); }
};
struct PopulationDeleter {
  void operator()(edo_population* p) const { edo_population_free(p); }
};
struct RecordDeleter {
  void operator()(edo_run_record* p) const { edo_run_record_free(p); }
};
using InstancePtr = std::unique_ptr<edo_instance, InstanceDeleter>;
using PopulationPtr = std::unique_ptr<edo_population, PopulationDeleter>;
using RecordPtr = std::unique_ptr<edo_run_record, RecordDeleter>;

edo_problem parse_problem(const std::string& text) {
  if (text == "qap" || text == "QAP") return EDO_QAP;
  if (text == "stsp" || text == "STSP") return EDO_STSP;
  if (text == "atsp" || text == "ATSP") return EDO_ATSP;
  throw CliError("unknown problem '" + text + "'");
}

const char* problem_name(edo_problem p) {
  switch (p) {
    case EDO_STSP: return "STSP";
    case EDO_ATSP: return "ATSP";
    case EDO_QAP: break;
  }
  return "QAP";
}

edo_measure parse_measure(const std::string& text) {
  if (text == "n" || text == "N") return EDO_MEASURE_N;
  if (text == "d" || text == "D") return EDO_MEASURE_D;
  throw CliError("unknown measure '" + text + "' (expected n or d)");
}

edo_tie_break parse_tie(const std::string& text) {
  if (text == "random") return EDO_TIE_RANDOM;
  if (text == "first") return EDO_TIE_FIRST;
  throw CliError("unknown tie-break '" + text + "'");
}

// "a:b:s" expands to a, a+s, ..., up to b.
std::vector<int> expand_range(const std::string& text) {
  int a = 0, b = 0, s = 1;
  if (std::sscanf(text.c_str(), "%d:%d:%d", &a, &b, &s) < 2 || s <= 0 || b < a) {
    throw CliError("bad range '" + text + "' (expected start:stop[:step])");
  }
  std::vector<int> out;
  for (int v = a; v <= b; v += s) out.push_back(v);
  return out;
}

// Loads a QAPLIB pair; a sibling <stem>.sln is picked up when present.
InstancePtr load_instance(const std::string& dat, const std::string& sln) {
  std::string solution = sln;
  if (solution.empty()) {
    fs::path guess = fs::path(dat).replace_extension(".sln");
    if (fs::exists(guess)) solution = guess.string();
  }
  edo_instance* raw = nullptr;
  check(edo_instance_load_qaplib(dat.c_str(), solution.empty() ? nullptr : solution.c_str(), &raw));
  return InstancePtr(raw);
}

InstancePtr synthetic_instance(edo_problem problem, int n, uint64_t seed) {
  edo_instance* raw = nullptr;
  if (problem == EDO_QAP) check(edo_instance_synthetic_qap(n, seed, &raw));
  else check(edo_instance_synthetic_tsp(n, problem == EDO_STSP ? 1 : 0, seed, &raw));
  return InstancePtr(raw);
}

struct Common {
  std::string measure = "n";
  std::string op = "2opt";
  std::string tie = "random";
  uint64_t seed = 1;
  std::string out;
};

std::string config_placeholder;

void add_config(CLI::App* cmd) {
  cmd->add_option("--config", config_placeholder, "Flat key=value file; keys mirror the long flag names");
}

bool has_flag(const std::vector<std::string>& args, const std::string& flag) {
  for (const auto& a : args) {
    if (a == flag || a.rfind(flag + "=", 0) == 0) return true;
  }
  return false;
}

// Replaces "--config FILE" by the file's settings as ordinary flags placed
// right after the subcommand. Flags given on the command line win.
std::vector<std::string> expand_config(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  std::string path;
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--config" && i + 1 < args.size()) {
      path = args[i + 1];
      args.erase(args.begin() + static_cast<std::ptrdiff_t>(i), args.begin() + static_cast<std::ptrdiff_t>(i) + 2);
      break;
    }
    if (args[i].rfind("--config=", 0) == 0) {
      path = args[i].substr(9);
      args.erase(args.begin() + static_cast<std::ptrdiff_t>(i));
      break;
    }
  }
  if (path.empty() || args.empty()) return args;
  std::vector<std::string> injected;
  for (const auto& item : CLI::ConfigINI().from_file(path)) {
    const std::string flag = "--" + item.name;
    if (has_flag(args, flag)) continue;
    if (item.inputs.size() == 1 && (item.inputs[0] == "true" || item.inputs[0] == "false")) {
      if (item.inputs[0] == "true") injected.push_back(flag);
      continue;
    }
    injected.push_back(flag);
    injected.insert(injected.end(), item.inputs.begin(), item.inputs.end());
  }
  args.insert(args.begin() + 1, injected.begin(), injected.end());
  return args;
}

void add_common(CLI::App* cmd, Common& c) {
  add_config(cmd);
  cmd->add_option("--seed", c.seed, "Master seed")->capture_default_str();
  cmd->add_option("--tie-break", c.tie, "random or first")->capture_default_str();
}

// Subcommands ----------------------------------------------------------------

struct RunArgs {
  Common common;
  std::string instance, solution, problem = "qap", init = "random", population;
  int synthetic_n = 0;
  int mu = 2;
  double alpha = -1;
  double threshold = std::numeric_limits<double>::infinity();
  int64_t budget = 0;
  int checkpoints = 1000;
  bool no_early_stop = false;
};

void cmd_run(const RunArgs& a) {
  InstancePtr instance = !a.instance.empty() ? load_instance(a.instance, a.solution)
                                             : synthetic_instance(parse_problem(a.problem), a.synthetic_n, a.common.seed);
  PopulationPtr given;
  edo_run_config config;
  edo_run_config_init(&config);
  config.mu = a.mu;
  config.budget = a.budget;
  config.measure = parse_measure(a.common.measure);
  config.op = a.common.op.c_str();
  config.threshold = a.threshold;
  if (a.alpha >= 0) {
    config.has_alpha = 1;
    config.alpha = a.alpha;
    if (!edo_instance_optimum(instance.get(), nullptr)) throw CliError("alpha given but optimum unknown");
  }
  if (a.init == "random") {
    config.init_mode = EDO_INIT_DUPLICATE_RANDOM;
  } else if (a.init == "opt") {
    config.init_mode = EDO_INIT_DUPLICATE_OPT;
  } else if (a.init == "given") {
    edo_population* raw = nullptr;
    check(edo_population_read(a.population.c_str(), &raw));
    given.reset(raw);
    config.init_mode = EDO_INIT_GIVEN;
    config.initial = given.get();
  } else {
    throw CliError("unknown init mode '" + a.init + "'");
  }
  config.seed = a.common.seed;
  config.checkpoint_count = a.checkpoints;
  config.tie_break = parse_tie(a.common.tie);
  config.early_stop = a.no_early_stop ? 0 : 1;

  edo_run_record* raw = nullptr;
  check(edo_run(instance.get(), &config, &raw));
  RecordPtr record(raw);

  if (!a.common.out.empty()) {
    fs::create_directories(a.common.out);
    const auto traj = (fs::path(a.common.out) / "trajectory.csv").string();
    const auto summary = (fs::path(a.common.out) / "summary.csv").string();
    check(edo_run_write_csv(record.get(), traj.c_str(), summary.c_str()));
  }
  edo_checkpoint last;
  check(edo_run_checkpoint(record.get(), edo_run_checkpoint_count(record.get()) - 1, &last));
  int64_t stop = 0;
  const bool stopped = edo_run_termination(record.get(), &stop) != 0;
  std::cout << "instance\t" << edo_instance_name(instance.get()) << "\n"
            << "termination_iteration\t" << (stopped ? std::to_string(stop) : std::string("NA")) << "\n"
            << "evaluations\t" << edo_run_evaluations(record.get()) << "\n"
            << "d1_norm\t" << last.d1_norm << "\n"
            << "d2_norm\t" << last.d2_norm << "\n"
            << "d_p\t" << last.d_p << "\n"
            << "c_p\t" << last.c_p << "\n"
            << "unique_frac\t" << last.unique_fraction << "\n"
            << "seed\t" << edo_run_seed(record.get()) << "\n";
}

struct ExperimentArgs {
  Common common;
  std::vector<std::string> instances, solutions, measures{"n", "d"}, ops{"2opt"};
  std::vector<int> synthetic_ns, mus{3, 10, 20, 50};
  std::vector<double> alphas{0.05, 0.2, 0.5, 1.0};
  std::string n_range, mu_range, problem = "qap";
  int reps = 30;
  int64_t budget = 0;
  int checkpoints = 1000;
  int threads = 0;
};

struct LoadedInstances {
  std::vector<InstancePtr> owned;
  std::vector<const edo_instance*> handles;
  std::vector<std::string> labels;
  std::vector<const char*> label_ptrs;
};

LoadedInstances load_all(const ExperimentArgs& a, bool allow_synthetic) {
  LoadedInstances out;
  for (std::size_t i = 0; i < a.instances.size(); ++i) {
    out.owned.push_back(load_instance(a.instances[i], i < a.solutions.size() ? a.solutions[i] : ""));
    out.labels.push_back(edo_instance_name(out.owned.back().get()));
  }
  if (allow_synthetic) {
    const edo_problem problem = parse_problem(a.problem);
    for (int n : a.synthetic_ns) {
      out.owned.push_back(synthetic_instance(problem, n, a.common.seed));
      out.labels.push_back(std::string("synthetic-") + problem_name(problem) + "-" + std::to_string(n));
    }
  }
  if (out.owned.empty()) throw CliError("no instances given");
  for (std::size_t i = 0; i < out.owned.size(); ++i) {
    out.handles.push_back(out.owned[i].get());
    out.label_ptrs.push_back(out.labels[i].c_str());
  }
  return out;
}

std::vector<edo_measure> measures_of(const ExperimentArgs& a) {
  std::vector<edo_measure> out;
  for (const auto& m : a.measures) out.push_back(parse_measure(m));
  return out;
}

std::string out_dir(const Common& c) { return c.out.empty() ? std::string(".") : c.out; }

void cmd_unconstrained(const ExperimentArgs& a) {
  const auto loaded = load_all(a, true);
  const auto measures = measures_of(a);
  std::vector<int> mus = a.mu_range.empty() ? a.mus : expand_range(a.mu_range);
  edo_unconstrained_spec spec{};
  spec.instances = loaded.handles.data();
  spec.labels = loaded.label_ptrs.data();
  spec.instance_count = loaded.handles.size();
  spec.mus = mus.data();
  spec.mu_count = mus.size();
  spec.measures = measures.data();
  spec.measure_count = measures.size();
  spec.op = a.ops.front().c_str();
  spec.reps = a.reps;
  spec.seed = a.common.seed;
  spec.budget = a.budget;
  spec.checkpoint_count = a.checkpoints;
  spec.tie_break = parse_tie(a.common.tie);
  spec.threads = a.threads;
  check(edo_experiment_unconstrained(&spec, out_dir(a.common).c_str()));
  std::cout << "wrote unconstrained_{runs,trajectories,aggregate,summary}.csv to " << out_dir(a.common) << "\n";
}

void cmd_heatmap(const ExperimentArgs& a) {
  std::vector<int> ns = a.n_range.empty() ? a.synthetic_ns : expand_range(a.n_range);
  std::vector<int> mus = a.mu_range.empty() ? a.mus : expand_range(a.mu_range);
  std::vector<const char*> ops;
  for (const auto& op : a.ops) ops.push_back(op.c_str());
  edo_heatmap_spec spec{};
  spec.ns = ns.data();
  spec.n_count = ns.size();
  spec.mus = mus.data();
  spec.mu_count = mus.size();
  spec.ops = ops.data();
  spec.op_count = ops.size();
  spec.reps = a.reps;
  spec.seed = a.common.seed;
  spec.tie_break = parse_tie(a.common.tie);
  spec.threads = a.threads;
  check(edo_experiment_heatmap(&spec, out_dir(a.common).c_str()));
  std::cout << "wrote heatmap.csv and heatmap_runs.csv to " << out_dir(a.common) << "\n";
}

void cmd_constrained(const ExperimentArgs& a) {
  const auto loaded = load_all(a, false);
  const auto measures = measures_of(a);
  edo_constrained_spec spec{};
  spec.instances = loaded.handles.data();
  spec.labels = loaded.label_ptrs.data();
  spec.instance_count = loaded.handles.size();
  spec.mus = a.mus.data();
  spec.mu_count = a.mus.size();
  spec.alphas = a.alphas.data();
  spec.alpha_count = a.alphas.size();
  spec.measures = measures.data();
  spec.measure_count = measures.size();
  spec.op = a.ops.front().c_str();
  spec.reps = a.reps;
  spec.seed = a.common.seed;
  spec.budget = a.budget;
  spec.tie_break = parse_tie(a.common.tie);
  spec.threads = a.threads;
  check(edo_experiment_constrained(&spec, out_dir(a.common).c_str()));
  std::cout << "wrote constrained_runs.csv and constrained_table.csv to " << out_dir(a.common) << "\n";
}

void print_summary(const edo_population* p) {
  edo_population_summary s;
  check(edo_population_summarize(p, &s));
  std::cout << "# n=" << edo_population_size(p) << " mu=" << edo_population_mu(p)
            << " kind=" << problem_name(edo_population_problem(p)) << " d_P=" << s.d_p << " c_P=" << s.c_p
            << " min_count=" << s.min_count << " max-min=" << (s.d_p - s.min_count) << " D1=" << s.d1
            << " D2=" << s.d2 << "\n";
}

struct ConstructArgs {
  std::string kind, out;
  int n = 0;
  int mu = 0;
};

void cmd_construct(const ConstructArgs& a) {
  edo_population* raw = nullptr;
  check(edo_construct(a.kind.c_str(), a.n, a.mu, &raw));
  PopulationPtr p(raw);
  if (!a.out.empty()) {
    check(edo_population_write(p.get(), a.out.c_str()));
  } else {
    const int n = edo_population_size(p.get());
    std::vector<int> row(static_cast<std::size_t>(n));
    std::cout << n << ' ' << edo_population_mu(p.get()) << ' ' << problem_name(edo_population_problem(p.get())) << "\n";
    for (int i = 0; i < edo_population_mu(p.get()); ++i) {
      check(edo_population_member(p.get(), i, row.data()));
      for (int j = 0; j < n; ++j) std::cout << (j ? " " : "") << row[static_cast<std::size_t>(j)] + 1;
      std::cout << "\n";
    }
  }
  print_summary(p.get());
}

struct VerifyArgs {
  std::string population, op = "2opt", measure = "both";
  int64_t cap = 0;
};

int cmd_verify(const VerifyArgs& a) {
  edo_population* raw = nullptr;
  check(edo_population_read(a.population.c_str(), &raw));
  PopulationPtr p(raw);
  print_summary(p.get());
  std::vector<edo_measure> measures;
  if (a.measure == "both") measures = {EDO_MEASURE_N, EDO_MEASURE_D};
  else measures = {parse_measure(a.measure)};
  std::vector<int> witness(static_cast<std::size_t>(edo_population_size(p.get())));
  int found = 0;
  for (edo_measure m : measures) {
    edo_verify_report report;
    check(edo_verify(p.get(), a.op.c_str(), m, a.cap, &report, witness.data()));
    std::cout << "measure " << (m == EDO_MEASURE_N ? "n" : "d") << ": ";
    if (report.improvement_found) {
      ++found;
      std::cout << "improving move: mutate member " << report.mutated + 1 << " to";
      for (int v : witness) std::cout << ' ' << v + 1;
      std::cout << ", remove member " << report.removed + 1;
    } else {
      std::cout << "no improving move";
    }
    std::cout << " (" << report.candidates_checked << " candidates)\n";
  }
  return found == 0 ? 0 : 3;
}

struct BoundsArgs {
  std::string problem = "qap";
  std::vector<std::string> ops{"2opt"};
  std::vector<int> ns{30};
  std::vector<int> mus;
  std::vector<int> d_ps;
  bool runtime = false;
};

void cmd_bounds(const BoundsArgs& a) {
  const edo_problem problem = parse_problem(a.problem);
  std::cout << (a.runtime ? "problem\toperator\tn\tmu\truntime_bound\n" : "problem\toperator\tn\tmu\td_P\tbound\n");
  for (const auto& op : a.ops) {
    for (int n : a.ns) {
      int mu_max = 0;
      check(edo_mu_guarantee_bound(problem, op.c_str(), n, &mu_max));
      std::vector<int> mus = a.mus;
      if (mus.empty()) mus.push_back(mu_max);
      for (int mu : mus) {
        if (a.runtime) {
          edo_bound b;
          check(edo_runtime_bound(problem, op.c_str(), n, mu, &b));
          std::cout << problem_name(problem) << '\t' << op << '\t' << n << '\t' << mu << '\t' << b.text << "\n";
          continue;
        }
        std::vector<int> ds = a.d_ps;
        if (ds.empty()) {
          for (int d = 2; d <= mu; ++d) ds.push_back(d);
        }
        for (int d : ds) {
          edo_bound b;
          check(edo_improvement_bound(problem, op.c_str(), n, mu, d, &b));
          std::cout << problem_name(problem) << '\t' << op << '\t' << n << '\t' << mu << '\t' << d << '\t' << b.text;
          if (b.exact) std::cout << " (" << b.value << ")";
          std::cout << "\n";
        }
      }
    }
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Evolutionary diversity optimization for TSP and QAP"};
  app.require_subcommand(1);
  int exit_code = 0;

  RunArgs run;
  auto* run_cmd = app.add_subcommand("run", "Single run of the (mu+1) EA");
  add_common(run_cmd, run.common);
  run_cmd->add_option("--instance", run.instance, "QAPLIB .dat file")->check(CLI::ExistingFile);
  run_cmd->add_option("--solution", run.solution, "QAPLIB .sln file (default: sibling of --instance)")
      ->check(CLI::ExistingFile);
  run_cmd->add_option("--synthetic-n", run.synthetic_n, "Size of a synthetic instance");
  run_cmd->add_option("--problem", run.problem, "qap, stsp or atsp (synthetic)")->capture_default_str();
  run_cmd->add_option("--mu", run.mu, "Population size")->capture_default_str();
  run_cmd->add_option("--alpha", run.alpha, "Threshold (1+alpha)*OPT");
  run_cmd->add_option("--threshold", run.threshold, "Absolute cost threshold");
  run_cmd->add_option("--measure", run.common.measure, "n or d")->capture_default_str();
  run_cmd->add_option("--operator", run.common.op, "2opt, insertion, exchange, 3opt, 4opt, kopt:K")
      ->capture_default_str();
  run_cmd->add_option("--budget", run.budget, "Iterations (default mu*n^2)");
  run_cmd->add_option("--checkpoints", run.checkpoints, "Evenly spaced checkpoints")->capture_default_str();
  run_cmd->add_option("--init", run.init, "random, opt or given")->capture_default_str();
  run_cmd->add_option("--population", run.population, "Population file for --init given");
  run_cmd->add_flag("--no-early-stop", run.no_early_stop, "Run the full budget");
  run_cmd->add_option("--out", run.common.out, "Directory for trajectory.csv and summary.csv");
  run_cmd->callback([&] {
    if (run.instance.empty() && run.synthetic_n <= 0) throw CliError("give --instance or --synthetic-n");
    cmd_run(run);
  });

  ExperimentArgs unc;
  auto* unc_cmd = app.add_subcommand("experiment-unconstrained", "Steps to maximum diversity from duplicates");
  add_common(unc_cmd, unc.common);
  unc_cmd->add_option("--instance", unc.instances, "QAPLIB .dat files")->delimiter(',');
  unc_cmd->add_option("--solution", unc.solutions, "Matching .sln files")->delimiter(',');
  unc_cmd->add_option("--synthetic-n", unc.synthetic_ns, "Synthetic instance sizes")->delimiter(',');
  unc_cmd->add_option("--problem", unc.problem, "Problem of synthetic instances")->capture_default_str();
  unc_cmd->add_option("--mu", unc.mus, "Population sizes")->delimiter(',')->capture_default_str();
  unc_cmd->add_option("--mu-range", unc.mu_range, "start:stop:step");
  unc_cmd->add_option("--measure", unc.measures, "Measures (n,d)")->delimiter(',')->capture_default_str();
  unc_cmd->add_option("--operator", unc.ops, "Mutation operator")->capture_default_str();
  unc_cmd->add_option("--reps", unc.reps, "Repetitions")->capture_default_str();
  unc_cmd->add_option("--budget", unc.budget, "Iterations (default mu*n^2)");
  unc_cmd->add_option("--checkpoints", unc.checkpoints, "Checkpoints per run")->capture_default_str();
  unc_cmd->add_option("--threads", unc.threads, "Worker threads (0: all cores)");
  unc_cmd->add_option("--out", unc.common.out, "Output directory");
  unc_cmd->callback([&] { cmd_unconstrained(unc); });

  ExperimentArgs heat;
  heat.reps = 30;
  heat.mus.clear();
  auto* heat_cmd = app.add_subcommand("experiment-heatmap", "Steps-to-optimum grid over (n, mu)");
  add_common(heat_cmd, heat.common);
  heat_cmd->add_option("--synthetic-n", heat.synthetic_ns, "Instance sizes")->delimiter(',');
  heat_cmd->add_option("--n-range", heat.n_range, "start:stop:step");
  heat_cmd->add_option("--mu", heat.mus, "Population sizes")->delimiter(',');
  heat_cmd->add_option("--mu-range", heat.mu_range, "start:stop:step");
  heat_cmd->add_option("--operator", heat.ops, "Operators, e.g. 2opt,kopt:n/5")->delimiter(',')->capture_default_str();
  heat_cmd->add_option("--reps", heat.reps, "Repetitions")->capture_default_str();
  heat_cmd->add_option("--threads", heat.threads, "Worker threads (0: all cores)");
  heat_cmd->add_option("--out", heat.common.out, "Output directory");
  heat_cmd->callback([&] { cmd_heatmap(heat); });

  ExperimentArgs con;
  auto* con_cmd = app.add_subcommand("experiment-constrained", "Final diversity under quality thresholds");
  add_common(con_cmd, con.common);
  con_cmd->add_option("--instance", con.instances, "QAPLIB .dat files")->delimiter(',')->required();
  con_cmd->add_option("--solution", con.solutions, "Matching .sln files")->delimiter(',');
  con_cmd->add_option("--mu", con.mus, "Population sizes")->delimiter(',')->capture_default_str();
  con_cmd->add_option("--alpha", con.alphas, "Alpha values")->delimiter(',')->capture_default_str();
  con_cmd->add_option("--measure", con.measures, "Measures (n,d)")->delimiter(',')->capture_default_str();
  con_cmd->add_option("--operator", con.ops, "Mutation operator")->capture_default_str();
  con_cmd->add_option("--reps", con.reps, "Repetitions")->capture_default_str();
  con_cmd->add_option("--budget", con.budget, "Iterations (default mu*n^2)");
  con_cmd->add_option("--threads", con.threads, "Worker threads (0: all cores)");
  con_cmd->add_option("--out", con.common.out, "Output directory");
  con_cmd->callback([&] { cmd_constrained(con); });

  ConstructArgs cons;
  auto* cons_cmd = app.add_subcommand("construct", "Build a maximally diverse or trap population");
  add_config(cons_cmd);
  cons_cmd->add_option("kind", cons.kind, "qap-max, stsp-max, atsp-max, qap-trap, stsp-trap")->required();
  cons_cmd->add_option("--n", cons.n, "Solution size")->required();
  cons_cmd->add_option("--mu", cons.mu, "Population size");
  cons_cmd->add_option("--out", cons.out, "Population file (default: stdout)");
  cons_cmd->callback([&] { cmd_construct(cons); });

  VerifyArgs ver;
  auto* ver_cmd = app.add_subcommand("verify", "Exhaustively search for an improving single step");
  add_config(ver_cmd);
  ver_cmd->add_option("population", ver.population, "Population file")->required()->check(CLI::ExistingFile);
  ver_cmd->add_option("--operator", ver.op, "Mutation operator")->capture_default_str();
  ver_cmd->add_option("--measure", ver.measure, "n, d or both")->capture_default_str();
  ver_cmd->add_option("--cap", ver.cap, "Maximum number of candidate populations");
  ver_cmd->callback([&] { exit_code = cmd_verify(ver); });

  BoundsArgs bnd;
  auto* bnd_cmd = app.add_subcommand("bounds", "Improvement-probability and run-time bound tables");
  add_config(bnd_cmd);
  bnd_cmd->add_option("--problem", bnd.problem, "qap, stsp or atsp")->capture_default_str();
  bnd_cmd->add_option("--operator", bnd.ops, "Operators")->delimiter(',')->capture_default_str();
  bnd_cmd->add_option("--n", bnd.ns, "Sizes")->delimiter(',')->capture_default_str();
  bnd_cmd->add_option("--mu", bnd.mus, "Population sizes (default: largest covered)")->delimiter(',');
  bnd_cmd->add_option("--d-p", bnd.d_ps, "d_P values (default 2..mu)")->delimiter(',');
  bnd_cmd->add_flag("--runtime", bnd.runtime, "Print expected run-time bounds instead");
  bnd_cmd->callback([&] { cmd_bounds(bnd); });

  try {
    auto args = expand_config(argc, argv);
    std::reverse(args.begin(), args.end());
    app.parse(args);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return exit_code;
}
