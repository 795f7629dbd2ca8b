#include "edo/edo.h"

#include <cstring>
#include <fstream>
#include <limits>
#include <new>
#include <sstream>
#include <string>

#include "edo/analysis.hpp"
#include "edo/construct.hpp"
#include "edo/engine.hpp"
#include "edo/error.hpp"
#include "edo/experiment.hpp"
#include "edo/qaplib_io.hpp"

struct edo_instance {
  edo::Instance value;
};

struct edo_population {
  edo::Population value;
};

struct edo_run_record {
  edo::RunRecord value;
};

namespace {

thread_local std::string last_error;

template <typename F>
edo_status guard(F&& body) {
  try {
    body();
    last_error.clear();
    return EDO_OK;
  } catch (const edo::Error& e) {
    last_error = e.what();
    return static_cast<edo_status>(static_cast<int>(e.code()));
  } catch (const std::bad_alloc&) {
    last_error = "out of memory";
    return EDO_E_INTERNAL;
  } catch (const std::exception& e) {
    last_error = e.what();
    return EDO_E_UNKNOWN;
  } catch (...) {
    last_error = "unknown error";
    return EDO_E_UNKNOWN;
  }
}

template <typename T>
void require(const T* p, const char* what) {
  if (p == nullptr) edo::fail(edo::ErrorCode::kInvalidArgument, std::string(what) + " is NULL");
}

edo::ProblemKind to_kind(edo_problem p) {
  switch (p) {
    case EDO_STSP: return edo::ProblemKind::kStsp;
    case EDO_ATSP: return edo::ProblemKind::kAtsp;
    case EDO_QAP: return edo::ProblemKind::kQap;
  }
  edo::fail(edo::ErrorCode::kInvalidArgument, "unknown problem kind");
}

edo_problem from_kind(edo::ProblemKind k) {
  switch (k) {
    case edo::ProblemKind::kStsp: return EDO_STSP;
    case edo::ProblemKind::kAtsp: return EDO_ATSP;
    case edo::ProblemKind::kQap: break;
  }
  return EDO_QAP;
}

edo::MeasureKind to_measure(edo_measure m) {
  if (m == EDO_MEASURE_N) return edo::MeasureKind::kNVector;
  if (m == EDO_MEASURE_D) return edo::MeasureKind::kDVector;
  edo::fail(edo::ErrorCode::kInvalidArgument, "unknown measure");
}

edo::TieBreak to_tie(edo_tie_break t) {
  return t == EDO_TIE_FIRST ? edo::TieBreak::kFirst : edo::TieBreak::kRandom;
}

std::vector<int> collect_ints(const int* values, std::size_t count, const char* what) {
  if (count > 0) require(values, what);
  return std::vector<int>(values, values + count);
}

std::vector<edo::MeasureKind> collect_measures(const edo_measure* values, std::size_t count) {
  if (count > 0) require(values, "measures");
  std::vector<edo::MeasureKind> out;
  for (std::size_t i = 0; i < count; ++i) out.push_back(to_measure(values[i]));
  return out;
}

std::vector<edo::NamedInstance> collect_instances(const edo_instance* const* instances,
                                                  const char* const* labels, std::size_t count) {
  if (count > 0) require(instances, "instances");
  std::vector<edo::NamedInstance> out;
  for (std::size_t i = 0; i < count; ++i) {
    require(instances[i], "instance");
    std::string label = labels && labels[i] ? labels[i] : edo::instance_name(instances[i]->value);
    if (label.empty()) label = "instance" + std::to_string(i);
    out.push_back({std::move(label), instances[i]->value});
  }
  return out;
}

void fill_bound_text(edo_bound* out, const std::string& text) {
  std::strncpy(out->text, text.c_str(), sizeof out->text - 1);
  out->text[sizeof out->text - 1] = '\0';
}

}  // namespace

extern "C" {

const char* edo_last_error(void) { return last_error.c_str(); }

const char* edo_version(void) { return "1.0.0"; }

edo_status edo_instance_load_qaplib(const char* dat_path, const char* sln_path, edo_instance** out) {
  return guard([&] {
    require(dat_path, "dat_path");
    require(out, "out");
    auto inst = edo::load_qaplib(dat_path, sln_path ? std::filesystem::path(sln_path) : std::filesystem::path());
    *out = new edo_instance{std::move(inst)};
  });
}

edo_status edo_instance_synthetic_qap(int n, uint64_t seed, edo_instance** out) {
  return guard([&] {
    require(out, "out");
    *out = new edo_instance{edo::gen_synthetic_qap(n, seed)};
  });
}

edo_status edo_instance_synthetic_tsp(int n, int symmetric, uint64_t seed, edo_instance** out) {
  return guard([&] {
    require(out, "out");
    *out = new edo_instance{edo::gen_synthetic_tsp(n, symmetric != 0, seed)};
  });
}

void edo_instance_free(edo_instance* instance) { delete instance; }

int edo_instance_size(const edo_instance* instance) {
  return instance ? edo::instance_size(instance->value) : 0;
}

edo_problem edo_instance_problem(const edo_instance* instance) {
  return instance ? from_kind(edo::instance_kind(instance->value)) : EDO_QAP;
}

const char* edo_instance_name(const edo_instance* instance) {
  return instance ? edo::instance_name(instance->value).c_str() : "";
}

int edo_instance_optimum(const edo_instance* instance, double* value) {
  if (!instance) return 0;
  const auto opt = edo::instance_optimum(instance->value);
  if (!opt) return 0;
  if (value) *value = *opt;
  return 1;
}

edo_status edo_instance_cost(const edo_instance* instance, const int* perm, int n, double* out) {
  return guard([&] {
    require(instance, "instance");
    require(perm, "perm");
    require(out, "out");
    if (n != edo::instance_size(instance->value)) {
      edo::fail(edo::ErrorCode::kInvalidArgument, "permutation length does not match the instance");
    }
    *out = edo::cost(edo::validate_permutation({perm, static_cast<std::size_t>(n)}), instance->value);
  });
}

edo_status edo_population_create(edo_problem problem, int n, int mu, const int* values,
                                 edo_population** out) {
  return guard([&] {
    require(values, "values");
    require(out, "out");
    if (n < 1 || mu < 1) edo::fail(edo::ErrorCode::kInvalidArgument, "n and mu must be positive");
    edo::Population p{to_kind(problem), n, {}};
    for (int i = 0; i < mu; ++i) {
      const int* row = values + static_cast<std::ptrdiff_t>(i) * n;
      p.members.push_back(edo::validate_permutation({row, static_cast<std::size_t>(n)}));
    }
    edo::validate_population(p);
    *out = new edo_population{std::move(p)};
  });
}

edo_status edo_population_read(const char* path, edo_population** out) {
  return guard([&] {
    require(path, "path");
    require(out, "out");
    *out = new edo_population{edo::read_population(path)};
  });
}

edo_status edo_population_write(const edo_population* population, const char* path) {
  return guard([&] {
    require(population, "population");
    require(path, "path");
    edo::write_population(population->value, path);
  });
}

void edo_population_free(edo_population* population) { delete population; }

int edo_population_size(const edo_population* population) { return population ? population->value.n : 0; }

int edo_population_mu(const edo_population* population) { return population ? population->value.mu() : 0; }

edo_problem edo_population_problem(const edo_population* population) {
  return population ? from_kind(population->value.kind) : EDO_QAP;
}

edo_status edo_population_member(const edo_population* population, int index, int* out) {
  return guard([&] {
    require(population, "population");
    require(out, "out");
    if (index < 0 || index >= population->value.mu()) edo::fail(edo::ErrorCode::kOutOfRange, "member index out of range");
    const auto values = population->value.members[static_cast<std::size_t>(index)].values();
    std::copy(values.begin(), values.end(), out);
  });
}

edo_status edo_population_summarize(const edo_population* population, edo_population_summary* out) {
  return guard([&] {
    require(population, "population");
    require(out, "out");
    const auto& p = population->value;
    const auto table = edo::build_count_table(p);
    const auto stats = edo::population_stats(table);
    const auto d1 = edo::d1_score(p);
    out->d_p = stats.d_p;
    out->c_p = stats.c_p;
    out->min_count = table.min_count();
    out->unique_fraction = stats.unique_fraction;
    out->d1 = d1.raw;
    out->d1_norm = d1.normalized;
    if (p.mu() >= 2) {
      const auto d2 = edo::d2_score(p);
      out->d2 = d2.raw;
      out->d2_norm = d2.normalized;
    } else {
      out->d2 = 0;
      out->d2_norm = 0.0;
    }
  });
}

edo_status edo_construct(const char* kind, int n, int mu, edo_population** out) {
  return guard([&] {
    require(kind, "kind");
    require(out, "out");
    const std::string k = kind;
    edo::Population p;
    if (k == "qap-max") p = edo::max_div_qap(n, mu);
    else if (k == "stsp-max") p = edo::max_div_stsp(n, mu);
    else if (k == "atsp-max") p = edo::max_div_atsp(n, mu);
    else if (k == "qap-trap") p = edo::qap_two_opt_trap(n);
    else if (k == "stsp-trap") p = edo::stsp_three_opt_trap(n);
    else edo::fail(edo::ErrorCode::kInvalidArgument, "unknown construction '" + k + "'");
    *out = new edo_population{std::move(p)};
  });
}

edo_status edo_verify(const edo_population* population, const char* op, edo_measure measure, int64_t cap,
                      edo_verify_report* report, int* witness) {
  return guard([&] {
    require(population, "population");
    require(op, "op");
    require(report, "report");
    const auto& p = population->value;
    const auto spec = edo::parse_operator(op, p.kind, p.n);
    const auto r = edo::verify_no_improvement(p, spec, to_measure(measure), cap > 0 ? cap : edo::kDefaultVerifyCap);
    report->improvement_found = r.improvement_found ? 1 : 0;
    report->candidates_checked = r.candidates_checked;
    report->mutated = static_cast<int>(r.mutated);
    report->removed = static_cast<int>(r.removed);
    if (witness && r.neighbor) {
      const auto values = r.neighbor->values();
      std::copy(values.begin(), values.end(), witness);
    }
  });
}

void edo_run_config_init(edo_run_config* config) {
  if (!config) return;
  config->mu = 2;
  config->budget = 0;
  config->measure = EDO_MEASURE_N;
  config->op = "2opt";
  config->threshold = std::numeric_limits<double>::infinity();
  config->has_alpha = 0;
  config->alpha = 0.0;
  config->init_mode = EDO_INIT_DUPLICATE_RANDOM;
  config->initial = nullptr;
  config->seed = 1;
  config->checkpoint_count = 1000;
  config->tie_break = EDO_TIE_RANDOM;
  config->early_stop = 1;
}

edo_status edo_run(const edo_instance* instance, const edo_run_config* config, edo_run_record** out) {
  return guard([&] {
    require(instance, "instance");
    require(config, "config");
    require(config->op, "config->op");
    require(out, "out");
    const auto& inst = instance->value;
    const int n = edo::instance_size(inst);
    edo::EaConfig c;
    c.mu = config->mu;
    c.budget = config->budget > 0 ? config->budget : static_cast<std::int64_t>(config->mu) * n * n;
    c.measure = to_measure(config->measure);
    c.op = edo::parse_operator(config->op, edo::instance_kind(inst), n);
    c.threshold = config->threshold;
    if (config->has_alpha) c.alpha = config->alpha;
    switch (config->init_mode) {
      case EDO_INIT_DUPLICATE_RANDOM: c.init_mode = edo::InitMode::kDuplicateRandom; break;
      case EDO_INIT_DUPLICATE_OPT: c.init_mode = edo::InitMode::kDuplicateOpt; break;
      case EDO_INIT_GIVEN:
        require(config->initial, "config->initial");
        c.init_mode = edo::InitMode::kGiven;
        c.initial = config->initial->value;
        break;
      default: edo::fail(edo::ErrorCode::kInvalidArgument, "unknown init mode");
    }
    c.seed = config->seed;
    c.checkpoint_count = config->checkpoint_count;
    c.tie_break = to_tie(config->tie_break);
    c.early_stop = config->early_stop != 0;
    *out = new edo_run_record{edo::run_ea(c, inst)};
  });
}

void edo_run_record_free(edo_run_record* record) { delete record; }

size_t edo_run_checkpoint_count(const edo_run_record* record) {
  return record ? record->value.checkpoints.size() : 0;
}

edo_status edo_run_checkpoint(const edo_run_record* record, size_t index, edo_checkpoint* out) {
  return guard([&] {
    require(record, "record");
    require(out, "out");
    if (index >= record->value.checkpoints.size()) edo::fail(edo::ErrorCode::kOutOfRange, "checkpoint index out of range");
    const auto& cp = record->value.checkpoints[index];
    *out = {cp.iteration, cp.d1_norm, cp.d2_norm, cp.d_p, cp.c_p, cp.unique_fraction};
  });
}

int edo_run_termination(const edo_run_record* record, int64_t* iteration) {
  if (!record || !record->value.termination_iteration) return 0;
  if (iteration) *iteration = *record->value.termination_iteration;
  return 1;
}

int64_t edo_run_evaluations(const edo_run_record* record) { return record ? record->value.evaluations : 0; }

uint64_t edo_run_seed(const edo_run_record* record) { return record ? record->value.seed : 0; }

edo_status edo_run_final_population(const edo_run_record* record, edo_population** out) {
  return guard([&] {
    require(record, "record");
    require(out, "out");
    *out = new edo_population{record->value.final_population};
  });
}

edo_status edo_run_write_csv(const edo_run_record* record, const char* trajectory_path, const char* summary_path) {
  return guard([&] {
    require(record, "record");
    auto write = [&](const char* path, auto&& writer) {
      if (!path) return;
      std::ofstream out(path);
      if (!out) edo::fail(edo::ErrorCode::kIo, std::string("cannot write ") + path);
      writer(out, record->value);
      if (!out) edo::fail(edo::ErrorCode::kIo, std::string("error writing ") + path);
    };
    write(trajectory_path, [](std::ostream& o, const edo::RunRecord& r) { edo::write_trajectory_csv(o, r); });
    write(summary_path, [](std::ostream& o, const edo::RunRecord& r) { edo::write_summary_csv(o, r); });
  });
}

edo_status edo_experiment_unconstrained(const edo_unconstrained_spec* spec, const char* out_dir) {
  return guard([&] {
    require(spec, "spec");
    require(out_dir, "out_dir");
    edo::UnconstrainedSpec s;
    s.instances = collect_instances(spec->instances, spec->labels, spec->instance_count);
    s.mus = collect_ints(spec->mus, spec->mu_count, "mus");
    s.measures = collect_measures(spec->measures, spec->measure_count);
    if (spec->op) s.op = spec->op;
    s.reps = spec->reps;
    s.seed = spec->seed;
    if (spec->budget > 0) s.budget = spec->budget;
    s.checkpoints = spec->checkpoint_count;
    s.tie_break = to_tie(spec->tie_break);
    s.threads = spec->threads;
    edo::write_unconstrained(edo::experiment_unconstrained(s), out_dir);
  });
}

edo_status edo_experiment_heatmap(const edo_heatmap_spec* spec, const char* out_dir) {
  return guard([&] {
    require(spec, "spec");
    require(out_dir, "out_dir");
    edo::HeatmapSpec s;
    s.ns = collect_ints(spec->ns, spec->n_count, "ns");
    s.mus = collect_ints(spec->mus, spec->mu_count, "mus");
    if (spec->op_count > 0) {
      require(spec->ops, "ops");
      s.ops.clear();
      for (std::size_t i = 0; i < spec->op_count; ++i) {
        require(spec->ops[i], "operator");
        s.ops.emplace_back(spec->ops[i]);
      }
    }
    s.reps = spec->reps;
    s.seed = spec->seed;
    s.tie_break = to_tie(spec->tie_break);
    s.threads = spec->threads;
    edo::write_heatmap(edo::experiment_heatmap(s), out_dir);
  });
}

edo_status edo_experiment_constrained(const edo_constrained_spec* spec, const char* out_dir) {
  return guard([&] {
    require(spec, "spec");
    require(out_dir, "out_dir");
    edo::ConstrainedSpec s;
    s.instances = collect_instances(spec->instances, spec->labels, spec->instance_count);
    s.mus = collect_ints(spec->mus, spec->mu_count, "mus");
    if (spec->alpha_count > 0) require(spec->alphas, "alphas");
    s.alphas.assign(spec->alphas, spec->alphas + spec->alpha_count);
    s.measures = collect_measures(spec->measures, spec->measure_count);
    if (spec->op) s.op = spec->op;
    s.reps = spec->reps;
    s.seed = spec->seed;
    if (spec->budget > 0) s.budget = spec->budget;
    s.tie_break = to_tie(spec->tie_break);
    s.threads = spec->threads;
    edo::write_constrained(edo::experiment_constrained(s), out_dir);
  });
}

edo_status edo_mu_guarantee_bound(edo_problem problem, const char* op, int n, int* out) {
  return guard([&] {
    require(op, "op");
    require(out, "out");
    const auto kind = to_kind(problem);
    *out = edo::mu_guarantee_bound(kind, edo::parse_operator(op, kind, n), n);
  });
}

edo_status edo_improvement_bound(edo_problem problem, const char* op, int n, int mu, int d_p, edo_bound* out) {
  return guard([&] {
    require(op, "op");
    require(out, "out");
    const auto kind = to_kind(problem);
    const auto b = edo::improvement_prob_bound({kind, edo::parse_operator(op, kind, n), n, mu, d_p});
    out->exact = b.exact ? 1 : 0;
    out->value = b.to_double();
    fill_bound_text(out, b.exact ? b.value.str() : b.asymptotic);
  });
}

edo_status edo_runtime_bound(edo_problem problem, const char* op, int n, int mu, edo_bound* out) {
  return guard([&] {
    require(op, "op");
    require(out, "out");
    const auto kind = to_kind(problem);
    const auto b = edo::runtime_bound(kind, edo::parse_operator(op, kind, n), n, mu);
    out->exact = b.exact ? 1 : 0;
    out->value = b.value;
    std::ostringstream text;
    text.precision(12);
    if (b.exact) text << b.value;
    else text << b.asymptotic;
    fill_bound_text(out, text.str());
  });
}

edo_status edo_estimate_improvement(const edo_population* population, const char* op, edo_measure measure,
                                    int64_t trials, uint64_t seed, edo_estimate* out) {
  return guard([&] {
    require(population, "population");
    require(op, "op");
    require(out, "out");
    const auto& p = population->value;
    edo::Rng rng(seed);
    const auto e = edo::estimate_improvement_prob(p, edo::parse_operator(op, p.kind, p.n), to_measure(measure),
                                                  trials, rng);
    *out = {e.trials, e.successes, e.frequency, e.standard_error, e.wilson_low, e.wilson_high};
  });
}

}  // extern "C"
