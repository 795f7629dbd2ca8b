#include "edo/construct.hpp"

#include <algorithm>
#include <functional>
#include <numeric>

#include "edo/error.hpp"

namespace edo {

Permutation shift(const Permutation& a) {
  const int n = a.size();
  std::vector<int> v(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) v[static_cast<std::size_t>(i)] = a[(i + 1) % n];
  return make_unchecked(std::move(v));
}

namespace {

Permutation shifted(const Permutation& a, int times) {
  Permutation out = a;
  for (int t = 0; t < times; ++t) out = shift(out);
  return out;
}

// Swaps 0-based positions q and q+1.
Permutation swap_adjacent(const Permutation& a, int q) {
  const auto v = a.values();
  std::vector<int> out(v.begin(), v.end());
  std::swap(out[static_cast<std::size_t>(q)], out[static_cast<std::size_t>(q + 1)]);
  return make_unchecked(std::move(out));
}

// Builds a permutation from 1-based labels.
Permutation from_labels(std::initializer_list<int> labels) {
  std::vector<int> v;
  for (int l : labels) v.push_back(l - 1);
  return Permutation(std::move(v));
}

Permutation from_labels(const std::vector<int>& labels) {
  std::vector<int> v;
  for (int l : labels) v.push_back(l - 1);
  return Permutation(std::move(v));
}

void require_max_count(const Population& population, int expected, const char* what) {
  const auto stats = population_stats(population);
  if (stats.d_p != expected) {
    fail(ErrorCode::kInternal, std::string(what) + ": construction produced d_P = " +
                                   std::to_string(stats.d_p) + ", expected " + std::to_string(expected));
  }
}

// Walecki decomposition of K_n for odd n: (n-1)/2 Hamiltonian cycles.
std::vector<std::vector<int>> walecki_cycles(int n) {
  const int m = n - 1;
  const int center = n - 1;
  std::vector<std::vector<int>> cycles;
  for (int r = 0; r < m / 2; ++r) {
    std::vector<int> cycle{center, r};
    for (int t = 1; static_cast<int>(cycle.size()) < n; ++t) {
      cycle.push_back(((r + t) % m + m) % m);
      if (static_cast<int>(cycle.size()) < n) cycle.push_back(((r - t) % m + m) % m);
    }
    cycles.push_back(std::move(cycle));
  }
  return cycles;
}

// Chooses one edge per cycle, all pairwise vertex-disjoint, by backtracking.
bool choose_disjoint_edges(const std::vector<std::vector<int>>& cycles, std::size_t index,
                           std::vector<char>& used, std::vector<int>& chosen) {
  if (index == cycles.size()) return true;
  const auto& cycle = cycles[index];
  const int len = static_cast<int>(cycle.size());
  for (int t = 0; t < len; ++t) {
    const int u = cycle[static_cast<std::size_t>(t)];
    const int v = cycle[static_cast<std::size_t>((t + 1) % len)];
    if (used[static_cast<std::size_t>(u)] || used[static_cast<std::size_t>(v)]) continue;
    used[static_cast<std::size_t>(u)] = used[static_cast<std::size_t>(v)] = 1;
    chosen[index] = t;
    if (choose_disjoint_edges(cycles, index + 1, used, chosen)) return true;
    used[static_cast<std::size_t>(u)] = used[static_cast<std::size_t>(v)] = 0;
  }
  return false;
}

std::vector<std::vector<int>> hamiltonian_cycles(int n, int count) {
  if (n % 2 == 1) {
    auto cycles = walecki_cycles(n);
    cycles.resize(static_cast<std::size_t>(count));
    return cycles;
  }
  // Even n: decompose K_{n-1}, then route the extra node through one edge of
  // each cycle; the subdivided edges must not share endpoints.
  auto cycles = walecki_cycles(n - 1);
  cycles.resize(static_cast<std::size_t>(count));
  std::vector<char> used(static_cast<std::size_t>(n), 0);
  std::vector<int> chosen(cycles.size(), 0);
  if (!choose_disjoint_edges(cycles, 0, used, chosen)) {
    fail(ErrorCode::kInternal, "no vertex-disjoint edge choice for n = " + std::to_string(n));
  }
  const int extra = n - 1;
  for (std::size_t c = 0; c < cycles.size(); ++c) {
    cycles[c].insert(cycles[c].begin() + chosen[c] + 1, extra);
  }
  return cycles;
}

}  // namespace

Population max_div_qap(int n, int mu) {
  if (n < 1 || mu < 1) fail(ErrorCode::kInvalidArgument, "max_div_qap needs n, mu >= 1");
  Population population{ProblemKind::kQap, n, {}};
  std::vector<Permutation> shifts;
  shifts.push_back(Permutation::identity(n));
  for (int s = 1; s < n; ++s) shifts.push_back(shift(shifts.back()));
  for (int t = 0; t < mu; ++t) population.members.push_back(shifts[static_cast<std::size_t>(t % n)]);
  return population;
}

Population max_div_stsp(int n, int mu) {
  if (n < 3) fail(ErrorCode::kInvalidArgument, "max_div_stsp needs n >= 3");
  if (mu < 1 || mu > (n - 1) / 2) {
    fail(ErrorCode::kOutOfRange, "max_div_stsp needs 1 <= mu <= floor((n-1)/2) = " +
                                     std::to_string((n - 1) / 2));
  }
  Population population{ProblemKind::kStsp, n, {}};
  for (auto& cycle : hamiltonian_cycles(n, mu)) population.members.emplace_back(std::move(cycle));
  require_max_count(population, 1, "max_div_stsp");
  return population;
}

Population max_div_atsp(int n, int mu) {
  if (n < 3) fail(ErrorCode::kInvalidArgument, "max_div_atsp needs n >= 3");
  const int undirected = (mu + 1) / 2;
  if (mu < 1 || undirected > (n - 1) / 2) {
    fail(ErrorCode::kOutOfRange, "max_div_atsp needs 1 <= ceil(mu/2) <= floor((n-1)/2)");
  }
  Population population{ProblemKind::kAtsp, n, {}};
  for (auto& cycle : hamiltonian_cycles(n, undirected)) {
    population.members.emplace_back(cycle);
    std::reverse(cycle.begin(), cycle.end());
    population.members.emplace_back(std::move(cycle));
  }
  population.members.resize(static_cast<std::size_t>(mu));
  require_max_count(population, 1, "max_div_atsp");
  return population;
}

Population qap_two_opt_trap(int n) {
  if (n < 5) fail(ErrorCode::kInvalidArgument, "qap_two_opt_trap needs n >= 5");
  const int l = (n + 2) / 2;
  Population population{ProblemKind::kQap, n, {}};
  auto& members = population.members;
  const Permutation a1 = Permutation::identity(n);

  if (n == 6) {
    members.push_back(a1);
    members.push_back(shifted(a1, 2));
    members.push_back(from_labels({4, 5, 6, 2, 3, 1}));
    members.push_back(from_labels({2, 1, 4, 5, 6, 3}));
    members.push_back(from_labels({1, 6, 2, 3, 4, 5}));
  } else if (n % 2 == 0) {
    members.push_back(a1);
    // a_j = s_{n-j+1}(phi^j(a1)), s_q swapping 1-based positions q and q+1.
    for (int j = 2; j <= l - 1; ++j) members.push_back(swap_adjacent(shifted(a1, j), n - j));
    std::vector<int> al{2, 1};
    for (int t = 4; t <= n / 2 + 1; ++t) al.push_back(t);
    al.push_back(3);
    for (int t = n / 2 + 3; t <= n; ++t) al.push_back(t);
    al.push_back(n / 2 + 2);
    members.push_back(from_labels(al));
    std::vector<int> last{1, n};
    for (int t = 2; t <= n - 1; ++t) last.push_back(t);
    members.push_back(from_labels(last));
  } else {
    members.push_back(a1);
    for (int j = 2; j <= l - 1; ++j) members.push_back(shifted(a1, j));
    std::vector<int> al{2};
    for (int t = (n + 5) / 2; t <= n; ++t) al.push_back(t);
    al.push_back((n + 3) / 2);
    for (int t = 3; t <= (n + 1) / 2; ++t) al.push_back(t);
    al.push_back(1);
    members.push_back(from_labels(al));
    std::vector<int> last{1};
    for (int t = 3; t <= (n + 1) / 2; ++t) last.push_back(t);
    last.push_back(2);
    for (int t = (n + 5) / 2; t <= n; ++t) last.push_back(t);
    last.push_back((n + 3) / 2);
    members.push_back(from_labels(last));
  }
  require_max_count(population, 2, "qap_two_opt_trap");
  return population;
}

Population stsp_three_opt_trap(int n) {
  if (n < 8 || n % 4 != 0) {
    fail(ErrorCode::kInvalidArgument, "stsp_three_opt_trap needs n >= 8 divisible by 4");
  }
  const int h = n / 2;
  // I2 crisscrosses I1: (1, n-1, 3, n-3, ..., h-1, h+1) then
  // (h, h+2, h-2, h+4, ..., 2, n).
  std::vector<int> second;
  for (int t = 1; t <= h - 1; t += 2) {
    second.push_back(t);
    second.push_back(n - t);
  }
  for (int t = 0; h - t >= 2; t += 2) {
    second.push_back(h - t);
    second.push_back(h + t + 2);
  }
  // I3 mostly skips one node along I1: odd labels up to h-1, even labels
  // from h+2 up to n, even labels from h down to 2, odd labels from n-1
  // down to h+1.
  std::vector<int> third;
  for (int t = 1; t <= h - 1; t += 2) third.push_back(t);
  for (int t = h + 2; t <= n; t += 2) third.push_back(t);
  for (int t = h; t >= 2; t -= 2) third.push_back(t);
  for (int t = n - 1; t >= h + 1; t -= 2) third.push_back(t);

  Population population{ProblemKind::kStsp, n, {}};
  population.members.push_back(Permutation::identity(n));
  population.members.push_back(from_labels(second));
  population.members.push_back(from_labels(third));

  const auto report = verify_no_improvement(population, {OperatorKind::kStspInsertion, 0},
                                            MeasureKind::kNVector);
  if (report.improvement_found) {
    fail(ErrorCode::kInternal, "3-opt trap candidate for n = " + std::to_string(n) +
                                   " admits an improving insertion");
  }
  return population;
}

VerificationReport verify_no_improvement(const Population& population, const OperatorSpec& spec,
                                         MeasureKind measure, std::int64_t cap) {
  validate_population(population);
  if (operator_problem(spec.kind) != population.kind) {
    fail(ErrorCode::kInvalidArgument, "operator does not match the population's problem kind");
  }
  const auto mu = static_cast<std::int64_t>(population.members.size());
  const std::int64_t total = mu * mu * neighborhood_size_closed_form(spec, population.n);
  if (total > cap) {
    fail(ErrorCode::kCapExceeded, "verification needs " + std::to_string(total) +
                                      " candidate populations, cap is " + std::to_string(cap));
  }
  const DiversityVector baseline = measure_vector(population, measure);
  VerificationReport report;
  Population candidate = population;
  for (std::size_t b = 0; b < population.members.size(); ++b) {
    for (const auto& neighbor : enumerate_neighbors(population.members[b], spec)) {
      for (std::size_t a = 0; a < population.members.size(); ++a) {
        candidate.members[a] = neighbor;
        ++report.candidates_checked;
        const bool better = lex_compare(measure_vector(candidate, measure), baseline) < 0;
        candidate.members[a] = population.members[a];
        if (better) {
          report.improvement_found = true;
          report.mutated = b;
          report.removed = a;
          report.neighbor = neighbor;
          return report;
        }
      }
    }
  }
  return report;
}

std::vector<Permutation> all_solutions(ProblemKind kind, int n) {
  if (n < minimum_size(kind)) fail(ErrorCode::kInvalidArgument, "n below the minimum for this kind");
  std::vector<int> v(static_cast<std::size_t>(n));
  std::iota(v.begin(), v.end(), 0);
  std::vector<Permutation> out;
  do {
    if (kind != ProblemKind::kQap) {
      if (v[0] != 0) break;  // tours: fix node 0 first
      if (kind == ProblemKind::kStsp && v[1] > v[static_cast<std::size_t>(n - 1)]) continue;
    }
    out.push_back(make_unchecked(v));
  } while (std::next_permutation(v.begin(), v.end()));
  return out;
}

DiversityVector brute_force_optimum(ProblemKind kind, int n, int mu, MeasureKind measure,
                                    std::int64_t cap) {
  if (mu < 1) fail(ErrorCode::kInvalidArgument, "brute force needs mu >= 1");
  if (measure == MeasureKind::kDVector && mu < 2) {
    fail(ErrorCode::kInvalidArgument, "D vector needs mu >= 2");
  }
  const auto solutions = all_solutions(kind, n);
  const auto s = static_cast<int>(solutions.size());
  if (binomial(s + mu - 1, mu) > cap || s + mu - 1 > 62) {
    fail(ErrorCode::kCapExceeded, "brute force over " + std::to_string(s) +
                                      " solutions with mu = " + std::to_string(mu) +
                                      " exceeds the cap");
  }
  Population population{kind, n, std::vector<Permutation>(static_cast<std::size_t>(mu))};
  std::optional<DiversityVector> best;
  // Non-decreasing index sequences enumerate multisets.
  std::function<void(int, int)> recurse = [&](int depth, int start) {
    if (depth == mu) {
      auto v = measure_vector(population, measure);
      if (!best || lex_compare(v, *best) < 0) best = std::move(v);
      return;
    }
    for (int i = start; i < s; ++i) {
      population.members[static_cast<std::size_t>(depth)] = solutions[static_cast<std::size_t>(i)];
      recurse(depth + 1, i);
    }
  };
  recurse(0, 0);
  return *best;
}

}  // namespace edo
