#include "edo/mutation.hpp"

#include <algorithm>
#include <charconv>
#include <numeric>

#include "edo/error.hpp"

namespace edo {

ProblemKind operator_problem(OperatorKind kind) {
  switch (kind) {
    case OperatorKind::kStspTwoOpt:
    case OperatorKind::kStspInsertion:
    case OperatorKind::kStspExchange: return ProblemKind::kStsp;
    case OperatorKind::kAtspThreeOpt:
    case OperatorKind::kAtspFourOpt: return ProblemKind::kAtsp;
    case OperatorKind::kQapKOpt: return ProblemKind::kQap;
  }
  return ProblemKind::kQap;
}

int operator_minimum_size(const OperatorSpec& spec) {
  switch (spec.kind) {
    case OperatorKind::kStspTwoOpt: return 4;
    case OperatorKind::kStspInsertion: return 5;
    case OperatorKind::kStspExchange: return 6;
    case OperatorKind::kAtspThreeOpt: return 3;
    case OperatorKind::kAtspFourOpt: return 4;
    case OperatorKind::kQapKOpt: return std::max(spec.k, 2);
  }
  return 0;
}

void validate_operator(const OperatorSpec& spec, int n) {
  if (spec.kind == OperatorKind::kQapKOpt && spec.k < 2) {
    fail(ErrorCode::kInvalidArgument, "k-opt needs k >= 2");
  }
  if (n < operator_minimum_size(spec)) {
    fail(ErrorCode::kInvalidArgument, operator_name(spec) + " has an empty neighborhood for n = " +
                                          std::to_string(n) + " (needs n >= " +
                                          std::to_string(operator_minimum_size(spec)) + ")");
  }
}

std::string operator_name(const OperatorSpec& spec) {
  switch (spec.kind) {
    case OperatorKind::kStspTwoOpt: return "2opt";
    case OperatorKind::kStspInsertion: return "insertion";
    case OperatorKind::kStspExchange: return "exchange";
    case OperatorKind::kAtspThreeOpt: return "3opt";
    case OperatorKind::kAtspFourOpt: return "4opt";
    case OperatorKind::kQapKOpt: return "kopt:" + std::to_string(spec.k);
  }
  return "?";
}

OperatorSpec parse_operator(std::string_view token, ProblemKind problem, int n) {
  auto bad = [&]() -> OperatorSpec {
    fail(ErrorCode::kParse, "operator '" + std::string(token) + "' is not valid for " +
                                std::string(to_string(problem)));
  };
  if (problem == ProblemKind::kQap) {
    if (token == "2opt") return {OperatorKind::kQapKOpt, 2};
    if (token == "3opt") return {OperatorKind::kQapKOpt, 3};
    if (token == "4opt") return {OperatorKind::kQapKOpt, 4};
    if (token.starts_with("kopt:")) {
      const auto arg = token.substr(5);
      if (arg == "n/5") return {OperatorKind::kQapKOpt, std::max(2, (n + 4) / 5)};
      int k = 0;
      const auto [ptr, ec] = std::from_chars(arg.data(), arg.data() + arg.size(), k);
      if (ec != std::errc() || ptr != arg.data() + arg.size() || k < 2) return bad();
      return {OperatorKind::kQapKOpt, k};
    }
    return bad();
  }
  if (problem == ProblemKind::kStsp) {
    if (token == "2opt") return {OperatorKind::kStspTwoOpt, 0};
    if (token == "insertion") return {OperatorKind::kStspInsertion, 0};
    if (token == "exchange") return {OperatorKind::kStspExchange, 0};
    return bad();
  }
  if (token == "3opt") return {OperatorKind::kAtspThreeOpt, 0};
  if (token == "4opt") return {OperatorKind::kAtspFourOpt, 0};
  return bad();
}

std::int64_t derangement_count(int k) {
  if (k < 0) fail(ErrorCode::kInvalidArgument, "derangement count of negative k");
  std::int64_t prev2 = 1;  // !0
  std::int64_t prev1 = 0;  // !1
  if (k == 0) return prev2;
  for (int i = 2; i <= k; ++i) {
    const std::int64_t next = (i - 1) * (prev1 + prev2);
    prev2 = prev1;
    prev1 = next;
  }
  return prev1;
}

std::int64_t binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  k = std::min(k, n - k);
  std::int64_t out = 1;
  for (int i = 1; i <= k; ++i) out = out * (n - k + i) / i;
  return out;
}

std::int64_t neighborhood_size_closed_form(const OperatorSpec& spec, int n) {
  const std::int64_t nn = n;
  switch (spec.kind) {
    case OperatorKind::kStspTwoOpt: return nn * (nn - 3) / 2;
    case OperatorKind::kStspInsertion: return nn * (nn - 4);
    case OperatorKind::kStspExchange: return nn * (nn - 5) / 2;
    case OperatorKind::kAtspThreeOpt: return binomial(n, 3);
    case OperatorKind::kAtspFourOpt: return binomial(n, 4);
    case OperatorKind::kQapKOpt: return derangement_count(spec.k) * binomial(n, spec.k);
  }
  return -1;
}

namespace {

int cyclic_distance(int i, int j, int n) {
  const int d = std::abs(i - j) % n;
  return std::min(d, n - d);
}

void require_position(int i, int n) {
  if (i < 0 || i >= n) fail(ErrorCode::kOutOfRange, "position " + std::to_string(i) + " out of range");
}

std::vector<int> copy_values(const Permutation& p) {
  const auto v = p.values();
  return {v.begin(), v.end()};
}

// Appends p[from..to] (inclusive, may be empty when from > to).
void append_range(std::vector<int>& out, const Permutation& p, int from, int to) {
  for (int t = from; t <= to; ++t) out.push_back(p[t]);
}

}  // namespace

Permutation stsp_two_opt(const Permutation& p, int i, int j) {
  const int n = p.size();
  if (n < 4) fail(ErrorCode::kInvalidArgument, "2-opt needs n >= 4");
  require_position(i, n);
  require_position(j, n);
  if (i >= j) fail(ErrorCode::kInvalidArgument, "2-opt needs i < j");
  const int length = j - i + 1;
  if (length > n - 2) {
    fail(ErrorCode::kInvalidArgument, "2-opt segment of length " + std::to_string(length) +
                                          " leaves the tour unchanged or trades adjacent edges");
  }
  auto v = copy_values(p);
  std::reverse(v.begin() + i, v.begin() + j + 1);
  return make_unchecked(std::move(v));
}

Permutation stsp_insertion(const Permutation& p, int i, int j) {
  const int n = p.size();
  if (n < 5) fail(ErrorCode::kInvalidArgument, "insertion needs n >= 5");
  require_position(i, n);
  require_position(j, n);
  const int offset = ((j - i) % n + n) % n;
  if (offset == 0 || offset == 1 || offset == n - 1 || offset == n - 2) {
    fail(ErrorCode::kInvalidArgument, "insertion (" + std::to_string(i) + ", " + std::to_string(j) +
                                          ") trades fewer than 3 edges");
  }
  const int moved = p[i];
  const int anchor = p[j];
  std::vector<int> v;
  v.reserve(static_cast<std::size_t>(n));
  for (int t = 0; t < n; ++t) {
    if (t == i) continue;
    v.push_back(p[t]);
    if (p[t] == anchor) v.push_back(moved);
  }
  return make_unchecked(std::move(v));
}

Permutation stsp_exchange(const Permutation& p, int i, int j) {
  const int n = p.size();
  if (n < 6) fail(ErrorCode::kInvalidArgument, "exchange needs n >= 6");
  require_position(i, n);
  require_position(j, n);
  if (cyclic_distance(i, j, n) < 3) {
    fail(ErrorCode::kInvalidArgument, "exchange positions at cyclic distance " +
                                          std::to_string(cyclic_distance(i, j, n)) + " < 3");
  }
  auto v = copy_values(p);
  std::swap(v[static_cast<std::size_t>(i)], v[static_cast<std::size_t>(j)]);
  return make_unchecked(std::move(v));
}

Permutation atsp_three_opt(const Permutation& p, int i, int j, int k) {
  const int n = p.size();
  if (n < 3) fail(ErrorCode::kInvalidArgument, "3-opt needs n >= 3");
  if (!(0 <= i && i < j && j < k && k < n)) {
    fail(ErrorCode::kInvalidArgument, "3-opt needs increasing cut positions");
  }
  std::vector<int> v;
  v.reserve(static_cast<std::size_t>(n));
  append_range(v, p, 0, i);
  append_range(v, p, j + 1, k);
  append_range(v, p, i + 1, j);
  append_range(v, p, k + 1, n - 1);
  return make_unchecked(std::move(v));
}

Permutation atsp_four_opt(const Permutation& p, int i, int j, int k, int h) {
  const int n = p.size();
  if (n < 4) fail(ErrorCode::kInvalidArgument, "4-opt needs n >= 4");
  if (!(0 <= i && i < j && j < k && k < h && h < n)) {
    fail(ErrorCode::kInvalidArgument, "4-opt needs increasing cut positions");
  }
  std::vector<int> v;
  v.reserve(static_cast<std::size_t>(n));
  append_range(v, p, 0, i);
  append_range(v, p, k + 1, h);
  append_range(v, p, j + 1, k);
  append_range(v, p, i + 1, j);
  append_range(v, p, h + 1, n - 1);
  return make_unchecked(std::move(v));
}

// Derangements ----------------------------------------------------------------

Derangement::Derangement(std::vector<int> values) : values_(std::move(values)) {
  validate_permutation(values_);
  for (int i = 0; i < size(); ++i) {
    if (values_[static_cast<std::size_t>(i)] == i) {
      fail(ErrorCode::kInvalidArgument, "derangement has a fixed point at " + std::to_string(i));
    }
  }
}

std::vector<Derangement> all_derangements(int k) {
  std::vector<int> v(static_cast<std::size_t>(k));
  std::iota(v.begin(), v.end(), 0);
  std::vector<Derangement> out;
  do {
    bool fixed = false;
    for (int i = 0; i < k && !fixed; ++i) fixed = v[static_cast<std::size_t>(i)] == i;
    if (!fixed) out.emplace_back(v);
  } while (std::next_permutation(v.begin(), v.end()));
  return out;
}

namespace {

const std::vector<Derangement>& small_derangements(int k) {
  static const std::vector<std::vector<Derangement>> table = [] {
    std::vector<std::vector<Derangement>> t(5);
    for (int i = 2; i <= 4; ++i) t[static_cast<std::size_t>(i)] = all_derangements(i);
    return t;
  }();
  return table[static_cast<std::size_t>(k)];
}

}  // namespace

Derangement sample_derangement(int k, Rng& rng) {
  if (k < 2) fail(ErrorCode::kInvalidArgument, "no derangements on fewer than 2 elements");
  if (k <= 4) {
    const auto& all = small_derangements(k);
    return all[static_cast<std::size_t>(uniform_below(rng, static_cast<int>(all.size())))];
  }
  std::vector<int> v(static_cast<std::size_t>(k));
  for (;;) {
    std::iota(v.begin(), v.end(), 0);
    std::shuffle(v.begin(), v.end(), rng);
    bool fixed = false;
    for (int i = 0; i < k && !fixed; ++i) fixed = v[static_cast<std::size_t>(i)] == i;
    if (!fixed) return Derangement(v);
  }
}

Permutation qap_k_opt(const Permutation& p, std::span<const int> subset, const Derangement& d) {
  const int n = p.size();
  const int k = static_cast<int>(subset.size());
  if (k != d.size()) {
    fail(ErrorCode::kInvalidArgument, "subset of size " + std::to_string(k) +
                                          " with derangement of size " + std::to_string(d.size()));
  }
  if (k < 2 || k > n) fail(ErrorCode::kInvalidArgument, "k-opt needs 2 <= k <= n");
  std::vector<int> sorted(subset.begin(), subset.end());
  std::sort(sorted.begin(), sorted.end());
  for (int t = 0; t < k; ++t) {
    require_position(sorted[static_cast<std::size_t>(t)], n);
    if (t > 0 && sorted[static_cast<std::size_t>(t)] == sorted[static_cast<std::size_t>(t - 1)]) {
      fail(ErrorCode::kInvalidArgument, "k-opt subset has repeated positions");
    }
  }
  auto v = copy_values(p);
  for (int t = 0; t < k; ++t) {
    v[static_cast<std::size_t>(sorted[static_cast<std::size_t>(t)])] = p[sorted[static_cast<std::size_t>(d[t])]];
  }
  return make_unchecked(std::move(v));
}

// Sampling ---------------------------------------------------------------------

namespace {

std::vector<int> sample_sorted_subset(int n, int k, Rng& rng) {
  std::vector<int> all(static_cast<std::size_t>(n));
  std::iota(all.begin(), all.end(), 0);
  std::vector<int> out;
  out.reserve(static_cast<std::size_t>(k));
  std::sample(all.begin(), all.end(), std::back_inserter(out), k, rng);
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

Permutation sample_neighbor(const Permutation& p, const OperatorSpec& spec, Rng& rng,
                            std::vector<int>& changed_positions) {
  const int n = p.size();
  validate_operator(spec, n);
  changed_positions.clear();
  switch (spec.kind) {
    case OperatorKind::kStspTwoOpt: {
      // Unordered pair of non-adjacent tour edges (t1, t2); edge t joins
      // positions t and t+1.
      for (;;) {
        int t1 = uniform_below(rng, n);
        int t2 = uniform_below(rng, n);
        if (t1 > t2) std::swap(t1, t2);
        if (t2 - t1 < 2 || (t1 == 0 && t2 == n - 1)) continue;
        return stsp_two_opt(p, t1 + 1, t2);
      }
    }
    case OperatorKind::kStspInsertion: {
      const int i = uniform_below(rng, n);
      const int j = (i + 2 + uniform_below(rng, n - 4)) % n;
      return stsp_insertion(p, i, j);
    }
    case OperatorKind::kStspExchange: {
      for (;;) {
        const int i = uniform_below(rng, n);
        const int j = uniform_below(rng, n);
        if (i != j && cyclic_distance(i, j, n) >= 3) return stsp_exchange(p, i, j);
      }
    }
    case OperatorKind::kAtspThreeOpt: {
      const auto c = sample_sorted_subset(n, 3, rng);
      return atsp_three_opt(p, c[0], c[1], c[2]);
    }
    case OperatorKind::kAtspFourOpt: {
      const auto c = sample_sorted_subset(n, 4, rng);
      return atsp_four_opt(p, c[0], c[1], c[2], c[3]);
    }
    case OperatorKind::kQapKOpt: {
      changed_positions = sample_sorted_subset(n, spec.k, rng);
      return qap_k_opt(p, changed_positions, sample_derangement(spec.k, rng));
    }
  }
  fail(ErrorCode::kInternal, "unknown operator");
}

Permutation sample_neighbor(const Permutation& p, const OperatorSpec& spec, Rng& rng) {
  std::vector<int> changed;
  return sample_neighbor(p, spec, rng, changed);
}

// Enumeration ------------------------------------------------------------------

namespace {

// Calls f(subset) for every increasing k-subset of {0..n-1}.
template <typename F>
void for_each_subset(int n, int k, F&& f) {
  std::vector<int> c(static_cast<std::size_t>(k));
  std::iota(c.begin(), c.end(), 0);
  if (k > n) return;
  for (;;) {
    f(std::span<const int>(c));
    int t = k - 1;
    while (t >= 0 && c[static_cast<std::size_t>(t)] == n - k + t) --t;
    if (t < 0) return;
    ++c[static_cast<std::size_t>(t)];
    for (int u = t + 1; u < k; ++u) c[static_cast<std::size_t>(u)] = c[static_cast<std::size_t>(u - 1)] + 1;
  }
}

}  // namespace

std::vector<Permutation> enumerate_neighbors(const Permutation& p, const OperatorSpec& spec) {
  const int n = p.size();
  validate_operator(spec, n);
  std::vector<Permutation> out;
  switch (spec.kind) {
    case OperatorKind::kStspTwoOpt:
      for (int t1 = 0; t1 < n; ++t1) {
        for (int t2 = t1 + 2; t2 < n; ++t2) {
          if (t1 == 0 && t2 == n - 1) continue;
          out.push_back(stsp_two_opt(p, t1 + 1, t2));
        }
      }
      break;
    case OperatorKind::kStspInsertion:
      for (int i = 0; i < n; ++i) {
        for (int t = 0; t < n - 4; ++t) out.push_back(stsp_insertion(p, i, (i + 2 + t) % n));
      }
      break;
    case OperatorKind::kStspExchange:
      for (int i = 0; i < n; ++i) {
        for (int j = i + 3; j < n; ++j) {
          if (cyclic_distance(i, j, n) >= 3) out.push_back(stsp_exchange(p, i, j));
        }
      }
      break;
    case OperatorKind::kAtspThreeOpt:
      for_each_subset(n, 3, [&](std::span<const int> c) { out.push_back(atsp_three_opt(p, c[0], c[1], c[2])); });
      break;
    case OperatorKind::kAtspFourOpt:
      for_each_subset(n, 4, [&](std::span<const int> c) {
        out.push_back(atsp_four_opt(p, c[0], c[1], c[2], c[3]));
      });
      break;
    case OperatorKind::kQapKOpt: {
      const auto derangements = all_derangements(spec.k);
      for_each_subset(n, spec.k, [&](std::span<const int> c) {
        for (const auto& d : derangements) out.push_back(qap_k_opt(p, c, d));
      });
      break;
    }
  }
  return out;
}

}  // namespace edo
