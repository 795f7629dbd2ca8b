#include "edo/permutation.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

#include "edo/error.hpp"

namespace edo {

std::string_view to_string(ProblemKind kind) {
  switch (kind) {
    case ProblemKind::kStsp: return "STSP";
    case ProblemKind::kAtsp: return "ATSP";
    case ProblemKind::kQap: return "QAP";
  }
  return "?";
}

ProblemKind parse_problem_kind(std::string_view text) {
  std::string upper(text);
  std::transform(upper.begin(), upper.end(), upper.begin(),
                 [](unsigned char c) { return static_cast<char>(std::toupper(c)); });
  if (upper == "STSP") return ProblemKind::kStsp;
  if (upper == "ATSP") return ProblemKind::kAtsp;
  if (upper == "QAP") return ProblemKind::kQap;
  fail(ErrorCode::kParse, "unknown problem kind '" + std::string(text) + "'");
}

std::int64_t object_universe_size(ProblemKind kind, int n) {
  const std::int64_t nn = n;
  switch (kind) {
    case ProblemKind::kStsp: return nn * (nn - 1) / 2;
    case ProblemKind::kAtsp: return nn * (nn - 1);
    case ProblemKind::kQap: return nn * nn;
  }
  return 0;
}

Permutation::Permutation(std::vector<int> values) : values_(std::move(values)) {
  const int n = size();
  if (n < 1) fail(ErrorCode::kInvalidArgument, "permutation must have length >= 1");
  std::vector<char> seen(static_cast<std::size_t>(n), 0);
  for (int i = 0; i < n; ++i) {
    const int v = values_[static_cast<std::size_t>(i)];
    if (v < 0 || v >= n) {
      fail(ErrorCode::kInvalidArgument,
           "value " + std::to_string(v) + " out of range at index " + std::to_string(i));
    }
    if (seen[static_cast<std::size_t>(v)]) {
      fail(ErrorCode::kInvalidArgument,
           "duplicate value " + std::to_string(v) + " at index " + std::to_string(i));
    }
    seen[static_cast<std::size_t>(v)] = 1;
  }
}

Permutation make_unchecked(std::vector<int> values) {
  return Permutation(std::move(values), Permutation::Unchecked{});
}

Permutation Permutation::identity(int n) {
  if (n < 1) fail(ErrorCode::kInvalidArgument, "permutation must have length >= 1");
  std::vector<int> v(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) v[static_cast<std::size_t>(i)] = i;
  return make_unchecked(std::move(v));
}

Permutation Permutation::inverse() const {
  std::vector<int> inv(values_.size());
  for (int i = 0; i < size(); ++i) inv[static_cast<std::size_t>((*this)[i])] = i;
  return make_unchecked(std::move(inv));
}

Permutation validate_permutation(std::span<const int> values) {
  return Permutation(std::vector<int>(values.begin(), values.end()));
}

int minimum_size(ProblemKind kind) { return kind == ProblemKind::kQap ? 1 : 3; }

namespace {

void require_size(const Permutation& p, ProblemKind kind) {
  if (p.size() < minimum_size(kind)) {
    fail(ErrorCode::kInvalidArgument, std::string(to_string(kind)) + " solutions need n >= " +
                                          std::to_string(minimum_size(kind)));
  }
}

Object object_at(const Permutation& p, ProblemKind kind, int i) {
  const int n = p.size();
  switch (kind) {
    case ProblemKind::kQap: return {i, p[i]};
    case ProblemKind::kAtsp: return {p[i], p[(i + 1) % n]};
    case ProblemKind::kStsp: {
      const int u = p[i];
      const int v = p[(i + 1) % n];
      return u < v ? Object{u, v} : Object{v, u};
    }
  }
  return {};
}

}  // namespace

ObjectSet object_set(const Permutation& p, ProblemKind kind) {
  require_size(p, kind);
  ObjectSet out;
  out.reserve(static_cast<std::size_t>(p.size()));
  for (int i = 0; i < p.size(); ++i) out.push_back(object_at(p, kind, i));
  return out;
}

void object_slots(const Permutation& p, ProblemKind kind, std::vector<int>& out) {
  require_size(p, kind);
  const int n = p.size();
  out.resize(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) out[static_cast<std::size_t>(i)] = object_at(p, kind, i).slot(n);
}

int overlap(const Permutation& x, const Permutation& y, ProblemKind kind) {
  if (x.size() != y.size()) {
    fail(ErrorCode::kInvalidArgument, "overlap of permutations with different n (" +
                                          std::to_string(x.size()) + " vs " +
                                          std::to_string(y.size()) + ")");
  }
  require_size(x, kind);
  const int n = x.size();
  if (kind == ProblemKind::kQap) {
    int shared = 0;
    for (int i = 0; i < n; ++i) shared += x[i] == y[i];
    return shared;
  }
  // Successor (and predecessor) of every node in y.
  std::vector<int> succ(static_cast<std::size_t>(n)), pred(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    succ[static_cast<std::size_t>(y[i])] = y[(i + 1) % n];
    pred[static_cast<std::size_t>(y[(i + 1) % n])] = y[i];
  }
  int shared = 0;
  for (int i = 0; i < n; ++i) {
    const int u = x[i];
    const int v = x[(i + 1) % n];
    const bool hit = succ[static_cast<std::size_t>(u)] == v ||
                     (kind == ProblemKind::kStsp && pred[static_cast<std::size_t>(u)] == v);
    shared += hit;
  }
  return shared;
}

Permutation canonical_form(const Permutation& p, ProblemKind kind) {
  if (kind == ProblemKind::kQap) return p;
  const int n = p.size();
  int start = 0;
  while (p[start] != 0) ++start;
  std::vector<int> v(static_cast<std::size_t>(n));
  const bool reverse = kind == ProblemKind::kStsp && n > 2 && p[(start + n - 1) % n] < p[(start + 1) % n];
  for (int i = 0; i < n; ++i) {
    const int src = reverse ? (start - i + n) % n : (start + i) % n;
    v[static_cast<std::size_t>(i)] = p[src];
  }
  return make_unchecked(std::move(v));
}

std::string format_one_based(const Permutation& p) {
  std::ostringstream os;
  for (int i = 0; i < p.size(); ++i) {
    if (i) os << ' ';
    os << p[i] + 1;
  }
  return os.str();
}

}  // namespace edo
