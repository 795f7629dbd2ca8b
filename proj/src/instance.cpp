#include "edo/instance.hpp"

#include "edo/error.hpp"

namespace edo {

SquareMatrix::SquareMatrix(int n, std::vector<double> data) : n_(n), data_(std::move(data)) {
  if (n < 0 || data_.size() != static_cast<std::size_t>(n) * static_cast<std::size_t>(n)) {
    fail(ErrorCode::kInvalidArgument, "matrix data does not form an n x n matrix");
  }
}

TspInstance make_tsp_instance(SquareMatrix distance, bool symmetric) {
  const int n = distance.size();
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (distance(i, j) < 0) fail(ErrorCode::kInvalidArgument, "negative distance");
      if (symmetric && distance(i, j) != distance(j, i)) {
        fail(ErrorCode::kInvalidArgument, "distance matrix is not symmetric at (" +
                                              std::to_string(i) + ", " + std::to_string(j) + ")");
      }
    }
  }
  TspInstance out;
  out.distance = std::move(distance);
  out.symmetric = symmetric;
  return out;
}

QapInstance make_qap_instance(SquareMatrix weight, SquareMatrix flow) {
  if (weight.size() != flow.size()) {
    fail(ErrorCode::kInvalidArgument, "weight and flow matrices differ in size");
  }
  if (weight.size() < 1) fail(ErrorCode::kInvalidArgument, "QAP instance needs n >= 1");
  QapInstance out;
  out.weight = std::move(weight);
  out.flow = std::move(flow);
  return out;
}

int instance_size(const Instance& instance) {
  return std::visit([](const auto& in) { return in.size(); }, instance);
}

ProblemKind instance_kind(const Instance& instance) {
  if (const auto* tsp = std::get_if<TspInstance>(&instance)) return tsp->kind();
  return ProblemKind::kQap;
}

std::optional<double> instance_optimum(const Instance& instance) {
  return std::visit([](const auto& in) { return in.opt_value; }, instance);
}

std::optional<Permutation> instance_optimal_permutation(const Instance& instance) {
  return std::visit([](const auto& in) { return in.opt_perm; }, instance);
}

const std::string& instance_name(const Instance& instance) {
  return std::visit([](const auto& in) -> const std::string& { return in.name; }, instance);
}

namespace {

void require_match(const Permutation& p, int n) {
  if (p.size() != n) {
    fail(ErrorCode::kInvalidArgument, "permutation of size " + std::to_string(p.size()) +
                                          " evaluated on instance of size " + std::to_string(n));
  }
}

}  // namespace

double cost(const Permutation& p, const TspInstance& instance) {
  const int n = instance.size();
  require_match(p, n);
  double total = instance.distance(p[n - 1], p[0]);
  for (int i = 0; i + 1 < n; ++i) total += instance.distance(p[i], p[i + 1]);
  return total;
}

double cost(const Permutation& p, const QapInstance& instance) {
  const int n = instance.size();
  require_match(p, n);
  double total = 0.0;
  for (int i = 0; i < n; ++i) {
    const int pi = p[i];
    for (int j = 0; j < n; ++j) total += instance.weight(i, j) * instance.flow(pi, p[j]);
  }
  return total;
}

double cost(const Permutation& p, const Instance& instance) {
  return std::visit([&](const auto& in) { return cost(p, in); }, instance);
}

double qap_cost_after_change(const QapInstance& instance, const Permutation& before,
                             const Permutation& after, double before_cost,
                             std::span<const int> changed) {
  const int n = instance.size();
  std::vector<char> in_set(static_cast<std::size_t>(n), 0);
  for (int i : changed) in_set[static_cast<std::size_t>(i)] = 1;
  double delta = 0.0;
  // Rows of changed positions (all columns), then columns of changed
  // positions restricted to unchanged rows.
  for (int i : changed) {
    for (int j = 0; j < n; ++j) {
      const double w = instance.weight(i, j);
      delta += w * (instance.flow(after[i], after[j]) - instance.flow(before[i], before[j]));
    }
  }
  for (int j : changed) {
    for (int i = 0; i < n; ++i) {
      if (in_set[static_cast<std::size_t>(i)]) continue;
      const double w = instance.weight(i, j);
      delta += w * (instance.flow(after[i], after[j]) - instance.flow(before[i], before[j]));
    }
  }
  return before_cost + delta;
}

}  // namespace edo
