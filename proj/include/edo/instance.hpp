#pragma once

#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "edo/permutation.hpp"

namespace edo {

/// Row-major dense square matrix of non-negative reals.
class SquareMatrix {
 public:
  SquareMatrix() = default;
  explicit SquareMatrix(int n, double fill = 0.0)
      : n_(n), data_(static_cast<std::size_t>(n) * static_cast<std::size_t>(n), fill) {}
  SquareMatrix(int n, std::vector<double> data);

  int size() const noexcept { return n_; }
  double operator()(int i, int j) const noexcept { return data_[index(i, j)]; }
  double& operator()(int i, int j) noexcept { return data_[index(i, j)]; }
  std::span<const double> data() const noexcept { return data_; }

  friend bool operator==(const SquareMatrix&, const SquareMatrix&) = default;

 private:
  std::size_t index(int i, int j) const noexcept {
    return static_cast<std::size_t>(i) * static_cast<std::size_t>(n_) + static_cast<std::size_t>(j);
  }

  int n_ = 0;
  std::vector<double> data_;
};

struct TspInstance {
  SquareMatrix distance;
  bool symmetric = true;
  std::optional<double> opt_value;
  std::optional<Permutation> opt_perm;
  std::string name;

  int size() const noexcept { return distance.size(); }
  ProblemKind kind() const noexcept { return symmetric ? ProblemKind::kStsp : ProblemKind::kAtsp; }
};

/// Which reading of a QAPLIB file pair reproduced the declared optimum.
enum class MatrixConvention {
  kUnresolved,
  kFirstIsWeight,       // w = first matrix, f = second, permutation as stored
  kSecondIsWeight,      // w = second matrix, f = first, permutation as stored
};

struct QapInstance {
  SquareMatrix weight;
  SquareMatrix flow;
  std::optional<double> opt_value;
  std::optional<Permutation> opt_perm;
  MatrixConvention convention = MatrixConvention::kUnresolved;
  std::string name;

  int size() const noexcept { return weight.size(); }
};

using Instance = std::variant<TspInstance, QapInstance>;

TspInstance make_tsp_instance(SquareMatrix distance, bool symmetric);
QapInstance make_qap_instance(SquareMatrix weight, SquareMatrix flow);

int instance_size(const Instance& instance);
ProblemKind instance_kind(const Instance& instance);
std::optional<double> instance_optimum(const Instance& instance);
std::optional<Permutation> instance_optimal_permutation(const Instance& instance);
const std::string& instance_name(const Instance& instance);

/// d(p[n-1], p[0]) + sum d(p[i], p[i+1]).
double cost(const Permutation& p, const TspInstance& instance);
/// sum over all i, j (diagonal included) of w(i, j) * f(p[i], p[j]).
double cost(const Permutation& p, const QapInstance& instance);
double cost(const Permutation& p, const Instance& instance);

/// Cost of `after` given the cost of `before`, where the two differ only at
/// `changed` positions. Exact for integer-valued matrices.
double qap_cost_after_change(const QapInstance& instance, const Permutation& before,
                             const Permutation& after, double before_cost,
                             std::span<const int> changed);

}  // namespace edo
