#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <string>

#include "edo/diversity.hpp"
#include "edo/mutation.hpp"

namespace edo {

using Rational = boost::multiprecision::cpp_rational;

struct BoundQuery {
  ProblemKind problem = ProblemKind::kQap;
  OperatorSpec op;
  int n = 0;
  int mu = 0;
  int d_p = 2;
};

/// Largest mu for which the operator provably always has an improving move.
/// Throws kUnsupported for STSP insertion.
int mu_guarantee_bound(ProblemKind problem, const OperatorSpec& op, int n);

/// Exact bounds carry a rational value; ATSP 4-opt only has an asymptotic
/// class, stored in `asymptotic`.
struct ImprovementBound {
  bool exact = true;
  Rational value;
  std::string asymptotic;

  double to_double() const { return exact ? value.convert_to<double>() : 0.0; }
};

ImprovementBound improvement_prob_bound(const BoundQuery& query);

struct RuntimeBound {
  bool exact = true;
  double value = 0.0;  // expected iterations
  std::string asymptotic;
};

/// Sum over j = 2..mu of (mu n / j) / improvement_prob_bound(d_P = j).
RuntimeBound runtime_bound(ProblemKind problem, const OperatorSpec& op, int n, int mu);

struct Estimate {
  std::int64_t trials = 0;
  std::int64_t successes = 0;
  double frequency = 0.0;
  double standard_error = 0.0;
  double wilson_low = 0.0;
  double wilson_high = 0.0;
};

/// Wilson score interval for `successes` out of `trials`.
Estimate make_estimate(std::int64_t successes, std::int64_t trials, double z = 1.96);

/// Frequency with which one unconstrained step from P (uniform member,
/// uniform neighbor) yields a strictly smaller measure vector.
Estimate estimate_improvement_prob(const Population& population, const OperatorSpec& spec,
                                   MeasureKind measure, std::int64_t trials, Rng& rng);

}  // namespace edo
