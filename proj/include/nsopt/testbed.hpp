#pragma once

#include <utility>

#include "nsopt/core.hpp"

namespace nsopt {

// Separable benchmark objective sum_i 1.2^(i-1) |x_i - 1| over a feasible set
// with a closed-form constrained optimum. Supported sets: a plain box, or the
// unit box intersected with a budget constraint sum x_i <= b.
class RavineProblem {
 public:
  // Box-constrained instance over an arbitrary box.
  static RavineProblem boxed(Box box);
  static RavineProblem boxed(int n);  // unit box [0,1]^n

  // Unit box plus sum x_i <= b, with 0 <= b <= n.
  static RavineProblem box_sum(int n, double b);

  int dim() const { return static_cast<int>(weights_.size()); }
  const Vector& weights() const { return weights_; }
  const FeasibleSet& set() const { return set_; }
  bool has_budget() const { return budget_.has_value(); }
  double budget() const { return *budget_; }

 private:
  RavineProblem(Vector weights, FeasibleSet set, std::optional<double> budget);

  Vector weights_;
  FeasibleSet set_;
  std::optional<double> budget_;
};

struct AccuracyReport {
  double delta;    // max_i |x_i - x*_i|
  double epsilon;  // |f(x) - f(x*)|
};

double ravine_value(const RavineProblem& p, const Vector& x);

// Componentwise weight * sign(x_i - 1), with sign(0) := 0 so the optimum of the
// unconstrained problem reports a zero subgradient.
Vector ravine_subgrad(const RavineProblem& p, const Vector& x);

ObjectiveOracle ravine_oracle(const RavineProblem& p);

// Closed-form constrained minimizer and its objective value. Box: clamp the
// all-ones point into the box. Budget: spend b on the highest-weight (trailing)
// coordinates, one fractional coordinate where the budget runs out.
std::pair<Vector, double> known_optimum(const RavineProblem& p);

AccuracyReport accuracy(const Vector& x, const RavineProblem& p);

}  // namespace nsopt
