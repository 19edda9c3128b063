#include "nsopt/testbed.hpp"

#include <cmath>

namespace nsopt {

namespace {

Vector geometric_weights(Eigen::Index n) {
  Vector w(n);
  double v = 1.0;
  for (Eigen::Index i = 0; i < n; ++i) {
    w(i) = v;
    v *= 1.2;
  }
  return w;
}

void check_dim(const RavineProblem& p, const Vector& x, const char* where) {
  if (x.size() != p.dim()) {
    throw std::invalid_argument(std::string(where) + ": dimension mismatch");
  }
}

}  // namespace

RavineProblem::RavineProblem(Vector weights, FeasibleSet set, std::optional<double> budget)
    : weights_(std::move(weights)), set_(std::move(set)), budget_(budget) {}

RavineProblem RavineProblem::boxed(Box box) {
  const Eigen::Index n = box.dim();
  return RavineProblem(geometric_weights(n), FeasibleSet::box_only(std::move(box)), {});
}

RavineProblem RavineProblem::boxed(int n) {
  if (n < 1) throw std::invalid_argument("RavineProblem::boxed: n must be >= 1");
  return boxed(Box(Vector::Zero(n), Vector::Ones(n)));
}

RavineProblem RavineProblem::box_sum(int n, double b) {
  if (n < 1) throw std::invalid_argument("RavineProblem::box_sum: n must be >= 1");
  if (!(b >= 0.0) || !(b <= static_cast<double>(n))) {
    throw std::invalid_argument("RavineProblem::box_sum: b must lie in [0, n]");
  }
  Box box(Vector::Zero(n), Vector::Ones(n));
  Halfspace budget(Vector::Ones(n), b);
  return RavineProblem(geometric_weights(n),
                       FeasibleSet::box_halfspace(std::move(box), std::move(budget)), b);
}

double ravine_value(const RavineProblem& p, const Vector& x) {
  check_dim(p, x, "ravine_value");
  return (p.weights().array() * (x.array() - 1.0).abs()).sum();
}

Vector ravine_subgrad(const RavineProblem& p, const Vector& x) {
  check_dim(p, x, "ravine_subgrad");
  Vector g(p.dim());
  for (Eigen::Index i = 0; i < g.size(); ++i) {
    const double r = x(i) - 1.0;
    g(i) = r > 0.0 ? p.weights()(i) : (r < 0.0 ? -p.weights()(i) : 0.0);
  }
  return g;
}

ObjectiveOracle ravine_oracle(const RavineProblem& p) {
  ObjectiveOracle oracle;
  oracle.value = [p](const Vector& x) { return ravine_value(p, x); };
  oracle.subgrad = [p](const Vector& x) { return ravine_subgrad(p, x); };
  return oracle;
}

std::pair<Vector, double> known_optimum(const RavineProblem& p) {
  const Eigen::Index n = p.dim();
  Vector xstar(n);
  if (!p.has_budget()) {
    const Box& box = std::get<Box>(p.set().variant());
    xstar = Vector::Ones(n).cwiseMax(box.lower()).cwiseMin(box.upper());
  } else {
    // Weights increase with the index, so the budget goes to the trailing
    // coordinates: ones after position n - floor(b), the remainder b - floor(b)
    // at that position, zeros before it.
    const double b = p.budget();
    const auto whole = static_cast<Eigen::Index>(std::floor(b));
    xstar.setZero();
    for (Eigen::Index i = n - whole; i < n; ++i) xstar(i) = 1.0;
    if (whole < n) xstar(n - whole - 1) = b - std::floor(b);
  }
  return {xstar, ravine_value(p, xstar)};
}

AccuracyReport accuracy(const Vector& x, const RavineProblem& p) {
  check_dim(p, x, "accuracy");
  const auto [xstar, fstar] = known_optimum(p);
  AccuracyReport report;
  report.delta = (x - xstar).cwiseAbs().maxCoeff();
  report.epsilon = std::abs(ravine_value(p, x) - fstar);
  return report;
}

}  // namespace nsopt
