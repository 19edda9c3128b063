#include "nsopt/finite_diff.hpp"

#include <cmath>
#include <string>
#include <utility>

namespace nsopt {

namespace {

double checked_eval(const std::function<double(const Vector&)>& value, const Vector& x,
                    const char* where) {
  const double f = value(x);
  if (!std::isfinite(f)) {
    throw OracleError(std::string(where) + ": objective returned a non-finite value");
  }
  return f;
}

}  // namespace

Vector fd_gradient(const std::function<double(const Vector&)>& value, const Vector& x,
                   const FDParams& params) {
  if (!value) throw std::invalid_argument("fd_gradient: value function is empty");
  if (!(params.step > 0.0) || !std::isfinite(params.step)) {
    throw std::invalid_argument("fd_gradient: step must be positive and finite");
  }
  if (!all_finite(x))
    throw std::invalid_argument("fd_gradient: non-finite evaluation point");

  const Eigen::Index n = x.size();
  const double t = params.step;
  Vector grad(n);
  Vector probe = x;

  if (params.scheme == FDScheme::Forward) {
    // One base evaluation shared by all coordinates.
    const double f0 = checked_eval(value, x, "fd_gradient");
    for (Eigen::Index i = 0; i < n; ++i) {
      probe(i) = x(i) + t;
      grad(i) = (checked_eval(value, probe, "fd_gradient") - f0) / t;
      probe(i) = x(i);
    }
  } else {
    for (Eigen::Index i = 0; i < n; ++i) {
      probe(i) = x(i) + t;
      const double fp = checked_eval(value, probe, "fd_gradient");
      probe(i) = x(i) - t;
      const double fm = checked_eval(value, probe, "fd_gradient");
      probe(i) = x(i);
      grad(i) = (fp - fm) / (2.0 * t);
    }
  }
  return grad;
}

ObjectiveOracle fd_oracle(std::function<double(const Vector&)> value, const FDParams& params) {
  if (!value) throw std::invalid_argument("fd_oracle: value function is empty");
  ObjectiveOracle oracle;
  oracle.value = value;
  oracle.subgrad = [value = std::move(value), params](const Vector& x) {
    return fd_gradient(value, x, params);
  };
  return oracle;
}

}  // namespace nsopt
