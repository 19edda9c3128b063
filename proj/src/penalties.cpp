#include "nsopt/penalties.hpp"

#include <cmath>
#include <utility>

namespace nsopt {

namespace {

void check_params(const PenaltyParams& params) {
  if (!(params.coefficient > 0.0) || !std::isfinite(params.coefficient)) {
    throw std::invalid_argument("PenaltyParams: coefficient must be positive and finite");
  }
  if (!(params.exponent > 0.0) || !std::isfinite(params.exponent)) {
    throw std::invalid_argument("PenaltyParams: exponent must be positive and finite");
  }
}

void require_kind(const PenalizedObjective& obj, PenaltyKind kind, const char* where) {
  if (obj.kind != kind) {
    throw std::invalid_argument(std::string(where) + ": wrong penalty kind");
  }
}

double checked_inner_value(const PenalizedObjective& obj, const Vector& x,
                           const char* where) {
  const double f = obj.inner.value(x);
  if (!std::isfinite(f)) {
    throw OracleError(std::string(where) + ": inner objective returned a non-finite value");
  }
  return f;
}

// Feasibility threshold for the zero-correction convention: treat x as on X
// when the projection displacement is round-off sized relative to x.
bool numerically_feasible(double dist, const Vector& x) {
  return dist <= 1e-14 * (1.0 + x.norm());
}

}  // namespace

PenalizedObjective make_max_penalty(ObjectiveOracle inner,
                                    std::function<double(const Vector&)> constraint_fn,
                                    PenaltyParams params) {
  check_params(params);
  if (!inner.value) throw std::invalid_argument("make_max_penalty: inner value is empty");
  if (!constraint_fn) throw std::invalid_argument("make_max_penalty: constraint_fn is empty");
  PenalizedObjective obj;
  obj.kind = PenaltyKind::MaxPenalty;
  obj.inner = std::move(inner);
  obj.constraint_fn = std::move(constraint_fn);
  obj.params = params;
  return obj;
}

PenalizedObjective make_distance_penalty(ObjectiveOracle inner, FeasibleSet set,
                                         PenaltyParams params, ProjectionParams projection) {
  check_params(params);
  if (!inner.value) throw std::invalid_argument("make_distance_penalty: inner value is empty");
  PenalizedObjective obj;
  obj.kind = PenaltyKind::DistancePenalty;
  obj.inner = std::move(inner);
  obj.set = std::move(set);
  obj.params = params;
  obj.projection = projection;
  return obj;
}

PenalizedObjective make_projective_penalty(ObjectiveOracle inner, FeasibleSet set,
                                           PenaltyParams params, ProjectionParams projection) {
  PenalizedObjective obj = make_distance_penalty(std::move(inner), std::move(set), params,
                                                 projection);
  obj.kind = PenaltyKind::ProjectivePenalty;
  return obj;
}

double max_penalty_value(const PenalizedObjective& obj, const Vector& x) {
  require_kind(obj, PenaltyKind::MaxPenalty, "max_penalty_value");
  const double violation = obj.constraint_fn(x);
  if (!std::isfinite(violation)) {
    throw OracleError("max_penalty_value: constraint function returned a non-finite value");
  }
  return checked_inner_value(obj, x, "max_penalty_value") +
         obj.params.coefficient * std::max(0.0, violation);
}

double distance_penalty_value(const PenalizedObjective& obj, const Vector& x) {
  require_kind(obj, PenaltyKind::DistancePenalty, "distance_penalty_value");
  const double dist = (x - project(x, *obj.set, obj.projection)).norm();
  return checked_inner_value(obj, x, "distance_penalty_value") +
         obj.params.coefficient * std::pow(dist, obj.params.exponent);
}

Vector distance_penalty_subgrad(const PenalizedObjective& obj, const Vector& x) {
  require_kind(obj, PenaltyKind::DistancePenalty, "distance_penalty_subgrad");
  if (obj.params.exponent != 1.0) {
    throw std::invalid_argument(
        "distance_penalty_subgrad: analytic form requires exponent == 1");
  }
  if (!obj.inner.has_subgrad()) {
    throw std::invalid_argument("distance_penalty_subgrad: inner subgradient missing");
  }
  Vector g = obj.inner.subgrad(x);
  if (!all_finite(g)) {
    throw OracleError("distance_penalty_subgrad: inner subgradient is non-finite");
  }
  const Vector displacement = x - project(x, *obj.set, obj.projection);
  const double dist = displacement.norm();
  if (!numerically_feasible(dist, x)) {
    g += (obj.params.coefficient / dist) * displacement;
  }
  return g;
}

double projective_penalty_value(const PenalizedObjective& obj, const Vector& x) {
  require_kind(obj, PenaltyKind::ProjectivePenalty, "projective_penalty_value");
  const Vector projected = project(x, *obj.set, obj.projection);
  const double dist = (x - projected).norm();
  // The inner objective is only ever evaluated on the feasible set.
  const double f = obj.inner.value(projected);
  if (!std::isfinite(f)) {
    throw OracleError("projective_penalty_value: inner objective returned a non-finite value");
  }
  return f + obj.params.coefficient * std::pow(dist, obj.params.exponent);
}

ObjectiveOracle penalized_oracle(const PenalizedObjective& obj, const FDParams& fd) {
  ObjectiveOracle oracle;
  switch (obj.kind) {
    case PenaltyKind::MaxPenalty:
      oracle.value = [obj](const Vector& x) { return max_penalty_value(obj, x); };
      break;
    case PenaltyKind::DistancePenalty:
      oracle.value = [obj](const Vector& x) { return distance_penalty_value(obj, x); };
      if (obj.params.exponent == 1.0 && obj.inner.has_subgrad()) {
        oracle.subgrad = [obj](const Vector& x) { return distance_penalty_subgrad(obj, x); };
      }
      break;
    case PenaltyKind::ProjectivePenalty:
      oracle.value = [obj](const Vector& x) { return projective_penalty_value(obj, x); };
      oracle.subgrad = [obj, fd](const Vector& x) {
        return fd_gradient([&obj](const Vector& y) { return projective_penalty_value(obj, y); },
                           x, fd);
      };
      break;
  }
  return oracle;
}

}  // namespace nsopt
