#pragma once

#include <functional>
#include <optional>

#include "nsopt/core.hpp"
#include "nsopt/finite_diff.hpp"
#include "nsopt/projections.hpp"

namespace nsopt {

enum class PenaltyKind {
  MaxPenalty,         // f(x) + M max{0, h(x)}, value only
  DistancePenalty,    // f(x) + M ||x - proj(x)||^gamma
  ProjectivePenalty,  // f(proj(x)) + M ||x - proj(x)||^gamma
};

struct PenaltyParams {
  double coefficient;    // M > 0
  double exponent = 1.0; // gamma > 0; analytic subgradient requires gamma == 1
};

// A constrained problem rewritten as an unconstrained objective. DistancePenalty
// and ProjectivePenalty need the feasible set; MaxPenalty needs constraint_fn,
// a scalar h with X = {x : h(x) <= 0}.
struct PenalizedObjective {
  PenaltyKind kind;
  ObjectiveOracle inner;
  std::optional<FeasibleSet> set;
  std::function<double(const Vector&)> constraint_fn;
  PenaltyParams params;
  ProjectionParams projection;
};

PenalizedObjective make_max_penalty(ObjectiveOracle inner,
                                    std::function<double(const Vector&)> constraint_fn,
                                    PenaltyParams params);
PenalizedObjective make_distance_penalty(ObjectiveOracle inner, FeasibleSet set,
                                         PenaltyParams params,
                                         ProjectionParams projection = {});
PenalizedObjective make_projective_penalty(ObjectiveOracle inner, FeasibleSet set,
                                           PenaltyParams params,
                                           ProjectionParams projection = {});

double max_penalty_value(const PenalizedObjective& obj, const Vector& x);
double distance_penalty_value(const PenalizedObjective& obj, const Vector& x);

// g_f(x) + M (x - proj(x)) / ||x - proj(x)||, with the zero correction when x is
// (numerically) feasible. Requires gamma == 1 and an analytic inner subgradient.
Vector distance_penalty_subgrad(const PenalizedObjective& obj, const Vector& x);

double projective_penalty_value(const PenalizedObjective& obj, const Vector& x);

// Adapter feeding the solver: value is the kind-appropriate penalty value;
// subgrad is analytic for DistancePenalty (gamma == 1, inner subgrad present),
// finite-difference for ProjectivePenalty, absent otherwise.
ObjectiveOracle penalized_oracle(const PenalizedObjective& obj, const FDParams& fd = {});

}  // namespace nsopt
