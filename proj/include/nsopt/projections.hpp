#pragma once

#include "nsopt/core.hpp"

namespace nsopt {

struct ProjectionParams {
  double tol = 1e-10;   // fixed-point / feasibility tolerance
  int max_iter = 10000; // cap on bisection steps and Dykstra cycles
};

/// Componentwise clamp onto the box.
Vector project_box(const Vector& x, const Box& box);

/// x - max(0, (a.x - b)/||a||^2) a.
Vector project_halfspace(const Vector& x, const Halfspace& h);

/// x - ((a.x - b)/||a||^2) a.
Vector project_hyperplane(const Vector& x, const Hyperplane& h);

/// Exact Euclidean projection onto box ∩ {a.x <= b}. If the clamp already
/// satisfies the halfspace it is the answer; otherwise the multiplier of the
/// active halfspace is located by bisection on clamp(x - t a).
/// Throws std::runtime_error if the intersection is empty or the bisection
/// fails to converge within max_iter steps.
Vector project_box_halfspace(const Vector& x, const Box& box, const Halfspace& h,
                             const ProjectionParams& params = {});

/// Dykstra's alternating projections over all halfspaces, hyperplanes and the
/// bounds box. Terminates when the per-cycle displacement drops below tol;
/// throws std::runtime_error after max_iter cycles without convergence.
Vector project_polyhedron(const Vector& x, const Polyhedron& poly,
                          const ProjectionParams& params = {});

/// Dispatch on the feasible-set variant.
Vector project(const Vector& x, const FeasibleSet& set,
               const ProjectionParams& params = {});

}  // namespace nsopt
