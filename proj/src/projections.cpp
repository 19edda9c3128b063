#include "nsopt/projections.hpp"

#include <cmath>
#include <string>

namespace nsopt {

namespace {

void check_dim(const Vector& x, Eigen::Index n, const char* where) {
  if (x.size() != n) {
    throw std::invalid_argument(std::string(where) + ": dimension mismatch");
  }
}

Vector clamp(const Vector& x, const Box& box) {
  return x.cwiseMax(box.lower()).cwiseMin(box.upper());
}

// min over the box of a.y, attained at the corner that opposes a.
double min_over_box(const Vector& a, const Box& box) {
  return (a.array() > 0.0)
      .select(a.array() * box.lower().array(), a.array() * box.upper().array())
      .sum();
}

}  // namespace

Vector project_box(const Vector& x, const Box& box) {
  check_dim(x, box.dim(), "project_box");
  return clamp(x, box);
}

Vector project_halfspace(const Vector& x, const Halfspace& h) {
  check_dim(x, h.dim(), "project_halfspace");
  const double excess = h.violation(x);
  if (excess <= 0.0) return x;
  return x - (excess / h.normal().squaredNorm()) * h.normal();
}

Vector project_hyperplane(const Vector& x, const Hyperplane& h) {
  check_dim(x, h.dim(), "project_hyperplane");
  const double residual = h.residual(x);
  return x - (residual / h.normal().squaredNorm()) * h.normal();
}

Vector project_box_halfspace(const Vector& x, const Box& box, const Halfspace& h,
                             const ProjectionParams& params) {
  check_dim(x, box.dim(), "project_box_halfspace");
  check_dim(x, h.dim(), "project_box_halfspace");

  Vector clamped = clamp(x, box);
  if (h.violation(clamped) <= 0.0) return clamped;

  if (min_over_box(h.normal(), box) > h.offset()) {
    throw std::runtime_error("project_box_halfspace: box and halfspace do not intersect");
  }

  const Vector& a = h.normal();
  const double b = h.offset();
  auto constraint_value = [&](double t) { return a.dot(clamp(x - t * a, box)); };

  // constraint_value is continuous and nonincreasing in t; the KKT multiplier
  // is a root of constraint_value(t) = b. Double t until feasible, then bisect.
  double hi = 1.0;
  int doublings = 0;
  while (constraint_value(hi) > b) {
    hi *= 2.0;
    if (++doublings > params.max_iter) {
      throw std::runtime_error("project_box_halfspace: multiplier bracketing failed");
    }
  }

  double lo = 0.0;
  for (int iter = 0; iter < params.max_iter; ++iter) {
    const double mid = 0.5 * (lo + hi);
    const double value = constraint_value(mid);
    if (std::abs(value - b) <= params.tol) {
      return clamp(x - mid * a, box);
    }
    if (value > b) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  throw std::runtime_error("project_box_halfspace: bisection did not converge");
}

Vector project_polyhedron(const Vector& x, const Polyhedron& poly,
                          const ProjectionParams& params) {
  Eigen::Index n = x.size();
  for (const auto& h : poly.inequalities) check_dim(x, h.dim(), "project_polyhedron");
  for (const auto& e : poly.equalities) check_dim(x, e.dim(), "project_polyhedron");
  if (poly.bounds) check_dim(x, poly.bounds->dim(), "project_polyhedron");

  const std::size_t num_sets =
      poly.inequalities.size() + poly.equalities.size() + (poly.bounds ? 1 : 0);
  if (num_sets == 0) {
    throw std::invalid_argument("project_polyhedron: polyhedron has no members");
  }

  // Dykstra's scheme: each set keeps a correction that is re-added before its
  // projection, which makes the limit the exact Euclidean projection rather
  // than just some point of the intersection. The iterate alone is not a valid
  // convergence witness: it can sit on a vertex for many cycles while the
  // corrections still drift, so both must settle before stopping.
  std::vector<Vector> corrections(num_sets, Vector::Zero(n));
  Vector current = x;

  for (int cycle = 0; cycle < params.max_iter; ++cycle) {
    const Vector cycle_start = current;
    double correction_drift = 0.0;
    std::size_t k = 0;
    const auto apply = [&](const Vector& projected, const Vector& shifted) {
      current = projected;
      correction_drift =
          std::max(correction_drift, (shifted - current - corrections[k]).norm());
      corrections[k] = shifted - current;
      ++k;
    };
    for (const auto& h : poly.inequalities) {
      const Vector shifted = current + corrections[k];
      apply(project_halfspace(shifted, h), shifted);
    }
    for (const auto& e : poly.equalities) {
      const Vector shifted = current + corrections[k];
      apply(project_hyperplane(shifted, e), shifted);
    }
    if (poly.bounds) {
      const Vector shifted = current + corrections[k];
      apply(clamp(shifted, *poly.bounds), shifted);
    }
    if ((current - cycle_start).norm() <= params.tol && correction_drift <= params.tol) {
      return current;
    }
  }
  throw std::runtime_error(
      "project_polyhedron: Dykstra iteration did not converge (empty or "
      "ill-conditioned intersection?)");
}

Vector project(const Vector& x, const FeasibleSet& set, const ProjectionParams& params) {
  check_dim(x, set.dim(), "project");
  struct Visitor {
    const Vector& x;
    const ProjectionParams& params;
    Vector operator()(const Box& b) const { return project_box(x, b); }
    Vector operator()(const BoxHalfspace& bh) const {
      return project_box_halfspace(x, bh.box, bh.halfspace, params);
    }
    Vector operator()(const Polyhedron& p) const {
      return project_polyhedron(x, p, params);
    }
  };
  return std::visit(Visitor{x, params}, set.variant());
}

}  // namespace nsopt
