#include "nsopt/core.hpp"

#include "nsopt/projections.hpp"

#include <cmath>
#include <utility>

namespace nsopt {

bool all_finite(const Vector& v) { return v.allFinite(); }

double dot(const Vector& x, const Vector& y) {
  if (x.size() != y.size()) {
    throw std::invalid_argument("dot: dimension mismatch (" + std::to_string(x.size()) +
                                " vs " + std::to_string(y.size()) + ")");
  }
  return x.dot(y);
}

double norm2(const Vector& x) { return x.norm(); }

Box::Box(Vector lower, Vector upper) : lower_(std::move(lower)), upper_(std::move(upper)) {
  if (lower_.size() != upper_.size()) {
    throw std::invalid_argument("Box: lower/upper dimension mismatch");
  }
  if (lower_.size() == 0) {
    throw std::invalid_argument("Box: dimension must be positive");
  }
  if (!all_finite(lower_) || !all_finite(upper_)) {
    throw std::invalid_argument("Box: bounds must be finite");
  }
  if ((lower_.array() > upper_.array()).any()) {
    throw std::invalid_argument("Box: requires lower_i <= upper_i for all i");
  }
}

bool Box::contains(const Vector& x, double tol) const {
  if (x.size() != dim()) return false;
  return (x.array() >= lower_.array() - tol).all() &&
         (x.array() <= upper_.array() + tol).all();
}

Halfspace::Halfspace(Vector normal, double offset)
    : normal_(std::move(normal)), offset_(offset) {
  if (normal_.size() == 0 || !all_finite(normal_) || !std::isfinite(offset_)) {
    throw std::invalid_argument("Halfspace: data must be finite and nonempty");
  }
  if (normal_.norm() == 0.0) {
    throw std::invalid_argument("Halfspace: normal must be nonzero");
  }
}

double Halfspace::violation(const Vector& x) const { return dot(normal_, x) - offset_; }

Hyperplane::Hyperplane(Vector normal, double offset)
    : normal_(std::move(normal)), offset_(offset) {
  if (normal_.size() == 0 || !all_finite(normal_) || !std::isfinite(offset_)) {
    throw std::invalid_argument("Hyperplane: data must be finite and nonempty");
  }
  if (normal_.norm() == 0.0) {
    throw std::invalid_argument("Hyperplane: normal must be nonzero");
  }
}

double Hyperplane::residual(const Vector& x) const { return dot(normal_, x) - offset_; }

namespace {

Eigen::Index common_dim(const FeasibleSet::Variant& v) {
  struct Visitor {
    Eigen::Index operator()(const Box& b) const { return b.dim(); }
    Eigen::Index operator()(const BoxHalfspace& bh) const {
      if (bh.box.dim() != bh.halfspace.dim()) {
        throw std::invalid_argument("FeasibleSet: box/halfspace dimension mismatch");
      }
      return bh.box.dim();
    }
    Eigen::Index operator()(const Polyhedron& p) const {
      Eigen::Index n = 0;
      if (p.bounds) n = p.bounds->dim();
      for (const auto& h : p.inequalities) {
        if (n == 0) n = h.dim();
        if (h.dim() != n) throw std::invalid_argument("FeasibleSet: member dimension mismatch");
      }
      for (const auto& e : p.equalities) {
        if (n == 0) n = e.dim();
        if (e.dim() != n) throw std::invalid_argument("FeasibleSet: member dimension mismatch");
      }
      if (n == 0) throw std::invalid_argument("FeasibleSet: polyhedron has no members");
      return n;
    }
  };
  return std::visit(Visitor{}, v);
}

// Nonemptiness probe: one projection attempt from the box midpoint (or the
// origin when no bounds are given). Projection throws on empty or
// ill-conditioned intersections, which fails construction.
void probe_nonempty(const FeasibleSet::Variant& v, Eigen::Index n) {
  Vector start = Vector::Zero(n);
  if (const auto* b = std::get_if<Box>(&v)) {
    start = b->midpoint();
  } else if (const auto* bh = std::get_if<BoxHalfspace>(&v)) {
    start = bh->box.midpoint();
  } else if (const auto* p = std::get_if<Polyhedron>(&v)) {
    if (p->bounds) start = p->bounds->midpoint();
  }

  struct Visitor {
    const Vector& x;
    void operator()(const Box& b) const { project_box(x, b); }
    void operator()(const BoxHalfspace& bh) const {
      project_box_halfspace(x, bh.box, bh.halfspace);
    }
    void operator()(const Polyhedron& p) const { project_polyhedron(x, p); }
  };
  try {
    std::visit(Visitor{start}, v);
  } catch (const std::runtime_error& e) {
    throw std::invalid_argument(std::string("FeasibleSet: nonemptiness probe failed: ") +
                                e.what());
  }
}

}  // namespace

FeasibleSet::FeasibleSet(Variant v) : variant_(std::move(v)) {
  dim_ = common_dim(variant_);
  probe_nonempty(variant_, dim_);
}

FeasibleSet FeasibleSet::box_only(Box box) { return FeasibleSet(Variant(std::move(box))); }

FeasibleSet FeasibleSet::box_halfspace(Box box, Halfspace halfspace) {
  return FeasibleSet(Variant(BoxHalfspace{std::move(box), std::move(halfspace)}));
}

FeasibleSet FeasibleSet::polyhedron(Polyhedron poly) {
  return FeasibleSet(Variant(std::move(poly)));
}

std::string to_string(Termination t) {
  switch (t) {
    case Termination::StepTolerance: return "step_tolerance";
    case Termination::SubgradTolerance: return "subgrad_tolerance";
    case Termination::MaxIterations: return "max_iterations";
    case Termination::OracleFailure: return "oracle_failure";
  }
  return "unknown";
}

}  // namespace nsopt
