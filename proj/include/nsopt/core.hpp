#pragma once

#include <Eigen/Core>

#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace nsopt {

/// Dense column vector, the universal numeric carrier. Dimension is the
/// runtime size; coordinates are expected to be finite wherever a contract
/// says so (oracle outputs, feasible-set data, solver iterates).
using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

/// Thrown when an objective or subgradient evaluation produces a non-finite
/// value, or when a function oracle cannot be evaluated at all.
class OracleError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

bool all_finite(const Vector& v);

/// Inner product. Throws std::invalid_argument on dimension mismatch.
double dot(const Vector& x, const Vector& y);

/// Euclidean norm.
double norm2(const Vector& x);

/// Axis-aligned box {x : lower_i <= x_i <= upper_i}.
class Box {
 public:
  Box(Vector lower, Vector upper);

  Eigen::Index dim() const { return lower_.size(); }
  const Vector& lower() const { return lower_; }
  const Vector& upper() const { return upper_; }

  bool contains(const Vector& x, double tol = 0.0) const;
  Vector midpoint() const { return 0.5 * (lower_ + upper_); }
  /// Length of the box diagonal, the customary initial solver step.
  double diagonal() const { return (upper_ - lower_).norm(); }

 private:
  Vector lower_;
  Vector upper_;
};

/// Halfspace {x : normal . x <= offset}.
class Halfspace {
 public:
  Halfspace(Vector normal, double offset);

  Eigen::Index dim() const { return normal_.size(); }
  const Vector& normal() const { return normal_; }
  double offset() const { return offset_; }

  /// normal . x - offset; nonpositive iff x satisfies the constraint.
  double violation(const Vector& x) const;

 private:
  Vector normal_;
  double offset_;
};

/// Hyperplane {x : normal . x = offset}.
class Hyperplane {
 public:
  Hyperplane(Vector normal, double offset);

  Eigen::Index dim() const { return normal_.size(); }
  const Vector& normal() const { return normal_; }
  double offset() const { return offset_; }

  double residual(const Vector& x) const;

 private:
  Vector normal_;
  double offset_;
};

/// Intersection of finitely many halfspaces and hyperplanes with optional
/// variable bounds.
struct Polyhedron {
  std::vector<Halfspace> inequalities;
  std::vector<Hyperplane> equalities;
  std::optional<Box> bounds;
};

struct BoxHalfspace {
  Box box;
  Halfspace halfspace;
};

/// Tagged description of the constraint set, driving projection dispatch.
/// Construction validates member dimensions and probes nonemptiness with a
/// single projection attempt; it throws if the intersection is empty or the
/// probe fails to converge.
class FeasibleSet {
 public:
  using Variant = std::variant<Box, BoxHalfspace, Polyhedron>;

  static FeasibleSet box_only(Box box);
  static FeasibleSet box_halfspace(Box box, Halfspace halfspace);
  static FeasibleSet polyhedron(Polyhedron poly);

  Eigen::Index dim() const { return dim_; }
  const Variant& variant() const { return variant_; }

 private:
  explicit FeasibleSet(Variant v);

  Variant variant_;
  Eigen::Index dim_ = 0;
};

/// Evaluation contract for an objective: value is mandatory, an analytic
/// subgradient is optional (finite-difference estimation fills the gap).
struct ObjectiveOracle {
  std::function<double(const Vector&)> value;
  std::function<Vector(const Vector&)> subgrad;

  bool has_subgrad() const { return static_cast<bool>(subgrad); }
};

enum class Termination {
  StepTolerance,
  SubgradTolerance,
  MaxIterations,
  OracleFailure,
};

std::string to_string(Termination t);

struct SolveReport {
  Vector x_final;
  double f_final = 0.0;
  int itn = 0;             // outer-iteration count
  long oracle_calls = 0;   // value/subgradient evaluation pairs
  double time_sec = 0.0;
  Termination termination = Termination::MaxIterations;
  /// ||x_final - proj(x_final)|| when a feasible set is attached to the run.
  std::optional<double> feasibility_gap;
  std::string message;
};

}  // namespace nsopt
