#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <nsopt/core.hpp>

#include <limits>

using namespace nsopt;

namespace {

Vector vec(std::initializer_list<double> values) {
  Vector v(static_cast<Eigen::Index>(values.size()));
  Eigen::Index i = 0;
  for (double x : values) v[i++] = x;
  return v;
}

}  // namespace

TEST_CASE("all_finite flags nan and inf anywhere in the vector") {
  CHECK(all_finite(vec({0.0, -1.5, 3.0})));
  CHECK(all_finite(Vector{}));
  CHECK_FALSE(all_finite(vec({0.0, std::numeric_limits<double>::quiet_NaN()})));
  CHECK_FALSE(all_finite(vec({std::numeric_limits<double>::infinity(), 1.0})));
}

TEST_CASE("dot matches a hand computation and rejects mismatched sizes") {
  CHECK(dot(vec({1, 2, 3}), vec({4, -5, 6})) == doctest::Approx(12.0));
  CHECK_THROWS_AS(dot(vec({1, 2}), vec({1, 2, 3})), std::invalid_argument);
}

TEST_CASE("norm2 is the Euclidean norm") {
  CHECK(norm2(vec({3, 4})) == doctest::Approx(5.0));
  CHECK(norm2(Vector::Zero(7)) == 0.0);
}

TEST_CASE("Box accessors, membership, midpoint and diagonal") {
  Box box(vec({0, -1}), vec({1, 3}));
  CHECK(box.dim() == 2);
  CHECK(box.contains(vec({0.5, 0.0})));
  CHECK(box.contains(vec({0, 3})));
  CHECK_FALSE(box.contains(vec({1.0001, 0})));
  CHECK(box.contains(vec({1.0001, 0}), 1e-3));
  CHECK(box.midpoint().isApprox(vec({0.5, 1.0})));
  CHECK(box.diagonal() == doctest::Approx(std::sqrt(1.0 + 16.0)));
}

TEST_CASE("Box rejects inverted or mismatched bounds") {
  CHECK_THROWS_AS(Box(vec({0, 0}), vec({1})), std::invalid_argument);
  CHECK_THROWS_AS(Box(vec({0, 2}), vec({1, 1})), std::invalid_argument);
}

TEST_CASE("Halfspace violation is signed and zero on the boundary") {
  Halfspace h(vec({1, 1}), 1.0);
  CHECK(h.violation(vec({0, 0})) == doctest::Approx(-1.0));
  CHECK(h.violation(vec({0.5, 0.5})) == doctest::Approx(0.0));
  CHECK(h.violation(vec({1, 1})) == doctest::Approx(1.0));
  CHECK_THROWS_AS(Halfspace(Vector::Zero(2), 1.0), std::invalid_argument);
}

TEST_CASE("Hyperplane residual is the signed affine value") {
  Hyperplane h(vec({2, 0}), 4.0);
  CHECK(h.residual(vec({2, 9})) == doctest::Approx(0.0));
  CHECK(h.residual(vec({0, 0})) == doctest::Approx(-4.0));
}

TEST_CASE("FeasibleSet factories validate dimensions") {
  Box box(Vector::Zero(2), Vector::Ones(2));
  CHECK_NOTHROW(FeasibleSet::box_only(box));
  CHECK_THROWS_AS(FeasibleSet::box_halfspace(box, Halfspace(vec({1, 1, 1}), 1.0)),
                  std::invalid_argument);
}

TEST_CASE("FeasibleSet construction rejects an empty intersection") {
  Box box(Vector::Zero(2), Vector::Ones(2));
  // sum x_i <= -1 excludes the whole unit box.
  CHECK_THROWS(FeasibleSet::box_halfspace(box, Halfspace(vec({1, 1}), -1.0)));
  CHECK_NOTHROW(FeasibleSet::box_halfspace(box, Halfspace(vec({1, 1}), 1.0)));
}

TEST_CASE("FeasibleSet reports the ambient dimension of its variant") {
  Polyhedron poly;
  poly.inequalities.push_back(Halfspace(vec({1, 0, 0}), 1.0));
  poly.bounds = Box(Vector::Zero(3), Vector::Ones(3));
  FeasibleSet set = FeasibleSet::polyhedron(poly);
  CHECK(set.dim() == 3);
  CHECK(std::holds_alternative<Polyhedron>(set.variant()));
}

TEST_CASE("termination labels are stable") {
  CHECK(to_string(Termination::StepTolerance) == "step_tolerance");
  CHECK(to_string(Termination::SubgradTolerance) == "subgrad_tolerance");
  CHECK(to_string(Termination::MaxIterations) == "max_iterations");
  CHECK(to_string(Termination::OracleFailure) == "oracle_failure");
}
