#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <nsopt/core.hpp>
#include <nsopt/ralg.hpp>

#include <Eigen/SVD>

#include <cmath>
#include <limits>
#include <vector>

using namespace nsopt;

namespace {

Vector vec(std::initializer_list<double> values) {
  Vector v(static_cast<Eigen::Index>(values.size()));
  Eigen::Index i = 0;
  for (double x : values) v[i++] = x;
  return v;
}

ObjectiveOracle shifted_quadratic(Vector center) {
  return {[center](const Vector& x) { return (x - center).squaredNorm(); },
          [center](const Vector& x) { return Vector(2.0 * (x - center)); }};
}

// sum_i |x_i - 1| with the sign(0) := 0 convention.
ObjectiveOracle ones_l1(int) {
  return {[](const Vector& x) { return (x.array() - 1.0).abs().sum(); },
          [](const Vector& x) {
            Vector g(x.size());
            for (Eigen::Index i = 0; i < x.size(); ++i) {
              const double r = x[i] - 1.0;
              g[i] = r > 0 ? 1.0 : (r < 0 ? -1.0 : 0.0);
            }
            return g;
          }};
}

}  // namespace

TEST_CASE("parameter and oracle validation") {
  ObjectiveOracle ok = shifted_quadratic(Vector::Zero(2));
  RAlgParams bad;
  bad.h0 = 0.0;
  CHECK_THROWS_AS(minimize(ok, Vector::Ones(2), bad), std::invalid_argument);
  bad = {};
  bad.alpha = 0.5;
  CHECK_THROWS_AS(minimize(ok, Vector::Ones(2), bad), std::invalid_argument);
  bad = {};
  bad.maxitn = 0;
  CHECK_THROWS_AS(minimize(ok, Vector::Ones(2), bad), std::invalid_argument);

  ObjectiveOracle value_only{[](const Vector&) { return 0.0; }, {}};
  CHECK_THROWS_AS(minimize(value_only, Vector::Ones(2), {}), std::invalid_argument);
  Vector bad_start = vec({1.0, std::numeric_limits<double>::quiet_NaN()});
  CHECK_THROWS_AS(minimize(ok, bad_start, {}), std::invalid_argument);
}

TEST_CASE("one iteration on a quadratic dilates the step matrix along the move") {
  // From (1, 0) with h0 = 1.5 the first direction search brackets the
  // 1-D minimum and the secant refinement lands on it exactly, after which
  // the dilation contracts the e1 direction by 1/alpha.
  RAlgParams params;
  params.h0 = 1.5;
  RAlgState state;
  SolveReport report = minimize(shifted_quadratic(Vector::Zero(2)), vec({1, 0}), params, &state);

  CHECK(report.termination == Termination::SubgradTolerance);
  CHECK(report.itn == 1);
  CHECK(report.x_final.norm() <= 1e-9);
  CHECK(report.f_final <= 1e-18);

  Eigen::JacobiSVD<Matrix> svd(state.B);
  CHECK(svd.singularValues()[0] == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(svd.singularValues()[1] == doctest::Approx(0.25).epsilon(1e-9));
}

TEST_CASE("alpha = 1 disables dilation entirely") {
  RAlgParams params;
  params.alpha = 1.0;
  params.maxitn = 25;
  RAlgState state;
  minimize(shifted_quadratic(vec({2, -1, 0.5})), Vector::Zero(3), params, &state);
  CHECK((state.B - Matrix::Identity(3, 3)).norm() == 0.0);
}

TEST_CASE("the best value never increases along the trace") {
  std::vector<double> history;
  RAlgParams params;
  params.trace = [&](int, double f_best, double, double) { history.push_back(f_best); };
  minimize(ones_l1(10), Vector::Zero(10), params);
  REQUIRE(history.size() > 1);
  for (size_t i = 1; i < history.size(); ++i) CHECK(history[i] <= history[i - 1]);
}

TEST_CASE("smooth quadratic converges to the minimizer") {
  Vector center = vec({1, -2, 3, 0.5, -1});
  SolveReport report = minimize(shifted_quadratic(center), Vector::Zero(5), {});
  CHECK((report.x_final - center).norm() <= 1e-6);
  CHECK(report.oracle_calls >= report.itn);
  CHECK(report.time_sec >= 0.0);
}

TEST_CASE("nonsmooth separable objective reaches its minimum from far away") {
  SolveReport report = minimize(ones_l1(10), Vector::Zero(10), {});
  CHECK(report.f_final <= 1e-8);
  CHECK((report.x_final - Vector::Ones(10)).cwiseAbs().maxCoeff() <= 1e-6);
}

TEST_CASE("disabling refinement still solves the nonsmooth problem") {
  RAlgParams params;
  params.refine = false;
  SolveReport report = minimize(ones_l1(10), Vector::Zero(10), params);
  CHECK(report.f_final <= 1e-6);
}

TEST_CASE("a poisoned oracle reports failure and keeps the start point") {
  ObjectiveOracle bad{
      [](const Vector&) { return std::numeric_limits<double>::quiet_NaN(); },
      [](const Vector& x) { return Vector(Vector::Zero(x.size())); }};
  SolveReport report = minimize(bad, vec({3, 4}), {});
  CHECK(report.termination == Termination::OracleFailure);
  CHECK(report.x_final.isApprox(vec({3, 4})));
  CHECK(std::isnan(report.f_final));
  CHECK_FALSE(report.message.empty());
}

TEST_CASE("a zero subgradient at the start stops immediately") {
  // sign(0) = 0 at the unconstrained optimum: the solver must not divide by
  // a zero direction norm.
  SolveReport report = minimize(ones_l1(4), Vector::Ones(4), {});
  CHECK(report.termination == Termination::SubgradTolerance);
  CHECK(report.itn == 0);
  CHECK(report.f_final == 0.0);
}

TEST_CASE("state output mirrors the report") {
  RAlgState state;
  SolveReport report = minimize(shifted_quadratic(Vector::Ones(3)), Vector::Zero(3), {}, &state);
  CHECK(state.x_best.isApprox(report.x_final));
  CHECK(state.f_best == report.f_final);
  CHECK(state.itn == report.itn);
  CHECK(state.B.rows() == 3);
  CHECK(state.B.cols() == 3);
  CHECK(state.h > 0.0);
}

TEST_CASE("iteration cap is honored") {
  // Anisotropic quadratic so no single ray passes through the minimizer and
  // the run cannot finish within the cap.
  Vector scale = vec({1, 3, 9});
  ObjectiveOracle oracle{
      [scale](const Vector& x) { return (scale.array() * (x.array() - 1).square()).sum(); },
      [scale](const Vector& x) {
        return Vector(2.0 * scale.array() * (x.array() - 1));
      }};
  RAlgParams params;
  params.maxitn = 3;
  params.epsx = 1e-300;  // keep the step test from firing first
  SolveReport report = minimize(oracle, Vector::Zero(3), params);
  CHECK(report.termination == Termination::MaxIterations);
  CHECK(report.itn == 3);
}
