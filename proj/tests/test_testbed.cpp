#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <nsopt/core.hpp>
#include <nsopt/projections.hpp>
#include <nsopt/testbed.hpp>

#include <cmath>
#include <random>

using namespace nsopt;

namespace {

Vector vec(std::initializer_list<double> values) {
  Vector v(static_cast<Eigen::Index>(values.size()));
  Eigen::Index i = 0;
  for (double x : values) v[i++] = x;
  return v;
}

Vector random_vector(std::mt19937& rng, int n, double lo, double hi) {
  std::uniform_real_distribution<double> u(lo, hi);
  Vector v(n);
  for (int i = 0; i < n; ++i) v[i] = u(rng);
  return v;
}

}  // namespace

TEST_CASE("weights follow the 1.2 geometric ladder") {
  RavineProblem p = RavineProblem::boxed(5);
  CHECK(p.dim() == 5);
  CHECK(p.weights()[0] == doctest::Approx(1.0));
  CHECK(p.weights()[1] == doctest::Approx(1.2));
  CHECK(p.weights()[4] == doctest::Approx(std::pow(1.2, 4)));
}

TEST_CASE("objective value and subgradient match hand computations") {
  RavineProblem p = RavineProblem::boxed(3);
  Vector x = vec({0.5, 1.0, 2.0});
  // 1*0.5 + 1.2*0 + 1.44*1
  CHECK(ravine_value(p, x) == doctest::Approx(0.5 + 1.44));

  Vector g = ravine_subgrad(p, x);
  CHECK(g[0] == doctest::Approx(-1.0));
  CHECK(g[1] == 0.0);  // sign(0) = 0 at the kink
  CHECK(g[2] == doctest::Approx(1.44));
}

TEST_CASE("the subgradient inequality holds for random pairs") {
  RavineProblem p = RavineProblem::boxed(8);
  std::mt19937 rng(11);
  for (int k = 0; k < 1000; ++k) {
    Vector x = random_vector(rng, 8, -2, 3);
    Vector y = random_vector(rng, 8, -2, 3);
    const double fx = ravine_value(p, x);
    const double fy = ravine_value(p, y);
    const Vector g = ravine_subgrad(p, x);
    CHECK(fy >= fx + g.dot(y - x) - 1e-12);
  }
}

TEST_CASE("box optimum clamps the all-ones point") {
  SUBCASE("unit box contains it") {
    auto [x_star, f_star] = known_optimum(RavineProblem::boxed(4));
    CHECK(x_star.isApprox(Vector::Ones(4)));
    CHECK(f_star == 0.0);
  }
  SUBCASE("a shifted box forces clamping") {
    Box box(Vector::Constant(3, -2.0), Vector::Constant(3, 0.25));
    auto [x_star, f_star] = known_optimum(RavineProblem::boxed(box));
    CHECK(x_star.isApprox(Vector::Constant(3, 0.25)));
    // Every coordinate sits 0.75 short of 1.
    CHECK(f_star == doctest::Approx(0.75 * (1.0 + 1.2 + 1.44)));
  }
}

TEST_CASE("budget optimum spends on the heaviest coordinates") {
  SUBCASE("n = 10, b = 5: half the coordinates saturate") {
    RavineProblem p = RavineProblem::box_sum(10, 5.0);
    auto [x_star, f_star] = known_optimum(p);
    for (int i = 0; i < 5; ++i) CHECK(x_star[i] == 0.0);
    for (int i = 5; i < 10; ++i) CHECK(x_star[i] == 1.0);
    // Cost is the sum of the five smallest weights: (1.2^5 - 1) / 0.2.
    CHECK(f_star == doctest::Approx((std::pow(1.2, 5) - 1.0) / 0.2));
    CHECK(f_star == doctest::Approx(7.4416));
  }
  SUBCASE("n = 4, b = 2.5: one fractional coordinate") {
    auto [x_star, f_star] = known_optimum(RavineProblem::box_sum(4, 2.5));
    CHECK(x_star.isApprox(vec({0, 0.5, 1, 1})));
    CHECK(f_star == doctest::Approx(1.0 + 1.2 * 0.5));
  }
  SUBCASE("edge budgets") {
    auto [all_ones, f_zero] = known_optimum(RavineProblem::box_sum(3, 3.0));
    CHECK(all_ones.isApprox(Vector::Ones(3)));
    CHECK(f_zero == 0.0);
    auto [all_zeros, f_full] = known_optimum(RavineProblem::box_sum(3, 0.0));
    CHECK(all_zeros.norm() == 0.0);
    CHECK(f_full == doctest::Approx(1.0 + 1.2 + 1.44));
  }
  SUBCASE("the optimum exhausts the budget exactly") {
    RavineProblem p = RavineProblem::box_sum(7, 3.7);
    auto [x_star, f_star] = known_optimum(p);
    CHECK(x_star.sum() == doctest::Approx(3.7).epsilon(1e-12));
    CHECK(ravine_value(p, x_star) == doctest::Approx(f_star));
  }
}

TEST_CASE("no sampled feasible point beats the closed-form optimum") {
  std::mt19937 rng(99);

  SUBCASE("box") {
    RavineProblem p = RavineProblem::boxed(6);
    auto [x_star, f_star] = known_optimum(p);
    (void)x_star;
    for (int k = 0; k < 10000; ++k) {
      Vector x = random_vector(rng, 6, 0, 1);
      CHECK(ravine_value(p, x) >= f_star - 1e-12);
    }
  }
  SUBCASE("budget") {
    RavineProblem p = RavineProblem::box_sum(6, 2.75);
    auto [x_star, f_star] = known_optimum(p);
    (void)x_star;
    for (int k = 0; k < 10000; ++k) {
      // Feasible samples via projection of box samples onto the budget set.
      Vector x = project(random_vector(rng, 6, 0, 1), p.set());
      CHECK(ravine_value(p, x) >= f_star - 1e-9);
    }
  }
}

TEST_CASE("accuracy reports the max coordinate error and the value gap") {
  RavineProblem p = RavineProblem::boxed(3);
  Vector x = vec({1.0, 0.9, 1.05});
  AccuracyReport acc = accuracy(x, p);
  CHECK(acc.delta == doctest::Approx(0.1));
  CHECK(acc.epsilon == doctest::Approx(1.2 * 0.1 + 1.44 * 0.05));
}

TEST_CASE("problem construction rejects bad budgets and dimensions") {
  CHECK_THROWS_AS(RavineProblem::box_sum(4, -0.5), std::invalid_argument);
  CHECK_THROWS_AS(RavineProblem::box_sum(4, 4.5), std::invalid_argument);
  CHECK_THROWS_AS(RavineProblem::boxed(0), std::invalid_argument);
  CHECK_THROWS_AS(ravine_value(RavineProblem::boxed(3), Vector::Zero(2)),
                  std::invalid_argument);
}

TEST_CASE("budget problems carry their budget, box problems do not") {
  RavineProblem budget = RavineProblem::box_sum(5, 2.0);
  CHECK(budget.has_budget());
  CHECK(budget.budget() == 2.0);
  CHECK_FALSE(RavineProblem::boxed(5).has_budget());
}
