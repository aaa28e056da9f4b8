#include "gendrv/derivator.hpp"

#include <cmath>
#include <limits>
#include <random>

#include <doctest.h>

#include "gendrv/errors.hpp"
#include "test_support.hpp"

using namespace gendrv;
using testsupport::poly_target;
using testsupport::uniform;

namespace {

TargetFunction sine_target() {
  return TargetFunction(
      [](double x) { return std::sin(x); },
      [](double x) {
        return DerivTower{std::sin(x), std::cos(x), -std::sin(x),
                          -std::cos(x)};
      });
}

TargetFunction exp_target() {
  return TargetFunction(
      [](double x) { return std::exp(x); },
      [](double x) {
        double e = std::exp(x);
        return DerivTower{e, e, e, e};
      });
}

std::vector<double> random_poly(std::mt19937& rng, int degree) {
  std::vector<double> c(static_cast<std::size_t>(degree) + 1);
  for (double& v : c) v = uniform(rng, -5, 5);
  if (std::abs(c.back()) < 0.1) c.back() = c.back() < 0 ? -0.5 : 0.5;
  return c;
}

}  // namespace

TEST_CASE("default spacing scales with the anchor") {
  CHECK(default_fd_delta(0) == doctest::Approx(1e-6));
  CHECK(default_fd_delta(0.5) == doctest::Approx(1e-6));
  CHECK(default_fd_delta(-5) == doctest::Approx(5e-6));
  CHECK(default_fd_delta(2e3) == doctest::Approx(2e-3));
}

TEST_CASE("degree-1 fit is the secant line") {
  TargetFunction f = poly_target({0, 0, 1});  // x^2
  DerivatorCoefficients c = fd_coefficients(f, 1.0, 0.5, 1);
  REQUIRE(c.coeffs.size() == 2);
  CHECK(c.coeffs[1] == doctest::Approx(2.5).epsilon(1e-14));
  CHECK(c.coeffs[0] == doctest::Approx(-1.5).epsilon(1e-14));
  CHECK(c.anchor == 1.0);
  CHECK(c.degree == 1);
}

TEST_CASE("degree-2 fit reproduces a quadratic exactly") {
  TargetFunction f = poly_target({1, 3, 2});  // 2x^2+3x+1
  for (double x : {-2.0, 0.0, 1.3}) {
    for (double delta : {0.25, 1.0}) {
      DerivatorCoefficients c = fd_coefficients(f, x, delta, 2);
      CHECK(c.coeffs[0] == doctest::Approx(1).epsilon(1e-11));
      CHECK(c.coeffs[1] == doctest::Approx(3).epsilon(1e-11));
      CHECK(c.coeffs[2] == doctest::Approx(2).epsilon(1e-11));
    }
  }
}

TEST_CASE("degree-2 fit of x^4 near x=1 approaches the osculating parabola") {
  TargetFunction f = poly_target({0, 0, 0, 0, 1});
  DerivatorCoefficients c = fd_coefficients(f, 1.0, 1e-4, 2);

  // Independent route: Cramer's rule on the raw 3x3 system in t^m.
  double t0 = 1.0, t1 = 1.0 + 1e-4, t2 = 1.0 + 2e-4;
  auto y = [&](double t) { return f(t); };
  auto det3 = [](double a11, double a12, double a13, double a21, double a22,
                 double a23, double a31, double a32, double a33) {
    return a11 * (a22 * a33 - a23 * a32) - a12 * (a21 * a33 - a23 * a31) +
           a13 * (a21 * a32 - a22 * a31);
  };
  double d = det3(1, t0, t0 * t0, 1, t1, t1 * t1, 1, t2, t2 * t2);
  double a0 = det3(y(t0), t0, t0 * t0, y(t1), t1, t1 * t1, y(t2), t2, t2 * t2) / d;
  double a1 = det3(1, y(t0), t0 * t0, 1, y(t1), t1 * t1, 1, y(t2), t2 * t2) / d;
  double a2 = det3(1, t0, y(t0), 1, t1, y(t1), 1, t2, y(t2)) / d;

  CHECK(c.coeffs[0] == doctest::Approx(a0).epsilon(1e-2));
  CHECK(c.coeffs[1] == doctest::Approx(a1).epsilon(1e-2));
  CHECK(c.coeffs[2] == doctest::Approx(a2).epsilon(1e-2));

  // Taylor limit of x^4 about 1: 6x^2 - 8x + 3.
  CHECK(c.coeffs[0] == doctest::Approx(3).epsilon(1e-2));
  CHECK(c.coeffs[1] == doctest::Approx(-8).epsilon(1e-2));
  CHECK(c.coeffs[2] == doctest::Approx(6).epsilon(1e-2));
}

TEST_CASE("analytic degree-1 fit is the tangent line") {
  TargetFunction f = poly_target({0, 0, 1});
  DerivatorCoefficients c = analytic_coefficients(f, 1.0, 1);
  CHECK(c.coeffs[0] == doctest::Approx(-1).epsilon(1e-14));
  CHECK(c.coeffs[1] == doctest::Approx(2).epsilon(1e-14));
  CHECK(evaluate_derivator(c, 1.0) == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("analytic degree-3 fit reproduces a cubic") {
  TargetFunction f = poly_target({-5, -2, 0, 1});  // x^3 - 2x - 5
  for (double x : {-1.7, 0.0, 2.4}) {
    DerivatorCoefficients c = analytic_coefficients(f, x, 3);
    CHECK(c.coeffs[0] == doctest::Approx(-5).epsilon(1e-12));
    CHECK(c.coeffs[1] == doctest::Approx(-2).epsilon(1e-12));
    CHECK(c.coeffs[2] == doctest::Approx(0).scale(1).epsilon(1e-12));
    CHECK(c.coeffs[3] == doctest::Approx(1).epsilon(1e-12));
  }
}

TEST_CASE("analytic degree-2 fit of x^4 is its second-order Taylor polynomial") {
  TargetFunction f = poly_target({0, 0, 0, 0, 1});
  DerivatorCoefficients c = analytic_coefficients(f, 1.0, 2);
  CHECK(c.coeffs[0] == doctest::Approx(3).epsilon(1e-13));
  CHECK(c.coeffs[1] == doctest::Approx(-8).epsilon(1e-13));
  CHECK(c.coeffs[2] == doctest::Approx(6).epsilon(1e-13));
}

TEST_CASE("evaluate_derivator uses the power basis") {
  DerivatorCoefficients c{2, {1, -2, 3}, 0};
  CHECK(evaluate_derivator(c, 2.0) == doctest::Approx(9.0));
  CHECK(evaluate_derivator(c, 0.0) == doctest::Approx(1.0));
}

TEST_CASE("degree outside 1..3 is rejected") {
  TargetFunction f = poly_target({0, 1});
  CHECK_THROWS_AS(fd_coefficients(f, 0, 0.1, 0), InvalidDegree);
  CHECK_THROWS_AS(fd_coefficients(f, 0, 0.1, 4), InvalidDegree);
  CHECK_THROWS_AS(analytic_coefficients(f, 0, -1), InvalidDegree);
}

TEST_CASE("coincident sample nodes raise SingularSystem") {
  TargetFunction f = poly_target({0, 1});
  CHECK_THROWS_AS(fd_coefficients(f, 1.0, 0.0, 2), SingularSystem);
  CHECK_THROWS_AS(fd_coefficients(f, 1.0, 1e-20, 1), SingularSystem);
  CHECK_THROWS_AS(
      fd_coefficients(f, 0.0, std::numeric_limits<double>::quiet_NaN(), 1),
      SingularSystem);
}

TEST_CASE("analytic backend without a tower raises MissingTower") {
  TargetFunction f([](double x) { return x * x; });
  CHECK(!f.has_tower());
  CHECK_THROWS_AS(analytic_coefficients(f, 1.0, 2), MissingTower);
}

TEST_CASE("non-finite samples raise DomainError") {
  TargetFunction inf_f(
      [](double) { return std::numeric_limits<double>::infinity(); });
  CHECK_THROWS_AS(fd_coefficients(inf_f, 0.0, 0.1, 1), DomainError);
  TargetFunction nan_f(
      [](double) { return std::numeric_limits<double>::quiet_NaN(); });
  CHECK_THROWS_AS(fd_coefficients(nan_f, 0.0, 0.1, 2), DomainError);
}

TEST_CASE("interpolation invariant holds across the spacing range") {
  std::mt19937 rng(20260819);
  for (int trial = 0; trial < 300; ++trial) {
    int degree = 1 + static_cast<int>(rng() % 3);
    std::vector<double> coeffs = random_poly(rng, 3);
    TargetFunction f = poly_target(coeffs);
    double x = uniform(rng, -3, 3);
    double delta = std::pow(10.0, uniform(rng, -6, 0));
    DerivatorCoefficients c = fd_coefficients(f, x, delta, degree);
    for (int j = 0; j <= degree; ++j) {
      double node = x + j * delta;
      double want = f(node);
      double got = evaluate_derivator(c, node);
      CHECK(std::abs(got - want) <=
            1e-8 * std::max(1.0, std::abs(want)));
    }
  }
}

TEST_CASE("degree-k fit reproduces degree-k polynomials coefficientwise") {
  std::mt19937 rng(777001);
  for (int trial = 0; trial < 300; ++trial) {
    int degree = 1 + static_cast<int>(rng() % 3);
    std::vector<double> coeffs = random_poly(rng, degree);
    TargetFunction f = poly_target(coeffs);
    double x = uniform(rng, -3, 3);
    double delta = uniform(rng, 0.05, 1.0);
    DerivatorCoefficients c = fd_coefficients(f, x, delta, degree);
    double scale = 1.0;
    for (double v : coeffs) scale = std::max(scale, std::abs(v));
    for (int i = 0; i <= degree; ++i)
      CHECK(std::abs(c.coeffs[i] - coeffs[i]) <= 1e-9 * (1 + scale));
  }
}

TEST_CASE("finite-difference coefficients approach the analytic limit") {
  struct Case {
    TargetFunction f;
    double x;
  };
  Case cases[] = {{sine_target(), 0.3},
                  {exp_target(), 0.5},
                  {poly_target({0, 0, 0, 0, 1}), 1.2}};
  for (const Case& tc : cases) {
    DerivatorCoefficients exact = analytic_coefficients(tc.f, tc.x, 3);
    double err[3];
    double deltas[3] = {1e-1, 1e-2, 1e-3};
    for (int d = 0; d < 3; ++d) {
      DerivatorCoefficients fd = fd_coefficients(tc.f, tc.x, deltas[d], 3);
      double worst = 0;
      for (int i = 0; i <= 3; ++i)
        worst = std::max(worst, std::abs(fd.coeffs[i] - exact.coeffs[i]));
      err[d] = worst;
    }
    CHECK(err[1] <= 1.1 * err[0]);
    CHECK(err[2] <= 1.1 * err[1]);
  }
}

TEST_CASE("fit touches the function to contact order k") {
  TargetFunction f = exp_target();
  const double x = 0.3;
  const double h = 1e-3;
  for (int degree = 1; degree <= 3; ++degree) {
    DerivatorCoefficients c = analytic_coefficients(f, x, degree);
    auto err = [&](double step) {
      return std::abs(evaluate_derivator(c, x + step) - f(x + step));
    };
    double e1 = err(h);
    double e2 = err(h / 2);
    if (e2 < 1e-13) continue;  // below the rounding floor, ratio meaningless
    double ideal = std::pow(2.0, degree + 1);
    CHECK(e1 / e2 >= ideal / 1.25);
    CHECK(e1 / e2 <= ideal * 1.25);
  }
}
