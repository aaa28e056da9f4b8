#include "gendrv/cubic.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include <doctest.h>

#include "test_support.hpp"

using namespace gendrv;
using testsupport::uniform;

namespace {

double cubic_value(const Cubic& c, double x) {
  return ((c.a * x + c.b) * x + c.c) * x + c.d;
}

double cubic_scale(const Cubic& c, double x) {
  double ax = std::abs(x);
  return std::abs(c.a) * ax * ax * ax + std::abs(c.b) * ax * ax +
         std::abs(c.c) * ax + std::abs(c.d) + 1;
}

// Oracle: bisection for one real root of the monic cubic, synthetic division,
// then the quadratic formula for the remaining pair.
std::vector<double> oracle_roots(const Cubic& c) {
  double b = c.b / c.a, cc = c.c / c.a, d = c.d / c.a;
  auto f = [&](double x) { return ((x + b) * x + cc) * x + d; };
  double bound = 1 + std::max({std::abs(b), std::abs(cc), std::abs(d)});
  double lo = -bound, hi = bound;
  while (f(lo) > 0) lo *= 2;
  while (f(hi) < 0) hi *= 2;
  double r = testsupport::bisect(f, lo, hi);
  // deflate: x^3+bx^2+cx+d = (x-r)(x^2 + (b+r)x + (c + r(b+r)))
  double p1 = b + r;
  double p0 = cc + r * p1;
  std::vector<double> roots{r};
  double disc = p1 * p1 - 4 * p0;
  if (disc >= 0) {
    double s = std::sqrt(disc);
    roots.push_back((-p1 + s) / 2);
    roots.push_back((-p1 - s) / 2);
  }
  std::sort(roots.begin(), roots.end());
  return roots;
}

}  // namespace

TEST_CASE("depressing x^3-6x^2+11x-6 gives t^3 - t") {
  DepressedCubic dc = depress({1, -6, 11, -6});
  CHECK(dc.shift == doctest::Approx(-2));
  CHECK(dc.p == doctest::Approx(-1));
  CHECK(dc.q == doctest::Approx(0).scale(1).epsilon(1e-14));
}

TEST_CASE("discriminant sign classifies the root structure") {
  CHECK(discriminant({-1, 0, 0}) < 0);               // t^3 - t: three roots
  CHECK(discriminant({0, -8, 0}) > 0);               // t^3 - 8: one root
  CHECK(discriminant({-3, 2, 0}) ==
        doctest::Approx(0).scale(1).epsilon(1e-14));  // (t-1)^2(t+2)
}

TEST_CASE("depressed solve: three distinct roots") {
  CubicRoots r = solve_depressed({-1, 0, 0});
  CHECK(r.discriminant_case == DiscriminantCase::Negative);
  REQUIRE(r.roots.size() == 3);
  CHECK(r.roots[0] == doctest::Approx(-1).epsilon(1e-12));
  CHECK(r.roots[1] == doctest::Approx(0).scale(1).epsilon(1e-12));
  CHECK(r.roots[2] == doctest::Approx(1).epsilon(1e-12));
  CHECK(r.multiplicities == std::vector<int>{1, 1, 1});
}

TEST_CASE("depressed solve: single real root") {
  CubicRoots r = solve_depressed({0, -8, 0});  // t^3 = 8
  CHECK(r.discriminant_case == DiscriminantCase::Positive);
  REQUIRE(r.roots.size() == 1);
  CHECK(r.roots[0] == doctest::Approx(2).epsilon(1e-12));
  CHECK(r.multiplicities == std::vector<int>{1});
}

TEST_CASE("depressed solve: double root pair") {
  // (t-1)^2 (t+2) = t^3 - 3t + 2
  CubicRoots r = solve_depressed({-3, 2, 0});
  CHECK(r.discriminant_case == DiscriminantCase::Zero);
  REQUIRE(r.roots.size() == 2);
  CHECK(r.roots[0] == doctest::Approx(-2).epsilon(1e-12));
  CHECK(r.roots[1] == doctest::Approx(1).epsilon(1e-12));
  CHECK(r.multiplicities == std::vector<int>{1, 2});
}

TEST_CASE("depressed solve: triple root at zero") {
  CubicRoots r = solve_depressed({0, 0, 0});
  CHECK(r.discriminant_case == DiscriminantCase::Zero);
  REQUIRE(r.roots.size() == 1);
  CHECK(r.roots[0] == 0);
  CHECK(r.multiplicities == std::vector<int>{3});
}

TEST_CASE("full solve recovers {1,2,3}") {
  CubicRoots r = solve_cubic({1, -6, 11, -6});
  REQUIRE(r.roots.size() == 3);
  CHECK(r.roots[0] == doctest::Approx(1).epsilon(1e-12));
  CHECK(r.roots[1] == doctest::Approx(2).epsilon(1e-12));
  CHECK(r.roots[2] == doctest::Approx(3).epsilon(1e-12));
}

TEST_CASE("full solve handles triple roots away from zero") {
  // (x-1)^3 = x^3 - 3x^2 + 3x - 1
  CubicRoots r = solve_cubic({1, -3, 3, -1});
  CHECK(r.discriminant_case == DiscriminantCase::Zero);
  double worst = 0;
  for (double root : r.roots) worst = std::max(worst, std::abs(root - 1));
  CHECK(worst <= 1e-5);  // triple roots are inherently ill-conditioned
  int msum = 0;
  for (int m : r.multiplicities) msum += m;
  CHECK(msum == 3);
}

TEST_CASE("degenerate leading coefficient is rejected") {
  CHECK_THROWS_AS(depress({0, 1, 1, 1}), DegenerateCubic);
  CHECK_THROWS_AS(solve_cubic({1e-15, 3, 2, 1}), DegenerateCubic);
  CHECK_THROWS_AS(solve_cubic({0, 0, 0, 0}), DegenerateCubic);
}

TEST_CASE("closest_real_root picks the nearest, ties to the smaller") {
  CubicRoots r;
  r.roots = {1, 3, 10};
  r.multiplicities = {1, 1, 1};
  CHECK(closest_real_root(r, 9.0) == 10);
  CHECK(closest_real_root(r, 1.4) == 1);
  CHECK(closest_real_root(r, 2.0) == 1);  // equidistant from 1 and 3
  CubicRoots empty;
  CHECK_THROWS_AS(closest_real_root(empty, 0.0), Error);
}

TEST_CASE("random cubics: roots match the oracle and Vieta identities") {
  std::mt19937 rng(424242);
  int seen_pos = 0, seen_neg = 0, seen_zero = 0;
  for (int trial = 0; trial < 400; ++trial) {
    Cubic c;
    double mag = uniform(rng, 0.5, 10);
    c.a = (rng() % 2 ? 1 : -1) * mag;
    c.b = uniform(rng, -10, 10);
    c.c = uniform(rng, -10, 10);
    c.d = uniform(rng, -10, 10);
    if (trial % 4 == 3) {
      // force a double root: a(x-r)^2(x-s)
      double r = uniform(rng, -5, 5), s = uniform(rng, -5, 5);
      c.b = c.a * -(2 * r + s);
      c.c = c.a * (r * r + 2 * r * s);
      c.d = c.a * -(r * r * s);
    }

    CubicRoots got = solve_cubic(c);
    switch (got.discriminant_case) {
      case DiscriminantCase::Positive: ++seen_pos; break;
      case DiscriminantCase::Negative: ++seen_neg; break;
      case DiscriminantCase::Zero: ++seen_zero; break;
    }

    for (double root : got.roots)
      CHECK(std::abs(cubic_value(c, root)) <= 1e-8 * cubic_scale(c, root));

    std::vector<double> want = oracle_roots(c);
    if (got.discriminant_case != DiscriminantCase::Zero) {
      REQUIRE(got.roots.size() == want.size());
      for (std::size_t i = 0; i < want.size(); ++i)
        CHECK(got.roots[i] ==
              doctest::Approx(want[i]).epsilon(1e-6).scale(1 + std::abs(want[i])));
    }

    if (got.roots.size() == 3) {
      double sum = got.roots[0] + got.roots[1] + got.roots[2];
      double prod = got.roots[0] * got.roots[1] * got.roots[2];
      CHECK(sum == doctest::Approx(-c.b / c.a)
                       .epsilon(1e-8)
                       .scale(1 + std::abs(c.b / c.a)));
      CHECK(prod == doctest::Approx(-c.d / c.a)
                        .epsilon(1e-8)
                        .scale(1 + std::abs(c.d / c.a)));
    }
  }
  CHECK(seen_pos > 0);
  CHECK(seen_neg > 0);
  CHECK(seen_zero > 0);
}
