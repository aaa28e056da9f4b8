#pragma once

#include <array>
#include <vector>

#include "gendrv/errors.hpp"

namespace gendrv {

// a*x^3 + b*x^2 + c*x + d
struct Cubic {
  double a = 0, b = 0, c = 0, d = 0;
};

// t^3 + p*t + q, reached from a Cubic by x = t - shift, shift = b/(3a).
struct DepressedCubic {
  double p = 0, q = 0;
  double shift = 0;
};

enum class DiscriminantCase { Positive, Zero, Negative };

const char* to_string(DiscriminantCase c) noexcept;

// Real roots in ascending order with aligned multiplicities (summing to 3
// when all roots are real, 1 otherwise).
struct CubicRoots {
  std::vector<double> roots;
  std::vector<int> multiplicities;
  DiscriminantCase discriminant_case = DiscriminantCase::Positive;
  double discriminant = 0;
};

// Throws DegenerateCubic when |a| <= 1e-12 * max(|a|,|b|,|c|,|d|).
DepressedCubic depress(const Cubic& c);

// (q/2)^2 + (p/3)^3
double discriminant(const DepressedCubic& dc) noexcept;

// Closed-form real roots of t^3 + p*t + q. The discriminant is treated as
// zero when |disc| <= 1e-12 * (1 + (q/2)^2 + |p/3|^3). Each root gets one
// Newton step, kept only if it reduces the residual.
CubicRoots solve_depressed(const DepressedCubic& dc);

// depress + solve + shift back. Throws DegenerateCubic.
CubicRoots solve_cubic(const Cubic& c);

// Root minimizing |root - x_ref|; ties go to the smaller root. Throws
// Error when roots is empty.
double closest_real_root(const CubicRoots& r, double x_ref);

}  // namespace gendrv
