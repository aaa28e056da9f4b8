#pragma once

#include <vector>

#include "gendrv/target_function.hpp"

namespace gendrv {

// Power-basis coefficients of the degree-k interpolant fitted through the
// forward nodes x, x+delta, ..., x+k*delta. coeffs holds a0..a_degree; all
// entries are finite. anchor records the expansion point x.
struct DerivatorCoefficients {
  int degree = 1;
  std::vector<double> coeffs;
  double anchor = 0;
};

// Default sample spacing for the finite-difference backend: 1e-6*max(1,|x|).
double default_fd_delta(double x) noexcept;

// Fit the degree-k interpolant through (x + j*delta, f(x + j*delta)) for
// j = 0..degree. Throws InvalidDegree, SingularSystem (coincident nodes or
// unsolvable system), DomainError (non-finite sample values).
DerivatorCoefficients fd_coefficients(const TargetFunction& f, double x,
                                      double delta, int degree);

// Limit form of the interpolant as delta -> 0: the truncated Taylor
// polynomial of f about x, re-expanded in the power basis. Requires a
// derivative tower; throws MissingTower, InvalidDegree, DomainError.
DerivatorCoefficients analytic_coefficients(const TargetFunction& f, double x,
                                            int degree);

// Horner evaluation of the interpolant at t.
double evaluate_derivator(const DerivatorCoefficients& c, double t) noexcept;

}  // namespace gendrv
