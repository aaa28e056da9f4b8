#include "gendrv/cubic.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace gendrv {

namespace {

double depressed_residual(double t, double p, double q) {
  return t * t * t + p * t + q;
}

// One Newton step, kept only when it strictly reduces the residual. Near
// double roots f and f' are both noise-dominated, so an unconditional step
// can fling the root away.
double polish(double t, double p, double q) {
  double f = depressed_residual(t, p, q);
  if (f == 0) return t;
  double fp = 3 * t * t + p;
  if (fp == 0 || !std::isfinite(fp)) return t;
  double t2 = t - f / fp;
  if (!std::isfinite(t2)) return t;
  double f2 = depressed_residual(t2, p, q);
  return std::abs(f2) < std::abs(f) ? t2 : t;
}

void sort_roots(CubicRoots& r) {
  std::vector<std::size_t> order(r.roots.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return r.roots[a] < r.roots[b];
  });
  std::vector<double> roots;
  std::vector<int> mult;
  for (std::size_t i : order) {
    roots.push_back(r.roots[i]);
    mult.push_back(r.multiplicities[i]);
  }
  r.roots = std::move(roots);
  r.multiplicities = std::move(mult);
}

}  // namespace

const char* to_string(DiscriminantCase c) noexcept {
  switch (c) {
    case DiscriminantCase::Positive: return "positive";
    case DiscriminantCase::Zero: return "zero";
    case DiscriminantCase::Negative: return "negative";
  }
  return "?";
}

DepressedCubic depress(const Cubic& c) {
  double scale =
      std::max({std::abs(c.a), std::abs(c.b), std::abs(c.c), std::abs(c.d)});
  if (std::abs(c.a) <= 1e-12 * scale)
    throw DegenerateCubic("leading cubic coefficient vanishes");
  DepressedCubic dc;
  dc.shift = c.b / (3 * c.a);
  dc.p = (3 * c.a * c.c - c.b * c.b) / (3 * c.a * c.a);
  dc.q = (2 * c.b * c.b * c.b - 9 * c.a * c.b * c.c + 27 * c.a * c.a * c.d) /
         (27 * c.a * c.a * c.a);
  return dc;
}

double discriminant(const DepressedCubic& dc) noexcept {
  double half_q = dc.q / 2;
  double third_p = dc.p / 3;
  return half_q * half_q + third_p * third_p * third_p;
}

CubicRoots solve_depressed(const DepressedCubic& dc) {
  const double p = dc.p;
  const double q = dc.q;
  CubicRoots out;
  out.discriminant = discriminant(dc);

  double half_q = q / 2;
  double third_p = p / 3;
  double zero_band =
      1e-12 * (1 + half_q * half_q + std::abs(third_p * third_p * third_p));

  if (std::abs(out.discriminant) <= zero_band) {
    out.discriminant_case = DiscriminantCase::Zero;
    double u = std::cbrt(-half_q);
    if (u == 0) {
      out.roots = {0.0};
      out.multiplicities = {3};
    } else {
      out.roots = {polish(2 * u, p, q), polish(-u, p, q)};
      out.multiplicities = {1, 2};
      if (out.roots[0] > out.roots[1]) {
        std::swap(out.roots[0], out.roots[1]);
        std::swap(out.multiplicities[0], out.multiplicities[1]);
      }
    }
    return out;
  }

  if (out.discriminant > 0) {
    out.discriminant_case = DiscriminantCase::Positive;
    double s = std::sqrt(out.discriminant);
    double t = std::cbrt(-half_q + s) + std::cbrt(-half_q - s);
    out.roots = {polish(t, p, q)};
    out.multiplicities = {1};
    return out;
  }

  // Three distinct real roots: p < 0 here, use the trigonometric form
  // t_k = 2*sqrt(-p/3)*cos(theta/3 - 2*pi*k/3), cos(theta) = (-q/2)/sqrt(-(p/3)^3).
  out.discriminant_case = DiscriminantCase::Negative;
  double amp = 2 * std::sqrt(-third_p);
  double arg = -half_q / std::sqrt(-(third_p * third_p * third_p));
  arg = std::clamp(arg, -1.0, 1.0);
  double theta = std::acos(arg);
  constexpr double two_thirds_pi = 2 * std::numbers::pi / 3;
  out.roots.resize(3);
  out.multiplicities = {1, 1, 1};
  for (int k = 0; k < 3; ++k)
    out.roots[k] = polish(amp * std::cos(theta / 3 - two_thirds_pi * k), p, q);
  sort_roots(out);
  return out;
}

CubicRoots solve_cubic(const Cubic& c) {
  DepressedCubic dc = depress(c);
  CubicRoots out = solve_depressed(dc);
  for (double& r : out.roots) r -= dc.shift;
  sort_roots(out);
  return out;
}

double closest_real_root(const CubicRoots& r, double x_ref) {
  if (r.roots.empty()) throw Error("no real roots to choose from");
  double best = r.roots.front();
  double best_d = std::abs(best - x_ref);
  for (double root : r.roots) {
    double d = std::abs(root - x_ref);
    if (d < best_d) {
      best = root;
      best_d = d;
    }
  }
  return best;
}

}  // namespace gendrv
