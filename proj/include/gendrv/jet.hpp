#pragma once

#include <cmath>

#include "gendrv/errors.hpp"

namespace gendrv {

// Value and first three derivatives propagated together (truncated Taylor
// arithmetic). Fields are derivative values, not series coefficients.
struct Jet3 {
  double v = 0;
  double d1 = 0;
  double d2 = 0;
  double d3 = 0;
};

constexpr Jet3 jet_constant(double c) { return {c, 0, 0, 0}; }
constexpr Jet3 jet_variable(double x) { return {x, 1, 0, 0}; }

constexpr Jet3 operator+(const Jet3& a, const Jet3& b) {
  return {a.v + b.v, a.d1 + b.d1, a.d2 + b.d2, a.d3 + b.d3};
}

constexpr Jet3 operator-(const Jet3& a, const Jet3& b) {
  return {a.v - b.v, a.d1 - b.d1, a.d2 - b.d2, a.d3 - b.d3};
}

constexpr Jet3 operator-(const Jet3& a) { return {-a.v, -a.d1, -a.d2, -a.d3}; }

// Leibniz rule through third order:
// (fg)''' = f'''g + 3f''g' + 3f'g'' + fg'''
constexpr Jet3 operator*(const Jet3& a, const Jet3& b) {
  return {a.v * b.v,
          a.d1 * b.v + a.v * b.d1,
          a.d2 * b.v + 2 * a.d1 * b.d1 + a.v * b.d2,
          a.d3 * b.v + 3 * a.d2 * b.d1 + 3 * a.d1 * b.d2 + a.v * b.d3};
}

// Quotient q = a/b found by peeling derivatives off a = q*b.
inline Jet3 operator/(const Jet3& a, const Jet3& b) {
  if (b.v == 0) throw DomainError("division by zero");
  Jet3 q;
  q.v = a.v / b.v;
  q.d1 = (a.d1 - q.v * b.d1) / b.v;
  q.d2 = (a.d2 - q.v * b.d2 - 2 * q.d1 * b.d1) / b.v;
  q.d3 = (a.d3 - q.v * b.d3 - 3 * q.d1 * b.d2 - 3 * q.d2 * b.d1) / b.v;
  return q;
}

// Chain rule through third order for outer tower f0..f3 evaluated at u.v:
// (f∘u)''' = f'''u'^3 + 3f''u'u'' + f'u'''
constexpr Jet3 jet_compose(double f0, double f1, double f2, double f3,
                           const Jet3& u) {
  return {f0,
          f1 * u.d1,
          f2 * u.d1 * u.d1 + f1 * u.d2,
          f3 * u.d1 * u.d1 * u.d1 + 3 * f2 * u.d1 * u.d2 + f1 * u.d3};
}

inline Jet3 jet_sin(const Jet3& u) {
  double s = std::sin(u.v), c = std::cos(u.v);
  return jet_compose(s, c, -s, -c, u);
}

inline Jet3 jet_cos(const Jet3& u) {
  double s = std::sin(u.v), c = std::cos(u.v);
  return jet_compose(c, -s, -c, s, u);
}

inline Jet3 jet_exp(const Jet3& u) {
  double e = std::exp(u.v);
  return jet_compose(e, e, e, e, u);
}

inline Jet3 jet_log(const Jet3& u) {
  if (u.v <= 0) throw DomainError("log of a non-positive value");
  double inv = 1.0 / u.v;
  return jet_compose(std::log(u.v), inv, -inv * inv, 2 * inv * inv * inv, u);
}

inline Jet3 jet_sqrt(const Jet3& u) {
  if (u.v < 0) throw DomainError("sqrt of a negative value");
  if (u.v == 0) throw DomainError("sqrt derivative singular at zero");
  double r = std::sqrt(u.v);
  double f1 = 0.5 / r;
  double f2 = -0.25 / (r * u.v);
  double f3 = 0.375 / (r * u.v * u.v);
  return jet_compose(r, f1, f2, f3, u);
}

// Integer powers by binary exponentiation. The same multiplication order is
// used for plain doubles in the evaluator so both paths round identically.
inline Jet3 jet_pow(const Jet3& base, int e) {
  if (e == 0) return jet_constant(1.0);
  bool neg = e < 0;
  unsigned n = neg ? 0u - static_cast<unsigned>(e) : static_cast<unsigned>(e);
  Jet3 acc = jet_constant(1.0);
  Jet3 sq = base;
  while (n > 0) {
    if (n & 1u) acc = acc * sq;
    n >>= 1u;
    if (n > 0) sq = sq * sq;
  }
  if (neg) {
    if (base.v == 0) throw DomainError("zero raised to a negative power");
    return jet_constant(1.0) / acc;
  }
  return acc;
}

}  // namespace gendrv
