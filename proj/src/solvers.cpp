#include "gendrv/solvers.hpp"

#include <cmath>
#include <limits>
#include <optional>

#include "gendrv/cubic.hpp"

namespace gendrv {

namespace {

constexpr double kNan = std::numeric_limits<double>::quiet_NaN();
constexpr double kDivergenceBound = 1e12;

DerivatorCoefficients derivator_at(const TargetFunction& f, double x,
                                   int degree, const Backend& b) {
  if (b.kind == Backend::Kind::Analytic)
    return analytic_coefficients(f, x, degree);
  double delta = b.delta ? *b.delta : default_fd_delta(x);
  return fd_coefficients(f, x, delta, degree);
}

bool slope_vanishes(double slope, double y) {
  return std::abs(slope) < 1e-14 * (1 + std::abs(y));
}

// Real roots of A*t^2 + B*t + C via the stable quadratic formula. Empty when
// the discriminant is negative.
std::optional<std::pair<double, double>> quadratic_real_roots(double A,
                                                              double B,
                                                              double C) {
  double disc = B * B - 4 * A * C;
  if (disc < 0) return std::nullopt;
  double s = std::sqrt(disc);
  double qq = -0.5 * (B + std::copysign(s, B));
  if (qq == 0) {
    double r = -B / (2 * A);
    return std::make_pair(r, r);
  }
  return std::make_pair(qq / A, C / qq);
}

// Outcome of one update computation: either the next iterate or a terminal
// status.
struct StepResult {
  double x_next = 0;
  StepNote note = StepNote::None;
  std::optional<Status> fail;

  static StepResult advance(double x, StepNote n = StepNote::None) {
    return {x, n, std::nullopt};
  }
  static StepResult failure(Status s) { return {0, StepNote::None, s}; }
};

template <class StepFn>
SolverResult iterate(Method method, const TargetFunction& f, double x0,
                     const SolverConfig& cfg, StepFn step,
                     bool guard_divergence) {
  SolverResult res;
  res.trace.method = method;

  auto finish = [&](Status s, double x, double y, int iters) {
    res.status = s;
    res.x_star = x;
    res.y_star = y;
    res.iterations = iters;
    return res;
  };

  double x = x0;
  double y;
  try {
    y = f(x);
  } catch (const DomainError&) {
    res.trace.steps.push_back({0, x, kNan, StepNote::None});
    return finish(Status::DomainError, x, kNan, 0);
  }
  res.trace.steps.push_back({0, x, y, StepNote::None});

  for (int n = 1; n <= cfg.max_iter; ++n) {
    StepResult s;
    try {
      s = step(x, y);
    } catch (const DomainError&) {
      return finish(Status::DomainError, x, y, n - 1);
    }
    if (s.fail) return finish(*s.fail, x, y, n - 1);

    double xn = s.x_next;
    if (guard_divergence && std::abs(xn) > kDivergenceBound) {
      double yn = kNan;
      try {
        yn = f(xn);
      } catch (const DomainError&) {
      }
      res.trace.steps.push_back({n, xn, yn, StepNote::Diverged});
      return finish(Status::MaxIterExceeded, xn, yn, n);
    }

    double yn;
    try {
      yn = f(xn);
    } catch (const DomainError&) {
      res.trace.steps.push_back({n, xn, kNan, s.note});
      return finish(Status::DomainError, xn, kNan, n);
    }
    res.trace.steps.push_back({n, xn, yn, s.note});

    if (std::abs(xn - x) <= cfg.tol) return finish(Status::Converged, xn, yn, n);
    x = xn;
    y = yn;
  }
  return finish(Status::MaxIterExceeded, x, y, cfg.max_iter);
}

}  // namespace

SolverResult l_nr(const TargetFunction& f, double x0,
                  const SolverConfig& cfg) {
  auto step = [&](double x, double y) {
    DerivatorCoefficients c = derivator_at(f, x, 1, cfg.backend);
    double slope = c.coeffs[1];
    if (slope_vanishes(slope, y))
      return StepResult::failure(Status::ZeroDerivative);
    return StepResult::advance(x - y / slope);
  };
  return iterate(Method::LNr, f, x0, cfg, step, false);
}

SolverResult c_nr(const TargetFunction& f, double x0,
                  const SolverConfig& cfg) {
  auto step = [&](double x, double y) {
    DerivatorCoefficients c3 = derivator_at(f, x, 3, cfg.backend);
    Cubic cubic{c3.coeffs[3], c3.coeffs[2], c3.coeffs[1], c3.coeffs[0]};
    try {
      return StepResult::advance(closest_real_root(solve_cubic(cubic), x));
    } catch (const DegenerateCubic&) {
    }
    // Leading coefficient vanished: drop to the quadratic derivator, then to
    // the plain Newton step.
    DerivatorCoefficients c2 = derivator_at(f, x, 2, cfg.backend);
    double A = c2.coeffs[2], B = c2.coeffs[1], C = c2.coeffs[0];
    if (std::abs(A) > 1e-12 * std::max({1.0, std::abs(B), std::abs(C)})) {
      if (auto roots = quadratic_real_roots(A, B, C)) {
        double lo = std::min(roots->first, roots->second);
        double hi = std::max(roots->first, roots->second);
        double r = std::abs(hi - x) < std::abs(lo - x) ? hi : lo;
        return StepResult::advance(r, StepNote::QuadraticFallback);
      }
    }
    DerivatorCoefficients c1 = derivator_at(f, x, 1, cfg.backend);
    double slope = c1.coeffs[1];
    if (slope_vanishes(slope, y))
      return StepResult::failure(Status::ZeroDerivative);
    return StepResult::advance(x - y / slope, StepNote::LinearFallback);
  };
  return iterate(Method::CNr, f, x0, cfg, step, false);
}

SolverResult q_nr(const TargetFunction& f, double x0,
                  const SolverConfig& cfg) {
  auto step = [&](double x, double y) {
    DerivatorCoefficients c2 = derivator_at(f, x, 2, cfg.backend);
    double A = c2.coeffs[2], B = c2.coeffs[1], C = c2.coeffs[0];
    if (std::abs(A) <= 1e-12 * std::max({1.0, std::abs(B), std::abs(C)})) {
      // Effectively linear: one real root unless the slope vanishes too.
      if (slope_vanishes(B, y))
        return StepResult::failure(Status::NoRealRoot);
      return StepResult::advance(-C / B);
    }
    auto roots = quadratic_real_roots(A, B, C);
    if (!roots) return StepResult::failure(Status::NoRealRoot);
    double lo = std::min(roots->first, roots->second);
    double hi = std::max(roots->first, roots->second);
    double r = std::abs(hi - x) < std::abs(lo - x) ? hi : lo;
    return StepResult::advance(r);
  };
  return iterate(Method::QNr, f, x0, cfg, step, false);
}

SolverResult l_g(const TargetFunction& f, double x0, const SolverConfig& cfg) {
  double sign = cfg.direction == Direction::Minimize ? -1.0 : 1.0;
  auto step = [&, sign](double x, double) {
    DerivatorCoefficients c = derivator_at(f, x, 1, cfg.backend);
    return StepResult::advance(x + sign * cfg.step_a * c.coeffs[1]);
  };
  return iterate(Method::LG, f, x0, cfg, step, true);
}

SolverResult q_g(const TargetFunction& f, double x0, const SolverConfig& cfg) {
  auto step = [&](double x, double) {
    DerivatorCoefficients c2 = derivator_at(f, x, 2, cfg.backend);
    double a1 = c2.coeffs[1], a2 = c2.coeffs[2];
    if (std::abs(a2) < 1e-12 * (1 + std::abs(a1)))
      return StepResult::failure(Status::DegenerateCurvature);
    return StepResult::advance(-a1 / (2 * a2));
  };
  return iterate(Method::QG, f, x0, cfg, step, false);
}

SolverResult run_method(Method m, const TargetFunction& f, double x0,
                        const SolverConfig& cfg) {
  switch (m) {
    case Method::LNr: return l_nr(f, x0, cfg);
    case Method::CNr: return c_nr(f, x0, cfg);
    case Method::QNr: return q_nr(f, x0, cfg);
    case Method::LG: return l_g(f, x0, cfg);
    case Method::QG: return q_g(f, x0, cfg);
  }
  throw Error("unknown method");
}

ExtremumKind classify_extremum(const TargetFunction& f, double x,
                               const Backend& backend) {
  DerivatorCoefficients c2 = derivator_at(f, x, 2, backend);
  double curvature = 2 * c2.coeffs[2];
  if (std::abs(curvature) <= 1e-8 * (1 + std::abs(f(x))))
    return ExtremumKind::Degenerate;
  return curvature > 0 ? ExtremumKind::Minimum : ExtremumKind::Maximum;
}

const char* to_string(Method m) noexcept {
  switch (m) {
    case Method::LNr: return "l-nr";
    case Method::CNr: return "c-nr";
    case Method::QNr: return "q-nr";
    case Method::LG: return "l-g";
    case Method::QG: return "q-g";
  }
  return "?";
}

const char* to_string(Status s) noexcept {
  switch (s) {
    case Status::Converged: return "Converged";
    case Status::MaxIterExceeded: return "MaxIterExceeded";
    case Status::NoRealRoot: return "NoRealRoot";
    case Status::ZeroDerivative: return "ZeroDerivative";
    case Status::DegenerateCurvature: return "DegenerateCurvature";
    case Status::DomainError: return "DomainError";
  }
  return "?";
}

const char* to_string(Direction d) noexcept {
  return d == Direction::Minimize ? "min" : "max";
}

const char* to_string(StepNote n) noexcept {
  switch (n) {
    case StepNote::None: return "";
    case StepNote::QuadraticFallback: return "quadratic-fallback";
    case StepNote::LinearFallback: return "linear-fallback";
    case StepNote::Diverged: return "diverged";
  }
  return "?";
}

const char* to_string(ExtremumKind k) noexcept {
  switch (k) {
    case ExtremumKind::Minimum: return "minimum";
    case ExtremumKind::Maximum: return "maximum";
    case ExtremumKind::Degenerate: return "degenerate";
  }
  return "?";
}

std::optional<Method> method_from_string(const std::string& s) {
  if (s == "l-nr") return Method::LNr;
  if (s == "c-nr") return Method::CNr;
  if (s == "q-nr") return Method::QNr;
  if (s == "l-g") return Method::LG;
  if (s == "q-g") return Method::QG;
  return std::nullopt;
}

std::optional<Direction> direction_from_string(const std::string& s) {
  if (s == "min") return Direction::Minimize;
  if (s == "max") return Direction::Maximize;
  return std::nullopt;
}

}  // namespace gendrv
