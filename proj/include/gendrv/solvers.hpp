#pragma once

#include <optional>
#include <string>
#include <vector>

#include "gendrv/derivator.hpp"
#include "gendrv/target_function.hpp"

namespace gendrv {

enum class Method { LNr, CNr, QNr, LG, QG };

enum class Status {
  Converged,
  MaxIterExceeded,
  NoRealRoot,
  ZeroDerivative,
  DegenerateCurvature,
  DomainError,
};

enum class Direction { Minimize, Maximize };

enum class ExtremumKind { Minimum, Maximum, Degenerate };

// How derivator coefficients are produced at each iterate.
struct Backend {
  enum class Kind { Analytic, FiniteDifference };
  Kind kind = Kind::Analytic;
  // Fixed spacing for the finite-difference kind; unset means the per-point
  // default 1e-6*max(1,|x|).
  std::optional<double> delta;

  static Backend analytic() { return {}; }
  static Backend finite_difference(std::optional<double> delta = {}) {
    return {Kind::FiniteDifference, delta};
  }
};

struct SolverConfig {
  double tol = 1e-4;
  int max_iter = 200;
  double step_a = 0.05;
  Backend backend{};
  Direction direction = Direction::Minimize;
};

// Per-step annotation in the iteration trace.
enum class StepNote { None, QuadraticFallback, LinearFallback, Diverged };

struct TraceStep {
  int n = 0;
  double x = 0;
  double y = 0;
  StepNote note = StepNote::None;
};

struct IterationTrace {
  Method method = Method::LNr;
  std::vector<TraceStep> steps;  // step 0 is the initial guess
};

struct SolverResult {
  Status status = Status::MaxIterExceeded;
  double x_star = 0;
  double y_star = 0;
  int iterations = 0;  // update steps performed
  IterationTrace trace;
};

// Root finding: linear derivator (classic Newton-Raphson step y/y').
SolverResult l_nr(const TargetFunction& f, double x0, const SolverConfig& cfg);

// Root finding: closest real root of the cubic derivator, falling back to
// the quadratic then linear derivator when the leading coefficient
// degenerates (fallbacks are recorded in the trace).
SolverResult c_nr(const TargetFunction& f, double x0, const SolverConfig& cfg);

// Root finding: closest real root of the quadratic derivator.
SolverResult q_nr(const TargetFunction& f, double x0, const SolverConfig& cfg);

// Extremum search: fixed-step gradient iteration x -+ step_a * y'.
SolverResult l_g(const TargetFunction& f, double x0, const SolverConfig& cfg);

// Extremum search: vertex of the quadratic derivator, -a1/(2*a2).
SolverResult q_g(const TargetFunction& f, double x0, const SolverConfig& cfg);

SolverResult run_method(Method m, const TargetFunction& f, double x0,
                        const SolverConfig& cfg);

// Sign of the second derivative at x (from the degree-2 derivator).
ExtremumKind classify_extremum(const TargetFunction& f, double x,
                               const Backend& backend);

const char* to_string(Method m) noexcept;        // "l-nr", "c-nr", ...
const char* to_string(Status s) noexcept;        // "Converged", ...
const char* to_string(Direction d) noexcept;     // "min", "max"
const char* to_string(StepNote n) noexcept;      // "", "quadratic-fallback", ...
const char* to_string(ExtremumKind k) noexcept;  // "minimum", ...

std::optional<Method> method_from_string(const std::string& s);
std::optional<Direction> direction_from_string(const std::string& s);

}  // namespace gendrv
