#include <cstdio>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "gendrv/cubic.hpp"
#include "gendrv/derivator.hpp"
#include "gendrv/errors.hpp"
#include "gendrv/solvers.hpp"
#include "gendrv/sweep.hpp"

namespace {

using namespace gendrv;

std::string fmt12(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::size_t begin = 0;
  for (;;) {
    std::size_t pos = s.find(sep, begin);
    if (pos == std::string::npos) {
      parts.push_back(s.substr(begin));
      return parts;
    }
    parts.push_back(s.substr(begin, pos - begin));
    begin = pos + 1;
  }
}

double parse_real(const std::string& s, const char* what) {
  try {
    std::size_t used = 0;
    double v = std::stod(s, &used);
    if (used == s.size()) return v;
  } catch (const std::exception&) {
  }
  throw Error(std::string("invalid ") + what + ": '" + s + "'");
}

int parse_count(const std::string& s, const char* what) {
  try {
    std::size_t used = 0;
    int v = std::stoi(s, &used);
    if (used == s.size()) return v;
  } catch (const std::exception&) {
  }
  throw Error(std::string("invalid ") + what + ": '" + s + "'");
}

struct CommonOpts {
  std::string function;
  double tol = 1e-4;
  int max_iter = 200;
  std::string backend = "analytic";
  std::optional<double> delta;
};

void add_common(CLI::App* cmd, CommonOpts& o, bool& has_delta, double& delta) {
  cmd->add_option("--function", o.function,
                  "expression in x, or builtin:<name>")
      ->required();
  cmd->add_option("--tol", o.tol, "convergence tolerance on |x_n - x_{n-1}|")
      ->capture_default_str();
  cmd->add_option("--max-iter", o.max_iter, "iteration cap")
      ->capture_default_str();
  cmd->add_option("--backend", o.backend, "derivator backend")
      ->capture_default_str()
      ->check(CLI::IsMember({"analytic", "fd"}));
  cmd->add_option("--delta", delta, "finite-difference spacing")
      ->each([&has_delta](const std::string&) { has_delta = true; });
}

SolverConfig build_config(const CommonOpts& o) {
  SolverConfig cfg;
  cfg.tol = o.tol;
  cfg.max_iter = o.max_iter;
  if (o.backend == "fd") {
    cfg.backend = Backend::finite_difference(o.delta);
  } else {
    if (o.delta) throw Error("--delta requires --backend fd");
    cfg.backend = Backend::analytic();
  }
  return cfg;
}

void print_trace(const IterationTrace& trace) {
  std::printf("trace:\n");
  std::printf("%4s  %-20s  %-20s  %s\n", "n", "x", "y", "note");
  for (const TraceStep& s : trace.steps) {
    std::printf("%4d  %-20.12g  %-20.12g  %s\n", s.n, s.x, s.y,
                to_string(s.note));
  }
}

int print_single_run(Method m, const SolverResult& res, bool trace) {
  if (trace) print_trace(res.trace);
  std::printf("method: %s\n", to_string(m));
  std::printf("status: %s\n", to_string(res.status));
  std::printf("x_star: %s\n", fmt12(res.x_star).c_str());
  std::printf("y_star: %s\n", fmt12(res.y_star).c_str());
  std::printf("iterations: %d\n", res.iterations);
  return res.status == Status::Converged ? 0 : 3;
}

int cmd_roots(const CommonOpts& common, const std::string& method_name,
              double x0, bool trace) {
  auto method = method_from_string(method_name);
  if (!method || (*method != Method::LNr && *method != Method::CNr &&
                  *method != Method::QNr))
    throw Error("roots method must be one of l-nr, c-nr, q-nr");
  TargetFunction f = resolve_function(common.function);
  SolverResult res = run_method(*method, f, x0, build_config(common));
  return print_single_run(*method, res, trace);
}

int cmd_extrema(const CommonOpts& common, const std::string& method_name,
                double x0, double step_a, const std::string& direction,
                bool trace) {
  auto method = method_from_string(method_name);
  if (!method || (*method != Method::LG && *method != Method::QG))
    throw Error("extrema method must be l-g or q-g");
  auto dir = direction_from_string(direction);
  if (!dir) throw Error("direction must be min or max");
  TargetFunction f = resolve_function(common.function);
  SolverConfig cfg = build_config(common);
  cfg.step_a = step_a;
  cfg.direction = *dir;
  SolverResult res = run_method(*method, f, x0, cfg);
  int code = print_single_run(*method, res, trace);
  if (res.status == Status::Converged) {
    std::printf("classification: %s\n",
                to_string(classify_extremum(f, res.x_star, cfg.backend)));
  }
  return code;
}

int cmd_sweep(const CommonOpts& common, const std::string& methods_arg,
              const std::string& range_arg, double step_a,
              const std::string& direction, const std::string& out_csv,
              const std::string& out_json) {
  SweepSpec spec;
  spec.function = common.function;
  for (const std::string& part : split(methods_arg, ',')) {
    auto m = method_from_string(part);
    if (!m) throw Error("unknown method '" + part + "' in --methods");
    spec.methods.push_back(*m);
  }
  std::vector<std::string> range = split(range_arg, ':');
  if (range.size() != 3)
    throw Error("--x0-range must look like start:end:count");
  spec.x0_start = parse_real(range[0], "range start");
  spec.x0_end = parse_real(range[1], "range end");
  spec.x0_count = parse_count(range[2], "range count");
  spec.config = build_config(common);
  spec.config.step_a = step_a;
  auto dir = direction_from_string(direction);
  if (!dir) throw Error("direction must be min or max");
  spec.config.direction = *dir;

  unsigned hw = std::thread::hardware_concurrency();
  int threads = static_cast<int>(hw == 0 ? 1 : (hw > 8 ? 8 : hw));
  std::vector<SweepRecord> records = run_sweep(spec, threads);
  std::vector<SummaryStats> stats = summarize(records);

  emit_csv(records, out_csv);
  if (!out_json.empty()) emit_json(records, stats, spec, out_json);

  for (const SummaryStats& s : stats) {
    std::printf("method %s: n_converged=%d", to_string(s.method),
                s.n_converged);
    if (s.n_converged > 0) {
      std::printf(" mean_iter=%s std_pop=%s", fmt12(s.mean_iter).c_str(),
                  fmt12(s.std_iter_population).c_str());
      if (s.n_converged > 1)
        std::printf(" std_sample=%s", fmt12(s.std_iter_sample).c_str());
      std::printf(" max_iter=%d limits:", s.max_iter_observed);
      for (const LimitCluster& c : s.distinct_limits)
        std::printf(" %s(x%d)", fmt12(c.x_star).c_str(), c.count);
    }
    std::printf("\n");
  }
  std::printf("wrote %s\n", out_csv.c_str());
  if (!out_json.empty()) std::printf("wrote %s\n", out_json.c_str());
  return 0;
}

int cmd_coeffs(const std::string& function, double x, int degree,
               std::optional<double> delta) {
  TargetFunction f = resolve_function(function);
  DerivatorCoefficients c = delta ? fd_coefficients(f, x, *delta, degree)
                                  : analytic_coefficients(f, x, degree);
  nlohmann::json doc{{"degree", c.degree},
                     {"anchor", c.anchor},
                     {"coeffs", c.coeffs}};
  std::printf("%s\n", doc.dump().c_str());
  return 0;
}

int cmd_cubic_solve(const std::string& coeffs_arg) {
  std::vector<std::string> parts = split(coeffs_arg, ',');
  if (parts.size() != 4) throw Error("--coeffs must look like a,b,c,d");
  Cubic cubic{parse_real(parts[0], "coefficient a"),
              parse_real(parts[1], "coefficient b"),
              parse_real(parts[2], "coefficient c"),
              parse_real(parts[3], "coefficient d")};
  CubicRoots roots = solve_cubic(cubic);
  nlohmann::json doc{{"roots", roots.roots},
                     {"multiplicities", roots.multiplicities},
                     {"discriminant", roots.discriminant},
                     {"case", to_string(roots.discriminant_case)}};
  std::printf("%s\n", doc.dump().c_str());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"generalized-derivative root and extremum finding"};
  app.require_subcommand(1);

  CommonOpts roots_common, extrema_common, sweep_common, coeffs_common;
  bool roots_has_delta = false, extrema_has_delta = false,
       sweep_has_delta = false;
  double roots_delta = 0, extrema_delta = 0, sweep_delta = 0;

  std::string roots_method;
  double roots_x0 = 0;
  bool roots_trace = false;
  CLI::App* roots = app.add_subcommand("roots", "find a root of f");
  add_common(roots, roots_common, roots_has_delta, roots_delta);
  roots->add_option("--method", roots_method, "l-nr, c-nr or q-nr")
      ->required();
  roots->add_option("--x0", roots_x0, "initial guess")->required();
  roots->add_flag("--trace", roots_trace, "print the iteration trace");

  std::string extrema_method, extrema_direction = "min";
  double extrema_x0 = 0, extrema_step_a = 0.05;
  bool extrema_trace = false;
  CLI::App* extrema = app.add_subcommand("extrema", "find an extremum of f");
  add_common(extrema, extrema_common, extrema_has_delta, extrema_delta);
  extrema->add_option("--method", extrema_method, "l-g or q-g")->required();
  extrema->add_option("--x0", extrema_x0, "initial guess")->required();
  extrema->add_option("--step-a", extrema_step_a, "gradient step size")
      ->capture_default_str();
  extrema->add_option("--direction", extrema_direction, "min or max")
      ->capture_default_str()
      ->check(CLI::IsMember({"min", "max"}));
  extrema->add_flag("--trace", extrema_trace, "print the iteration trace");

  std::string sweep_methods, sweep_range, sweep_direction = "min";
  std::string sweep_out_csv, sweep_out_json;
  double sweep_step_a = 0.05;
  CLI::App* sweep =
      app.add_subcommand("sweep", "run methods over a grid of starts");
  add_common(sweep, sweep_common, sweep_has_delta, sweep_delta);
  sweep->add_option("--methods", sweep_methods, "comma-separated method list")
      ->required();
  sweep->add_option("--x0-range", sweep_range, "start:end:count")->required();
  sweep->add_option("--step-a", sweep_step_a, "gradient step size")
      ->capture_default_str();
  sweep->add_option("--direction", sweep_direction, "min or max")
      ->capture_default_str()
      ->check(CLI::IsMember({"min", "max"}));
  sweep->add_option("--out-csv", sweep_out_csv, "CSV output path")->required();
  sweep->add_option("--out-json", sweep_out_json, "JSON output path");

  double coeffs_x = 0;
  int coeffs_degree = 0;
  bool coeffs_has_delta = false;
  double coeffs_delta = 0;
  CLI::App* coeffs =
      app.add_subcommand("coeffs", "print derivator coefficients at a point");
  coeffs
      ->add_option("--function", coeffs_common.function,
                   "expression in x, or builtin:<name>")
      ->required();
  coeffs->add_option("--x", coeffs_x, "expansion point")->required();
  coeffs->add_option("--degree", coeffs_degree, "derivator degree")
      ->required()
      ->check(CLI::IsMember({1, 2, 3}));
  coeffs->add_option("--delta", coeffs_delta, "finite-difference spacing")
      ->each([&coeffs_has_delta](const std::string&) {
        coeffs_has_delta = true;
      });

  std::string cubic_coeffs;
  CLI::App* cubic =
      app.add_subcommand("cubic-solve", "real roots of a cubic polynomial");
  cubic->add_option("--coeffs", cubic_coeffs, "a,b,c,d")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  if (roots_has_delta) roots_common.delta = roots_delta;
  if (extrema_has_delta) extrema_common.delta = extrema_delta;
  if (sweep_has_delta) sweep_common.delta = sweep_delta;

  try {
    if (app.got_subcommand(roots))
      return cmd_roots(roots_common, roots_method, roots_x0, roots_trace);
    if (app.got_subcommand(extrema))
      return cmd_extrema(extrema_common, extrema_method, extrema_x0,
                         extrema_step_a, extrema_direction, extrema_trace);
    if (app.got_subcommand(sweep))
      return cmd_sweep(sweep_common, sweep_methods, sweep_range, sweep_step_a,
                       sweep_direction, sweep_out_csv, sweep_out_json);
    if (app.got_subcommand(coeffs))
      return cmd_coeffs(coeffs_common.function, coeffs_x, coeffs_degree,
                        coeffs_has_delta ? std::optional<double>(coeffs_delta)
                                         : std::nullopt);
    if (app.got_subcommand(cubic)) return cmd_cubic_solve(cubic_coeffs);
  } catch (const IoError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 4;
  } catch (const Error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
  return 2;
}
