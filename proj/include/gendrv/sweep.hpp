#pragma once

#include <string>
#include <vector>

#include "gendrv/solvers.hpp"

namespace gendrv {

// A benchmark run: one function, a set of methods, a uniform grid of starts.
struct SweepSpec {
  std::string function;  // "builtin:<name>" or expression text
  std::vector<Method> methods;
  double x0_start = 0;
  double x0_end = 0;
  int x0_count = 1;  // >= 1; endpoints inclusive
  SolverConfig config{};
};

struct SweepRecord {
  Method method = Method::LNr;
  double x0 = 0;
  Status status = Status::MaxIterExceeded;
  double x_star = 0;
  double y_star = 0;
  int iterations = 0;
};

// One limit point cluster among converged runs (centers the member mean,
// members within 1e-3 of their neighbors).
struct LimitCluster {
  double x_star = 0;
  int count = 0;
};

// Iteration-count statistics over the converged records of one method. When
// n_converged == 0 the floating statistics are NaN and max_iter_observed 0;
// std_iter_sample is NaN when n_converged < 2.
struct SummaryStats {
  Method method = Method::LNr;
  int n_converged = 0;
  double mean_iter = 0;
  double std_iter_population = 0;
  double std_iter_sample = 0;
  int max_iter_observed = 0;
  std::vector<LimitCluster> distinct_limits;
};

// Resolve "builtin:<name>" against the builtin registry, anything else as
// expression text. Throws Error for unknown builtins, ParseError/
// ExponentError for bad expressions.
TargetFunction resolve_function(const std::string& text);

std::vector<std::string> builtin_names();

// Run every (method, x0) pair; records ordered by method (enum order,
// duplicates dropped) then x0 ascending. threads > 1 splits the grid across
// worker threads; output is identical for any thread count. Throws Error on
// an invalid spec (empty methods, x0_count < 1, x0_start > x0_end).
std::vector<SweepRecord> run_sweep(const SweepSpec& spec, int threads = 1);

// Per-method statistics in record order.
std::vector<SummaryStats> summarize(const std::vector<SweepRecord>& records);

// CSV with header method,x0,status,x_star,y_star,iterations; 12 significant
// digit reals; LF line endings. Throws IoError.
void emit_csv(const std::vector<SweepRecord>& records, const std::string& path);

// JSON document (schema "gendrv-sweep-v1") with the echoed spec, all records
// and per-method stats. Throws IoError.
void emit_json(const std::vector<SweepRecord>& records,
               const std::vector<SummaryStats>& stats, const SweepSpec& spec,
               const std::string& path);

}  // namespace gendrv
