#include "gendrv/sweep.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <thread>

#include <json.hpp>

#include "gendrv/expr.hpp"

namespace gendrv {

namespace {

constexpr double kNan = std::numeric_limits<double>::quiet_NaN();
constexpr double kClusterTol = 1e-3;

// y = x^4 - 21x^3 + 149x^2 - 419x + 290 with its exact derivative tower.
TargetFunction builtin_quartic() {
  auto eval = [](double x) {
    return (((x - 21) * x + 149) * x - 419) * x + 290;
  };
  auto tower = [](double x) {
    DerivTower t;
    t.y = (((x - 21) * x + 149) * x - 419) * x + 290;
    t.dy = ((4 * x - 63) * x + 298) * x - 419;
    t.d2y = (12 * x - 126) * x + 298;
    t.d3y = 24 * x - 126;
    return t;
  };
  return TargetFunction(eval, tower);
}

std::string fmt12(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

std::vector<double> sweep_grid(const SweepSpec& spec) {
  std::vector<double> grid;
  grid.reserve(static_cast<std::size_t>(spec.x0_count));
  if (spec.x0_count == 1) {
    grid.push_back(spec.x0_start);
    return grid;
  }
  for (int i = 0; i < spec.x0_count; ++i) {
    grid.push_back(i == spec.x0_count - 1
                       ? spec.x0_end
                       : spec.x0_start + (spec.x0_end - spec.x0_start) * i /
                                             (spec.x0_count - 1));
  }
  return grid;
}

std::vector<Method> normalized_methods(const std::vector<Method>& methods) {
  std::vector<Method> out(methods);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

nlohmann::json record_to_json(const SweepRecord& r) {
  return {{"method", to_string(r.method)},
          {"x0", r.x0},
          {"status", to_string(r.status)},
          {"x_star", r.x_star},
          {"y_star", r.y_star},
          {"iterations", r.iterations}};
}

}  // namespace

TargetFunction resolve_function(const std::string& text) {
  constexpr std::string_view prefix = "builtin:";
  if (text.rfind(prefix, 0) == 0) {
    std::string name = text.substr(prefix.size());
    if (name == "quartic-y") return builtin_quartic();
    throw Error("unknown builtin function '" + name + "'");
  }
  return make_target(text);
}

std::vector<std::string> builtin_names() { return {"quartic-y"}; }

std::vector<SweepRecord> run_sweep(const SweepSpec& spec, int threads) {
  if (spec.methods.empty()) throw Error("sweep needs at least one method");
  if (spec.x0_count < 1) throw Error("x0_count must be at least 1");
  if (spec.x0_count > 1 && spec.x0_start > spec.x0_end)
    throw Error("x0_start must not exceed x0_end");

  TargetFunction f = resolve_function(spec.function);
  std::vector<Method> methods = normalized_methods(spec.methods);
  std::vector<double> grid = sweep_grid(spec);

  const std::size_t per_method = grid.size();
  std::vector<SweepRecord> records(methods.size() * per_method);

  auto run_one = [&](std::size_t job) {
    Method m = methods[job / per_method];
    double x0 = grid[job % per_method];
    SolverResult res = run_method(m, f, x0, spec.config);
    records[job] = {m,          x0,         res.status,
                    res.x_star, res.y_star, res.iterations};
  };

  const std::size_t jobs = records.size();
  std::size_t workers = threads < 1 ? 1 : static_cast<std::size_t>(threads);
  workers = std::min(workers, jobs == 0 ? std::size_t{1} : jobs);
  if (workers <= 1) {
    for (std::size_t j = 0; j < jobs; ++j) run_one(j);
  } else {
    // Fixed job -> slot mapping keeps output independent of scheduling.
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        for (std::size_t j = w; j < jobs; j += workers) run_one(j);
      });
    }
    for (auto& t : pool) t.join();
  }
  return records;
}

std::vector<SummaryStats> summarize(const std::vector<SweepRecord>& records) {
  std::vector<Method> order;
  for (const SweepRecord& r : records) {
    if (std::find(order.begin(), order.end(), r.method) == order.end())
      order.push_back(r.method);
  }

  std::vector<SummaryStats> out;
  out.reserve(order.size());
  for (Method m : order) {
    SummaryStats s;
    s.method = m;
    std::vector<int> iters;
    std::vector<double> limits;
    for (const SweepRecord& r : records) {
      if (r.method != m || r.status != Status::Converged) continue;
      iters.push_back(r.iterations);
      limits.push_back(r.x_star);
    }
    s.n_converged = static_cast<int>(iters.size());
    if (iters.empty()) {
      s.mean_iter = kNan;
      s.std_iter_population = kNan;
      s.std_iter_sample = kNan;
      s.max_iter_observed = 0;
    } else {
      double sum = 0;
      int max_it = iters.front();
      for (int it : iters) {
        sum += it;
        max_it = std::max(max_it, it);
      }
      double mean = sum / s.n_converged;
      double ss = 0;
      for (int it : iters) ss += (it - mean) * (it - mean);
      s.mean_iter = mean;
      s.std_iter_population = std::sqrt(ss / s.n_converged);
      s.std_iter_sample =
          s.n_converged > 1 ? std::sqrt(ss / (s.n_converged - 1)) : kNan;
      s.max_iter_observed = max_it;

      std::sort(limits.begin(), limits.end());
      std::size_t begin = 0;
      for (std::size_t i = 1; i <= limits.size(); ++i) {
        if (i == limits.size() || limits[i] - limits[i - 1] > kClusterTol) {
          double acc = 0;
          for (std::size_t j = begin; j < i; ++j) acc += limits[j];
          s.distinct_limits.push_back(
              {acc / static_cast<double>(i - begin),
               static_cast<int>(i - begin)});
          begin = i;
        }
      }
    }
    out.push_back(std::move(s));
  }
  return out;
}

void emit_csv(const std::vector<SweepRecord>& records,
              const std::string& path) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw IoError(path, "cannot open for writing");
  os << "method,x0,status,x_star,y_star,iterations\n";
  for (const SweepRecord& r : records) {
    os << to_string(r.method) << ',' << fmt12(r.x0) << ','
       << to_string(r.status) << ',' << fmt12(r.x_star) << ','
       << fmt12(r.y_star) << ',' << r.iterations << '\n';
  }
  os.flush();
  if (!os) throw IoError(path, "write failed");
}

void emit_json(const std::vector<SweepRecord>& records,
               const std::vector<SummaryStats>& stats, const SweepSpec& spec,
               const std::string& path) {
  nlohmann::json doc;
  doc["schema"] = "gendrv-sweep-v1";

  nlohmann::json methods = nlohmann::json::array();
  for (Method m : normalized_methods(spec.methods))
    methods.push_back(to_string(m));
  doc["spec_echo"] = {
      {"function", spec.function},
      {"methods", methods},
      {"x0_start", spec.x0_start},
      {"x0_end", spec.x0_end},
      {"x0_count", spec.x0_count},
      {"config",
       {{"tol", spec.config.tol},
        {"max_iter", spec.config.max_iter},
        {"step_a", spec.config.step_a},
        {"backend", spec.config.backend.kind == Backend::Kind::Analytic
                        ? "analytic"
                        : "fd"},
        {"delta", spec.config.backend.delta
                      ? nlohmann::json(*spec.config.backend.delta)
                      : nlohmann::json(nullptr)},
        {"direction", to_string(spec.config.direction)}}}};

  nlohmann::json recs = nlohmann::json::array();
  for (const SweepRecord& r : records) recs.push_back(record_to_json(r));
  doc["records"] = std::move(recs);

  nlohmann::json st = nlohmann::json::array();
  for (const SummaryStats& s : stats) {
    nlohmann::json limits = nlohmann::json::array();
    for (const LimitCluster& c : s.distinct_limits)
      limits.push_back({{"x_star", c.x_star}, {"count", c.count}});
    st.push_back({{"method", to_string(s.method)},
                  {"n_converged", s.n_converged},
                  {"mean_iter", s.mean_iter},
                  {"std_iter_population", s.std_iter_population},
                  {"std_iter_sample", s.std_iter_sample},
                  {"max_iter_observed", s.max_iter_observed},
                  {"distinct_limits", std::move(limits)}});
  }
  doc["stats"] = std::move(st);

  std::ofstream os(path, std::ios::binary);
  if (!os) throw IoError(path, "cannot open for writing");
  os << doc.dump(2) << '\n';
  os.flush();
  if (!os) throw IoError(path, "write failed");
}

}  // namespace gendrv
