#pragma once

// Audit matrix: (method x function x {unshifted, shifted} x runs), error
// flooring, shifted/unshifted ratios and the geometric-mean verdict.

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <exception>
#include <functional>
#include <map>
#include <mutex>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <thread>
#include <vector>

#include "cbias/bench.hpp"
#include "cbias/errors.hpp"
#include "cbias/objective.hpp"
#include "cbias/optim.hpp"
#include "cbias/rng.hpp"

namespace cbias {

enum class Variant : std::uint8_t { Unshifted, Shifted };
enum class Verdict : std::uint8_t { NotDetected, CenterBiased };

constexpr int ordinal(Variant v) noexcept { return static_cast<int>(v); }

inline std::string to_string(Variant v) { return v == Variant::Unshifted ? "unshifted" : "shifted"; }
inline std::string to_string(Verdict v) { return v == Verdict::CenterBiased ? "CenterBiased" : "NotDetected"; }

inline Variant parse_variant(std::string_view s) {
  if (s == "unshifted") return Variant::Unshifted;
  if (s == "shifted") return Variant::Shifted;
  throw ConfigError("unknown variant '" + std::string(s) + "'");
}

inline Verdict parse_verdict(std::string_view s) {
  if (s == "CenterBiased") return Verdict::CenterBiased;
  if (s == "NotDetected") return Verdict::NotDetected;
  throw ConfigError("unknown verdict '" + std::string(s) + "'");
}

struct AuditConfig {
  std::size_t dimension = 30;
  std::uint64_t budget = 50000;
  std::size_t runs = 20;
  double shift_fraction = 0.1;
  double error_floor = 1e-8;
  double bias_threshold = 10.0;
  std::uint64_t master_seed = 0;
  std::vector<MethodId> methods;
  std::vector<FunctionId> functions{kAllFunctions.begin(), kAllFunctions.end()};
  StepVariant step_variant = StepVariant::Smooth;
  // Per-method hyperparameter and population overrides.
  std::map<MethodId, Hyperparameters> hyperparameters;
  std::map<MethodId, std::size_t> populations;

  friend bool operator==(const AuditConfig&, const AuditConfig&) = default;
};

// Protocol of the original study: d = 30, 50000 evaluations, 20 runs.
inline AuditConfig paper_preset() { return {}; }

// Desk-scale protocol for CI: d = 30, 20000 evaluations, 5 runs.
inline AuditConfig ci_preset() {
  AuditConfig c;
  c.budget = 20000;
  c.runs = 5;
  return c;
}

inline void validate(const AuditConfig& c) {
  if (c.dimension < 2) throw ConfigError("dimension must be at least 2");
  if (c.budget == 0) throw ConfigError("budget must be positive");
  if (c.runs < 1) throw ConfigError("runs must be at least 1");
  if (!(c.shift_fraction >= 0.0 && c.shift_fraction < 0.5)) throw ConfigError("shift fraction must lie in [0, 0.5)");
  if (!(c.error_floor > 0.0)) throw ConfigError("error floor must be positive");
  if (!(c.bias_threshold > 1.0)) throw ConfigError("bias threshold must exceed 1");
  if (c.functions.empty()) throw ConfigError("no functions selected");
}

inline OptimizerConfig optimizer_config(const AuditConfig& c, MethodId method, std::uint64_t seed) {
  const auto hp = c.hyperparameters.find(method);
  const auto pop = c.populations.find(method);
  return configure(method, hp == c.hyperparameters.end() ? Hyperparameters{} : hp->second,
                   pop == c.populations.end() ? std::nullopt : std::optional<std::size_t>(pop->second), seed);
}

// Floors an error at `floor`. Slightly negative values from round-off near
// the optimum are accepted; anything below -1e-6 means f* is wrong.
inline double clamp_error(double e, double floor) {
  if (std::isnan(e) || e < -1e-6) {
    throw InvariantViolation("error " + std::to_string(e) + " is below the optimal value");
  }
  return std::max(e, floor);
}

// Seed of one run, derived from its cell identity only.
inline std::uint64_t run_seed(std::uint64_t master, MethodId m, FunctionId f, Variant v, std::size_t run) {
  return mix_seed({master, static_cast<std::uint64_t>(ordinal(m)), static_cast<std::uint64_t>(ordinal(f)),
                   static_cast<std::uint64_t>(ordinal(v)), static_cast<std::uint64_t>(run)});
}

inline std::uint64_t noise_seed(std::uint64_t run_seed) { return mix64(run_seed ^ 0x5eed0f7e15e5eedULL); }

struct AuditCellResult {
  MethodId method = MethodId::RandomSearch;
  FunctionId function = FunctionId::F01;
  Variant variant = Variant::Unshifted;
  std::vector<double> run_errors;
  double mean_error = 0.0;

  friend bool operator==(const AuditCellResult&, const AuditCellResult&) = default;
};

struct AuditRecord {
  MethodId method = MethodId::RandomSearch;
  FunctionId function = FunctionId::F01;
  double unshifted_mean = 0.0;
  double shifted_mean = 0.0;
  double ratio = 0.0;

  friend bool operator==(const AuditRecord&, const AuditRecord&) = default;
};

// One independent run; returns the floored error against the base f*.
inline double run_once(const AuditConfig& c, MethodId method, FunctionId function, Variant variant, std::size_t run) {
  const double fraction = variant == Variant::Shifted ? c.shift_fraction : 0.0;
  auto problem = make_problem(function, c.dimension, fraction, c.step_variant);
  const double f_star = problem.base.f_star;
  const std::uint64_t seed = run_seed(c.master_seed, method, function, variant, run);
  ObjectiveHandle handle(std::move(problem), c.budget, noise_seed(seed));
  const RunOutcome outcome = minimize(optimizer_config(c, method, seed), handle);
  return clamp_error(outcome.best_value - f_star, c.error_floor);
}

inline AuditCellResult make_cell(MethodId method, FunctionId function, Variant variant, std::vector<double> errors) {
  if (errors.empty()) throw ContractViolation("a cell needs at least one run");
  AuditCellResult cell{method, function, variant, std::move(errors), 0.0};
  // Offset by the minimum so that identical runs give back that value exactly.
  const double lo = *std::min_element(cell.run_errors.begin(), cell.run_errors.end());
  double excess = 0.0;
  for (double e : cell.run_errors) excess += e - lo;
  cell.mean_error = lo + excess / static_cast<double>(cell.run_errors.size());
  return cell;
}

inline AuditCellResult run_cell(const AuditConfig& c, MethodId method, FunctionId function, Variant variant) {
  validate(c);
  std::vector<double> errors;
  errors.reserve(c.runs);
  for (std::size_t r = 0; r < c.runs; ++r) errors.push_back(run_once(c, method, function, variant, r));
  return make_cell(method, function, variant, std::move(errors));
}

inline AuditRecord compute_ratio(const AuditCellResult& unshifted, const AuditCellResult& shifted) {
  if (unshifted.method != shifted.method || unshifted.function != shifted.function ||
      unshifted.variant != Variant::Unshifted || shifted.variant != Variant::Shifted) {
    throw ContractViolation("compute_ratio needs the unshifted and shifted cells of one (method, function)");
  }
  if (!(unshifted.mean_error > 0.0) || !(shifted.mean_error > 0.0)) {
    throw ContractViolation("mean errors must be positive");
  }
  return {unshifted.method, unshifted.function, unshifted.mean_error, shifted.mean_error,
          shifted.mean_error / unshifted.mean_error};
}

// exp(mean(log r)), accumulated in the log domain.
inline double geometric_mean(std::span<const double> ratios) {
  if (ratios.empty()) throw ContractViolation("geometric mean of an empty list");
  double log_sum = 0.0;
  for (double r : ratios) {
    if (!(r > 0.0) || !std::isfinite(r)) throw ContractViolation("geometric mean needs finite positive entries");
    log_sum += std::log(r);
  }
  return std::exp(log_sum / static_cast<double>(ratios.size()));
}

// Strict: a geomean equal to the threshold is not flagged.
inline Verdict classify(double geomean, double threshold) {
  if (!(geomean > 0.0)) throw ContractViolation("geomean must be positive");
  return geomean > threshold ? Verdict::CenterBiased : Verdict::NotDetected;
}

struct MethodReport {
  std::string method;  // display name; registry abbreviations are not limited to MethodId
  double geomean = 0.0;
  Verdict verdict = Verdict::NotDetected;
  std::vector<AuditRecord> records;

  friend bool operator==(const MethodReport&, const MethodReport&) = default;
};

inline MethodReport make_report(std::string method, std::vector<AuditRecord> records, double threshold) {
  std::vector<double> ratios;
  ratios.reserve(records.size());
  for (const auto& r : records) ratios.push_back(r.ratio);
  const double g = geometric_mean(ratios);
  return {std::move(method), g, classify(g, threshold), std::move(records)};
}

struct AuditResults {
  AuditConfig config;
  std::vector<AuditCellResult> cells;  // canonical order: method, function, variant
  std::vector<MethodReport> reports;   // canonical order: method

  friend bool operator==(const AuditResults&, const AuditResults&) = default;
};

// Called once per finished cell, possibly from a worker thread but never
// concurrently.
using CellCallback = std::function<void(const AuditCellResult&)>;

// Runs the whole matrix on `workers` threads (0 = hardware concurrency).
// Output is independent of the worker count and of scheduling.
inline AuditResults run_audit(const AuditConfig& config, unsigned workers = 1, const CellCallback& on_cell = {}) {
  validate(config);
  if (config.methods.empty()) throw ContractViolation("run_audit needs at least one method");

  AuditConfig c = config;
  auto dedupe = [](auto& v) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
  };
  dedupe(c.methods);
  dedupe(c.functions);
  for (auto m : c.methods) validate(optimizer_config(c, m, 0));

  struct CellKey {
    MethodId method;
    FunctionId function;
    Variant variant;
  };
  std::vector<CellKey> keys;
  for (auto m : c.methods) {
    for (auto f : c.functions) {
      keys.push_back({m, f, Variant::Unshifted});
      keys.push_back({m, f, Variant::Shifted});
    }
  }

  const std::size_t tasks = keys.size() * c.runs;
  std::vector<double> errors(tasks);
  std::vector<std::atomic<std::size_t>> pending(keys.size());
  for (auto& p : pending) p.store(c.runs);
  std::atomic<std::size_t> next{0};
  std::atomic<bool> failed{false};
  std::exception_ptr error;
  std::mutex mutex;

  auto worker = [&] {
    for (;;) {
      const std::size_t t = next.fetch_add(1);
      if (t >= tasks || failed.load()) return;
      const std::size_t k = t / c.runs;
      const std::size_t run = t % c.runs;
      try {
        errors[t] = run_once(c, keys[k].method, keys[k].function, keys[k].variant, run);
      } catch (...) {
        std::lock_guard lock(mutex);
        if (!error) error = std::current_exception();
        failed.store(true);
        return;
      }
      if (pending[k].fetch_sub(1) == 1 && on_cell) {
        auto begin = errors.begin() + static_cast<std::ptrdiff_t>(k * c.runs);
        auto cell = make_cell(keys[k].method, keys[k].function, keys[k].variant,
                              std::vector<double>(begin, begin + static_cast<std::ptrdiff_t>(c.runs)));
        std::lock_guard lock(mutex);
        on_cell(cell);
      }
    }
  };

  if (workers == 0) workers = std::max(1u, std::thread::hardware_concurrency());
  workers = static_cast<unsigned>(std::min<std::size_t>(workers, tasks));
  if (workers <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (unsigned i = 0; i < workers; ++i) pool.emplace_back(worker);
  }
  if (error) std::rethrow_exception(error);

  AuditResults results{c, {}, {}};
  for (std::size_t k = 0; k < keys.size(); ++k) {
    auto begin = errors.begin() + static_cast<std::ptrdiff_t>(k * c.runs);
    results.cells.push_back(make_cell(keys[k].method, keys[k].function, keys[k].variant,
                                      std::vector<double>(begin, begin + static_cast<std::ptrdiff_t>(c.runs))));
  }
  for (std::size_t mi = 0; mi < c.methods.size(); ++mi) {
    std::vector<AuditRecord> records;
    for (std::size_t fi = 0; fi < c.functions.size(); ++fi) {
      const std::size_t base = (mi * c.functions.size() + fi) * 2;
      records.push_back(compute_ratio(results.cells[base], results.cells[base + 1]));
    }
    results.reports.push_back(make_report(to_string(c.methods[mi]), std::move(records), c.bias_threshold));
  }
  return results;
}

}  // namespace cbias
