#pragma once

#include <algorithm>
#include <array>
#include <cctype>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "cbias/bench.hpp"
#include "cbias/errors.hpp"
#include "cbias/objective.hpp"
#include "cbias/rng.hpp"

namespace cbias {

enum class MethodId : std::uint8_t { RandomSearch, DE, PSO, ABC, GWO, SCA, CenterSampler };

inline constexpr std::array<MethodId, 7> kAllMethods = {MethodId::RandomSearch, MethodId::DE,  MethodId::PSO,
                                                        MethodId::ABC,          MethodId::GWO, MethodId::SCA,
                                                        MethodId::CenterSampler};

constexpr int ordinal(MethodId id) noexcept { return static_cast<int>(id); }

struct HyperparameterSpec {
  std::string_view name;
  double default_value;
  double min;  // inclusive
  double max;  // inclusive
  std::string_view description;
};

struct MethodInfo {
  MethodId id;
  std::string_view name;
  std::size_t default_population;
  std::size_t min_population;
  std::vector<HyperparameterSpec> hyperparameters;
};

inline const MethodInfo& method_info(MethodId id) {
  static const std::array<MethodInfo, 7> catalog = {{
      {MethodId::RandomSearch, "RandomSearch", 50, 2, {}},
      {MethodId::DE,
       "DE",
       50,
       4,
       {{"F", 0.5, 0.0, 2.0, "differential weight"}, {"CR", 0.9, 0.0, 1.0, "crossover rate"}}},
      {MethodId::PSO,
       "PSO",
       50,
       2,
       {{"w", 0.729, 0.0, 1.0, "inertia weight"},
        {"c1", 1.49445, 0.0, 4.0, "cognitive coefficient"},
        {"c2", 1.49445, 0.0, 4.0, "social coefficient"},
        {"vmax", 0.5, 0.01, 1.0, "velocity clamp as a fraction of the box width"}}},
      {MethodId::ABC,
       "ABC",
       50,
       2,
       {{"limit_scale", 0.5, 0.01, 10.0, "abandonment limit = limit_scale * colony * dimension"}}},
      {MethodId::GWO, "GWO", 30, 2, {{"a", 2.0, 0.0, 4.0, "initial value of the linearly decreasing a"}}},
      {MethodId::SCA, "SCA", 30, 2, {{"a", 2.0, 0.0, 4.0, "initial value of the linearly decreasing r1"}}},
      {MethodId::CenterSampler,
       "CenterSampler",
       50,
       2,
       {{"sigma", 0.3, 0.0, 1.0, "initial Gaussian spread as a fraction of the half-width"}}},
  }};
  return catalog[static_cast<std::size_t>(ordinal(id))];
}

inline std::string to_string(MethodId id) { return std::string(method_info(id).name); }

inline MethodId parse_method_id(std::string_view text) {
  std::string lower(text);
  std::transform(lower.begin(), lower.end(), lower.begin(), [](unsigned char c) { return std::tolower(c); });
  for (auto id : kAllMethods) {
    std::string name(method_info(id).name);
    std::transform(name.begin(), name.end(), name.begin(), [](unsigned char c) { return std::tolower(c); });
    if (name == lower) return id;
  }
  throw ConfigError("unknown method '" + std::string(text) + "'");
}

using Hyperparameters = std::map<std::string, double>;

struct OptimizerConfig {
  MethodId method = MethodId::RandomSearch;
  std::size_t population_size = 0;
  Hyperparameters hyperparameters;
  std::uint64_t seed = 0;

  [[nodiscard]] double param(const std::string& key) const {
    auto it = hyperparameters.find(key);
    if (it == hyperparameters.end()) throw ConfigError(to_string(method) + " has no hyperparameter '" + key + "'");
    return it->second;
  }
};

inline OptimizerConfig default_config(MethodId method, std::uint64_t seed = 0) {
  const auto& info = method_info(method);
  OptimizerConfig c{method, info.default_population, {}, seed};
  for (const auto& h : info.hyperparameters) c.hyperparameters.emplace(std::string(h.name), h.default_value);
  return c;
}

// Applies overrides on top of the defaults; unknown keys and out-of-range
// values are rejected.
inline OptimizerConfig configure(MethodId method, const Hyperparameters& overrides,
                                 std::optional<std::size_t> population = std::nullopt, std::uint64_t seed = 0) {
  auto c = default_config(method, seed);
  if (population) c.population_size = *population;
  for (const auto& [key, value] : overrides) {
    if (!c.hyperparameters.contains(key)) {
      throw ConfigError(to_string(method) + " has no hyperparameter '" + key + "'");
    }
    c.hyperparameters[key] = value;
  }
  return c;
}

inline void validate(const OptimizerConfig& c) {
  const auto& info = method_info(c.method);
  if (c.population_size < info.min_population) {
    throw ConfigError(to_string(c.method) + " needs a population of at least " + std::to_string(info.min_population));
  }
  for (const auto& spec : info.hyperparameters) {
    const double v = c.param(std::string(spec.name));
    if (!(v >= spec.min && v <= spec.max)) {
      throw ConfigError(to_string(c.method) + "." + std::string(spec.name) + " = " + std::to_string(v) +
                        " outside [" + std::to_string(spec.min) + ", " + std::to_string(spec.max) + "]");
    }
  }
  for (const auto& [key, value] : c.hyperparameters) {
    (void)value;
    if (std::none_of(info.hyperparameters.begin(), info.hyperparameters.end(),
                     [&](const HyperparameterSpec& s) { return s.name == key; })) {
      throw ConfigError(to_string(c.method) + " has no hyperparameter '" + key + "'");
    }
  }
}

struct RunOutcome {
  double best_value = 0.0;
  std::vector<double> best_point;
  std::uint64_t evaluations_used = 0;
  std::uint64_t seed = 0;

  friend bool operator==(const RunOutcome&, const RunOutcome&) = default;
};

inline void repair_to_box(std::span<double> x, const Box& box) {
  for (double& v : x) v = std::clamp(v, box.lower(), box.upper());
}

inline std::vector<double> repair_to_box(std::vector<double> x, const Box& box) {
  repair_to_box(std::span<double>(x), box);
  return x;
}

using Population = std::vector<std::vector<double>>;

inline std::vector<double> uniform_point(const Box& box, Rng& rng) {
  std::vector<double> x(box.dimension);
  for (double& v : x) v = uniform(rng, box.lower(), box.upper());
  return x;
}

// Uniform i.i.d. points for every method, CenterSampler included.
inline Population ask_initial_population(const OptimizerConfig& config, const Box& box, Rng& rng) {
  Population pop;
  pop.reserve(config.population_size);
  for (std::size_t i = 0; i < config.population_size; ++i) pop.push_back(uniform_point(box, rng));
  return pop;
}

namespace detail {

// Evaluates the whole population; the caller guarantees the budget covers it.
inline std::vector<double> evaluate_all(ObjectiveHandle& handle, const Population& pop) {
  std::vector<double> values;
  values.reserve(pop.size());
  for (const auto& x : pop) values.push_back(handle.evaluate(x));
  return values;
}

inline std::size_t argmin(std::span<const double> values) {
  return static_cast<std::size_t>(std::min_element(values.begin(), values.end()) - values.begin());
}

}  // namespace detail

}  // namespace cbias
