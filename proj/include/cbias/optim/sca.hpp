#pragma once

#include <limits>
#include <numbers>

#include "cbias/optim/config.hpp"

namespace cbias::methods {

// Sine cosine algorithm: x += r1 * {sin|cos}(r2) * |r3 * P - x| with P the
// best position so far and r1 decaying linearly from a to 0.
inline void sine_cosine(const OptimizerConfig& config, ObjectiveHandle& handle, Rng& rng) {
  const Box box = handle.box();
  const std::size_t np = config.population_size;
  const std::size_t dim = box.dimension;
  const double a = config.param("a");
  const double generations = std::max(1.0, static_cast<double>((handle.remaining() - np) / np));

  Population agents = ask_initial_population(config, box, rng);
  const std::vector<double> init_values = detail::evaluate_all(handle, agents);
  const std::size_t b = detail::argmin(init_values);
  std::vector<double> dest = agents[b];
  double dest_value = init_values[b];

  for (std::size_t t = 0; !handle.exhausted(); ++t) {
    const double r1 = a * std::max(0.0, 1.0 - static_cast<double>(t) / generations);
    for (std::size_t i = 0; i < np && !handle.exhausted(); ++i) {
      auto& x = agents[i];
      for (std::size_t j = 0; j < dim; ++j) {
        const double r2 = 2.0 * std::numbers::pi * uniform01(rng);
        const double r3 = 2.0 * uniform01(rng);
        const double r4 = uniform01(rng);
        const double wave = r4 < 0.5 ? std::sin(r2) : std::cos(r2);
        x[j] += r1 * wave * std::abs(r3 * dest[j] - x[j]);
      }
      repair_to_box(std::span<double>(x), box);
    }
    for (std::size_t i = 0; i < np && !handle.exhausted(); ++i) {
      const double v = handle.evaluate(agents[i]);
      if (v < dest_value) {
        dest_value = v;
        dest = agents[i];
      }
    }
  }
}

}  // namespace cbias::methods
