#pragma once

#include <cmath>

#include "cbias/optim/config.hpp"

namespace cbias::methods {

namespace detail_abc {

inline double fitness(double value) { return value >= 0.0 ? 1.0 / (1.0 + value) : 1.0 + std::abs(value); }

}  // namespace detail_abc

// Artificial bee colony: colony = population_size, half of it food sources.
// Employed and onlooker bees perturb one coordinate toward/away from a random
// neighbour; a source that fails `limit` times is re-seeded by a scout.
inline void artificial_bee_colony(const OptimizerConfig& config, ObjectiveHandle& handle, Rng& rng) {
  const Box box = handle.box();
  const std::size_t dim = box.dimension;
  const std::size_t sources = std::max<std::size_t>(config.population_size / 2, 2);
  const auto limit = static_cast<std::size_t>(
      std::max(1.0, std::round(config.param("limit_scale") * static_cast<double>(config.population_size * dim))));

  OptimizerConfig init = config;
  init.population_size = sources;
  Population food = ask_initial_population(init, box, rng);
  std::vector<double> value = detail::evaluate_all(handle, food);
  std::vector<std::size_t> trials(sources, 0);
  std::vector<double> candidate(dim);

  auto try_neighbour = [&](std::size_t i) {
    std::size_t k;
    do { k = uniform_index(rng, sources); } while (k == i);
    const std::size_t j = uniform_index(rng, dim);
    const double phi = uniform(rng, -1.0, 1.0);
    candidate = food[i];
    candidate[j] = food[i][j] + phi * (food[i][j] - food[k][j]);
    repair_to_box(std::span<double>(candidate), box);
    const double v = handle.evaluate(candidate);
    if (v <= value[i]) {
      food[i] = candidate;
      value[i] = v;
      trials[i] = 0;
    } else {
      ++trials[i];
    }
  };

  while (!handle.exhausted()) {
    for (std::size_t i = 0; i < sources && !handle.exhausted(); ++i) try_neighbour(i);

    std::vector<double> fit(sources);
    double total = 0.0;
    for (std::size_t i = 0; i < sources; ++i) total += fit[i] = detail_abc::fitness(value[i]);
    for (std::size_t n = 0; n < sources && !handle.exhausted(); ++n) {
      double pick = uniform01(rng) * total;
      std::size_t i = 0;
      while (i + 1 < sources && pick >= fit[i]) pick -= fit[i++];
      try_neighbour(i);
    }

    const std::size_t worst = static_cast<std::size_t>(std::max_element(trials.begin(), trials.end()) - trials.begin());
    if (trials[worst] > limit && !handle.exhausted()) {
      food[worst] = uniform_point(box, rng);
      value[worst] = handle.evaluate(food[worst]);
      trials[worst] = 0;
    }
  }
}

}  // namespace cbias::methods
