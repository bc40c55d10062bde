#pragma once

#include "cbias/optim/config.hpp"

namespace cbias::methods {

// DE/rand/1/bin with generational replacement.
inline void differential_evolution(const OptimizerConfig& config, ObjectiveHandle& handle, Rng& rng) {
  const Box box = handle.box();
  const std::size_t np = config.population_size;
  const std::size_t dim = box.dimension;
  const double weight = config.param("F");
  const double cr = config.param("CR");

  Population pop = ask_initial_population(config, box, rng);
  std::vector<double> fitness = detail::evaluate_all(handle, pop);
  Population trials(np, std::vector<double>(dim));
  std::vector<double> trial_fitness(np);

  while (!handle.exhausted()) {
    std::size_t produced = 0;
    for (std::size_t i = 0; i < np && !handle.exhausted(); ++i) {
      std::size_t r1, r2, r3;
      do { r1 = uniform_index(rng, np); } while (r1 == i);
      do { r2 = uniform_index(rng, np); } while (r2 == i || r2 == r1);
      do { r3 = uniform_index(rng, np); } while (r3 == i || r3 == r1 || r3 == r2);
      const std::size_t jrand = uniform_index(rng, dim);
      auto& trial = trials[i];
      for (std::size_t j = 0; j < dim; ++j) {
        trial[j] = (uniform01(rng) < cr || j == jrand) ? pop[r1][j] + weight * (pop[r2][j] - pop[r3][j]) : pop[i][j];
      }
      repair_to_box(std::span<double>(trial), box);
      trial_fitness[i] = handle.evaluate(trial);
      produced = i + 1;
    }
    for (std::size_t i = 0; i < produced; ++i) {
      if (trial_fitness[i] <= fitness[i]) {
        pop[i] = trials[i];
        fitness[i] = trial_fitness[i];
      }
    }
  }
}

}  // namespace cbias::methods
