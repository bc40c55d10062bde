#pragma once

#include "cbias/optim/config.hpp"

namespace cbias::methods {

// Global-best PSO with constant inertia and per-coordinate velocity clamp.
inline void particle_swarm(const OptimizerConfig& config, ObjectiveHandle& handle, Rng& rng) {
  const Box box = handle.box();
  const std::size_t np = config.population_size;
  const std::size_t dim = box.dimension;
  const double w = config.param("w");
  const double c1 = config.param("c1");
  const double c2 = config.param("c2");
  const double vmax = config.param("vmax") * box.width();

  Population pos = ask_initial_population(config, box, rng);
  Population vel(np, std::vector<double>(dim));
  for (auto& v : vel) {
    for (double& c : v) c = uniform(rng, -vmax, vmax);
  }
  Population pbest = pos;
  std::vector<double> pbest_value = detail::evaluate_all(handle, pos);
  std::size_t g = detail::argmin(pbest_value);
  std::vector<double> gbest = pbest[g];
  double gbest_value = pbest_value[g];

  while (!handle.exhausted()) {
    for (std::size_t i = 0; i < np && !handle.exhausted(); ++i) {
      auto& x = pos[i];
      auto& v = vel[i];
      for (std::size_t j = 0; j < dim; ++j) {
        const double r1 = uniform01(rng);
        const double r2 = uniform01(rng);
        v[j] = w * v[j] + c1 * r1 * (pbest[i][j] - x[j]) + c2 * r2 * (gbest[j] - x[j]);
        v[j] = std::clamp(v[j], -vmax, vmax);
        x[j] += v[j];
        // Absorbing wall: clamp the position and stop the particle.
        if (x[j] < box.lower() || x[j] > box.upper()) {
          x[j] = std::clamp(x[j], box.lower(), box.upper());
          v[j] = 0.0;
        }
      }
      const double value = handle.evaluate(x);
      if (value < pbest_value[i]) {
        pbest_value[i] = value;
        pbest[i] = x;
      }
    }
    // Synchronous gbest update once per swarm sweep.
    g = detail::argmin(pbest_value);
    if (pbest_value[g] < gbest_value) {
      gbest_value = pbest_value[g];
      gbest = pbest[g];
    }
  }
}

}  // namespace cbias::methods
