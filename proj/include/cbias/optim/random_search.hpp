#pragma once

#include "cbias/optim/config.hpp"

namespace cbias::methods {

// Uniform sampling of the box until the budget runs out.
inline void random_search(const OptimizerConfig& config, ObjectiveHandle& handle, Rng& rng) {
  const Box box = handle.box();
  for (const auto& x : ask_initial_population(config, box, rng)) handle.evaluate(x);
  std::vector<double> x(box.dimension);
  while (!handle.exhausted()) {
    for (double& v : x) v = uniform(rng, box.lower(), box.upper());
    handle.evaluate(x);
  }
}

}  // namespace cbias::methods
