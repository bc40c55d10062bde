#pragma once

#include "cbias/optim/config.hpp"

namespace cbias::methods {

// Synthetic positive control for the detector. After a uniform initial
// population it probes the box center once, then samples a Gaussian around
// the center whose spread shrinks linearly to zero with the budget.
inline void center_sampler(const OptimizerConfig& config, ObjectiveHandle& handle, Rng& rng) {
  const Box box = handle.box();
  const double sigma0 = config.param("sigma") * box.bound;
  const auto total = static_cast<double>(handle.budget());

  for (const auto& x : ask_initial_population(config, box, rng)) handle.evaluate(x);
  std::vector<double> x(box.dimension, 0.0);
  if (!handle.exhausted()) handle.evaluate(x);

  std::normal_distribution<double> gauss(0.0, 1.0);
  while (!handle.exhausted()) {
    const double sigma = sigma0 * (1.0 - static_cast<double>(handle.used()) / total);
    for (double& v : x) v = sigma * gauss(rng);
    repair_to_box(std::span<double>(x), box);
    handle.evaluate(x);
  }
}

}  // namespace cbias::methods
