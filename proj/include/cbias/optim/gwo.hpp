#pragma once

#include <limits>

#include "cbias/optim/config.hpp"

namespace cbias::methods {

// Grey wolf optimizer. Each wolf moves to the mean of three points guided by
// the alpha, beta and delta leaders (best three positions seen so far).
// The coefficient a decays linearly from its initial value to 0 over the
// generations the budget allows.
inline void grey_wolf(const OptimizerConfig& config, ObjectiveHandle& handle, Rng& rng) {
  const Box box = handle.box();
  const std::size_t np = config.population_size;
  const std::size_t dim = box.dimension;
  const double a0 = config.param("a");
  const double generations = std::max(1.0, static_cast<double>((handle.remaining() - np) / np));

  Population wolves = ask_initial_population(config, box, rng);
  std::array<std::vector<double>, 3> leader;
  std::array<double, 3> leader_value;
  leader_value.fill(std::numeric_limits<double>::infinity());
  for (auto& l : leader) l.assign(dim, 0.0);

  auto offer = [&](const std::vector<double>& x, double v) {
    if (v < leader_value[0]) {
      leader[2] = std::move(leader[1]);
      leader_value[2] = leader_value[1];
      leader[1] = std::move(leader[0]);
      leader_value[1] = leader_value[0];
      leader[0] = x;
      leader_value[0] = v;
    } else if (v < leader_value[1]) {
      leader[2] = std::move(leader[1]);
      leader_value[2] = leader_value[1];
      leader[1] = x;
      leader_value[1] = v;
    } else if (v < leader_value[2]) {
      leader[2] = x;
      leader_value[2] = v;
    }
  };

  for (const auto& w : wolves) offer(w, handle.evaluate(w));

  for (std::size_t t = 0; !handle.exhausted(); ++t) {
    const double a = a0 * std::max(0.0, 1.0 - static_cast<double>(t) / generations);
    for (std::size_t i = 0; i < np && !handle.exhausted(); ++i) {
      auto& x = wolves[i];
      for (std::size_t j = 0; j < dim; ++j) {
        double sum = 0.0;
        for (const auto& l : leader) {
          const double A = 2.0 * a * uniform01(rng) - a;
          const double C = 2.0 * uniform01(rng);
          const double D = std::abs(C * l[j] - x[j]);
          sum += l[j] - A * D;
        }
        x[j] = sum / 3.0;
      }
      repair_to_box(std::span<double>(x), box);
    }
    for (std::size_t i = 0; i < np && !handle.exhausted(); ++i) offer(wolves[i], handle.evaluate(wolves[i]));
  }
}

}  // namespace cbias::methods
