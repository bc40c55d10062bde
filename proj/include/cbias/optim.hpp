#pragma once

// Optimizer front door: configuration, catalog and the `minimize` entry point.

#include "cbias/optim/abc.hpp"
#include "cbias/optim/center_sampler.hpp"
#include "cbias/optim/config.hpp"
#include "cbias/optim/de.hpp"
#include "cbias/optim/gwo.hpp"
#include "cbias/optim/pso.hpp"
#include "cbias/optim/random_search.hpp"
#include "cbias/optim/sca.hpp"

namespace cbias {

// Runs the configured method on a fresh handle until its budget is spent.
// Deterministic for a given (config, problem).
inline RunOutcome minimize(const OptimizerConfig& config, ObjectiveHandle& handle) {
  validate(config);
  if (handle.used() != 0) throw ContractViolation("minimize requires a fresh objective handle");
  if (handle.dimension() < 2) throw ConfigError("problem dimension must be at least 2");
  if (handle.budget() < config.population_size) {
    throw ConfigError("budget " + std::to_string(handle.budget()) + " cannot initialize a population of " +
                      std::to_string(config.population_size));
  }

  Rng rng(config.seed);
  switch (config.method) {
    case MethodId::RandomSearch: methods::random_search(config, handle, rng); break;
    case MethodId::DE: methods::differential_evolution(config, handle, rng); break;
    case MethodId::PSO: methods::particle_swarm(config, handle, rng); break;
    case MethodId::ABC: methods::artificial_bee_colony(config, handle, rng); break;
    case MethodId::GWO: methods::grey_wolf(config, handle, rng); break;
    case MethodId::SCA: methods::sine_cosine(config, handle, rng); break;
    case MethodId::CenterSampler: methods::center_sampler(config, handle, rng); break;
  }
  return {handle.best_value(), handle.best_point(), handle.used(), config.seed};
}

}  // namespace cbias
