#pragma once

#include "cbias/bench.hpp"
#include "cbias/errors.hpp"
#include "cbias/harness.hpp"
#include "cbias/objective.hpp"
#include "cbias/optim.hpp"
#include "cbias/report.hpp"
#include "cbias/rng.hpp"
#include "cbias/serialize.hpp"
