// Randomized invariant checks. Every property runs on at least 100 instances.

#include <gtest/gtest.h>

#include <algorithm>
#include <bit>
#include <cmath>
#include <vector>

#include "cbias/cbias.hpp"

using namespace cbias;

namespace {

constexpr int kInstances = 100;

template <typename T, std::size_t N>
T pick(Rng& rng, const std::array<T, N>& items) {
  return items[uniform_index(rng, N)];
}

std::vector<double> random_point(Rng& rng, const Box& box) { return uniform_point(box, rng); }

std::vector<double> random_ratios(Rng& rng) {
  std::vector<double> r(1 + uniform_index(rng, 20));
  for (double& v : r) v = std::exp(uniform(rng, -20.0, 20.0));
  return r;
}

}  // namespace

TEST(Properties, BudgetLawAndBoxFeasibility) {
  Rng rng(2024);
  for (int i = 0; i < kInstances; ++i) {
    const MethodId m = pick(rng, kAllMethods);
    const FunctionId f = pick(rng, kAllFunctions);
    const std::size_t dim = 2 + uniform_index(rng, 9);
    const std::uint64_t budget = 50 + uniform_index(rng, 1500);
    const double shift = uniform(rng, 0.0, 0.49);
    ObjectiveHandle h(make_problem(f, dim, shift), budget, rng());
    const Box box = h.box();
    std::uint64_t submitted = 0;
    bool feasible = true;
    h.set_observer([&](std::span<const double> x, double) {
      ++submitted;
      feasible = feasible && box.contains(x);
    });
    const auto out = minimize(default_config(m, rng()), h);
    SCOPED_TRACE(to_string(m) + " " + to_string(f) + " budget " + std::to_string(budget));
    EXPECT_LE(out.evaluations_used, budget);
    EXPECT_EQ(submitted, out.evaluations_used);
    EXPECT_TRUE(feasible);
    EXPECT_TRUE(box.contains(out.best_point));
  }
}

TEST(Properties, ShiftIdentityIsBitwise) {
  Rng rng(1);
  for (auto id : kAllFunctions) {
    const auto p = make_problem(id, 30, 0.0);
    for (int i = 0; i < 1000; ++i) {
      const auto x = random_point(rng, p.box());
      ASSERT_EQ(std::bit_cast<std::uint64_t>(shifted_evaluate(p, x)),
                std::bit_cast<std::uint64_t>(evaluate(p.base, x)))
          << to_string(id);
    }
  }
}

TEST(Properties, ShiftRelationIsBitwise) {
  Rng rng(2);
  for (auto id : kAllFunctions) {
    for (int i = 0; i < 1000; ++i) {
      const double fraction = uniform(rng, 0.0, 0.49);
      const auto p = make_problem(id, 10, fraction);
      const auto x = random_point(rng, p.box());
      std::vector<double> moved(x.size());
      for (std::size_t j = 0; j < x.size(); ++j) moved[j] = x[j] + p.shift.vector[j];
      ASSERT_EQ(std::bit_cast<std::uint64_t>(shifted_evaluate(p, x)),
                std::bit_cast<std::uint64_t>(evaluate(p.base, moved)))
          << to_string(id);
      ASSERT_TRUE(std::all_of(p.shift.vector.begin(), p.shift.vector.end(),
                              [&](double s) { return s == p.shift.vector.front(); }));
    }
  }
}

TEST(Properties, NoPointBeatsOptimum) {
  Rng rng(3);
  for (auto id : kAllFunctions) {
    const auto f = make_function(id, 30);
    for (int i = 0; i < 10000; ++i) {
      ASSERT_GE(evaluate(f, random_point(rng, f.box())), f.f_star - 1e-9) << to_string(id);
    }
  }
}

TEST(Properties, SeparableCoordinatesActIndependently) {
  Rng rng(4);
  for (auto id : {FunctionId::F01, FunctionId::F09}) {
    const auto f = make_function(id, 8);
    for (int i = 0; i < kInstances; ++i) {
      const std::size_t j = uniform_index(rng, f.dimension);
      const double a = uniform(rng, -f.range, f.range);
      const double b = uniform(rng, -f.range, f.range);
      auto delta = [&](std::vector<double> x) {
        x[j] = a;
        const double fa = evaluate(f, x);
        x[j] = b;
        return fa - evaluate(f, x);
      };
      const double d1 = delta(random_point(rng, f.box()));
      const double d2 = delta(random_point(rng, f.box()));
      EXPECT_NEAR(d1, d2, 1e-9 * std::max(1.0, f.range * f.range * static_cast<double>(f.dimension)));
    }
  }
}

TEST(Properties, ClampIdempotent) {
  Rng rng(5);
  for (int i = 0; i < 1000; ++i) {
    const double floor = std::exp(uniform(rng, -30.0, 0.0));
    const double e = uniform01(rng) < 0.5 ? uniform(rng, -1e-6, 1e-6) : std::exp(uniform(rng, -40.0, 20.0));
    const double once = clamp_error(e, floor);
    EXPECT_EQ(clamp_error(once, floor), once);
    EXPECT_GE(once, floor);
  }
}

TEST(Properties, GeomeanScaleCovariance) {
  Rng rng(6);
  for (int i = 0; i < kInstances; ++i) {
    const auto r = random_ratios(rng);
    const double c = std::exp(uniform(rng, -10.0, 10.0));
    auto scaled = r;
    for (double& v : scaled) v *= c;
    const double expected = c * geometric_mean(r);
    EXPECT_NEAR(geometric_mean(scaled), expected, 1e-12 * expected);
  }
}

TEST(Properties, GeomeanPermutationInvariance) {
  Rng rng(7);
  for (int i = 0; i < kInstances; ++i) {
    const auto r = random_ratios(rng);
    auto shuffled = r;
    std::shuffle(shuffled.begin(), shuffled.end(), rng);
    const double g = geometric_mean(r);
    EXPECT_NEAR(geometric_mean(shuffled), g, 1e-12 * g);
  }
}

TEST(Properties, FloorDominanceGivesUnitRatio) {
  Rng rng(8);
  for (int i = 0; i < kInstances; ++i) {
    const double floor = std::exp(uniform(rng, -25.0, -5.0));
    const std::size_t runs = 1 + uniform_index(rng, 25);
    auto errors = [&] {
      std::vector<double> e(runs);
      for (double& v : e) v = clamp_error(uniform(rng, -1e-7, floor), floor);
      return e;
    };
    const auto u = make_cell(MethodId::DE, FunctionId::F03, Variant::Unshifted, errors());
    const auto s = make_cell(MethodId::DE, FunctionId::F03, Variant::Shifted, errors());
    EXPECT_EQ(compute_ratio(u, s).ratio, 1.0);
  }
}

TEST(Properties, VerdictMonotoneInThreshold) {
  Rng rng(9);
  for (int i = 0; i < kInstances; ++i) {
    const double g = std::exp(uniform(rng, -5.0, 15.0));
    const double t1 = 1.0 + std::exp(uniform(rng, -5.0, 10.0));
    const double t2 = t1 + std::exp(uniform(rng, -5.0, 10.0));
    if (classify(g, t1) == Verdict::NotDetected) {
      EXPECT_EQ(classify(g, t2), Verdict::NotDetected);
    }
  }
}

TEST(Properties, ResultsJsonRoundTrip) {
  Rng rng(10);
  for (int i = 0; i < kInstances; ++i) {
    AuditResults r;
    r.config.master_seed = rng();
    r.config.shift_fraction = uniform(rng, 0.0, 0.49);
    r.config.methods = {pick(rng, kAllMethods)};
    r.config.populations[MethodId::DE] = 10 + uniform_index(rng, 90);
    r.config.hyperparameters[MethodId::PSO]["w"] = uniform01(rng);
    std::vector<AuditRecord> records;
    for (auto f : kAllFunctions) {
      std::vector<AuditCellResult> pair;
      for (auto v : {Variant::Unshifted, Variant::Shifted}) {
        std::vector<double> errs(1 + uniform_index(rng, 5));
        for (double& e : errs) e = std::exp(uniform(rng, -18.0, 40.0));
        pair.push_back(make_cell(r.config.methods.front(), f, v, errs));
        r.cells.push_back(pair.back());
      }
      records.push_back(compute_ratio(pair[0], pair[1]));
    }
    r.reports.push_back(make_report(to_string(r.config.methods.front()), records, 10.0));
    const auto back = results_from_json(Json::parse(dump_results(r)));
    ASSERT_EQ(back, r);
  }
}
