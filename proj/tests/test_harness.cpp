#include <gtest/gtest.h>

#include <vector>

#include "cbias/harness.hpp"

using namespace cbias;

namespace {

// Ratios printed in the worked example table (ABC, DE, SBO and RKO columns).
const std::vector<double> kDeRatios = {6.83e-1, 1.10, 8.68e-1, 9.70e-1, 9.66e-1, 1.06, 9.56e-1,
                                       1.05,    1.00, 9.41e-1, 9.91e-1, 1.12,    9.34e-1};
const std::vector<double> kSboRatios = {2.05, 4.95e4, 6.14, 1.55, 2.07, 1.79, 1.88, 8.58e-1, 1.41, 1.16, 1.04, 1.89, 3.07};
const std::vector<double> kRkoRatios = {1.30e2, 2.05e8, 5.03e6, 2.54e8, 1.58,   1.74e2, 1.76e2,
                                        1.17,   2.99e9, 2.86e8, 1.25e6, 3.37e8, 2.68};
const std::vector<double> kAbcRatios = {8.08e-1, 1.93e-1, 9.86e-1, 1.00, 9.86,    1.14, 1.55,
                                        1.14,    1.22,    8.70e-1, 1.06, 1.41,    5.46};

AuditConfig small_config() {
  AuditConfig c;
  c.dimension = 5;
  c.budget = 600;
  c.runs = 2;
  c.master_seed = 77;
  c.methods = {MethodId::GWO, MethodId::DE, MethodId::RandomSearch};
  c.functions = {FunctionId::F09, FunctionId::F01, FunctionId::F07};
  return c;
}

}  // namespace

TEST(ClampError, Examples) {
  EXPECT_EQ(clamp_error(1e-12, 1e-8), 1e-8);
  EXPECT_EQ(clamp_error(0.5, 1e-8), 0.5);
  EXPECT_EQ(clamp_error(1e-8, 1e-8), 1e-8);
  EXPECT_EQ(clamp_error(-5e-7, 1e-8), 1e-8);
  EXPECT_THROW(clamp_error(-1e-3, 1e-8), InvariantViolation);
}

TEST(ComputeRatio, Examples) {
  const auto u = make_cell(MethodId::DE, FunctionId::F01, Variant::Unshifted, {3.82e-2});
  const auto s = make_cell(MethodId::DE, FunctionId::F01, Variant::Shifted, {2.61e-2});
  EXPECT_NEAR(compute_ratio(u, s).ratio, 6.83e-1, 5e-4);
  EXPECT_EQ(compute_ratio(u, make_cell(MethodId::DE, FunctionId::F01, Variant::Shifted, {3.82e-2})).ratio, 1.0);

  const auto tiny = make_cell(MethodId::SCA, FunctionId::F02, Variant::Unshifted, {1e-8});
  const auto big = make_cell(MethodId::SCA, FunctionId::F02, Variant::Shifted, {2.05});
  EXPECT_NEAR(compute_ratio(tiny, big).ratio, 2.05e8, 1.0);

  EXPECT_THROW(compute_ratio(u, big), ContractViolation);
  EXPECT_THROW(compute_ratio(s, u), ContractViolation);
}

TEST(GeometricMean, PublishedColumns) {
  EXPECT_NEAR(geometric_mean(kDeRatios), 9.66e-1, 9.66e-3);
  EXPECT_NEAR(geometric_mean(kSboRatios), 3.95, 3.95e-2);
  EXPECT_NEAR(geometric_mean(kRkoRatios), 7.36e4, 7.36e2);
  EXPECT_NEAR(geometric_mean(kAbcRatios), 1.29, 1.29e-2);
  EXPECT_EQ(geometric_mean(std::vector<double>(13, 1.0)), 1.0);
}

TEST(GeometricMean, Contract) {
  EXPECT_THROW(geometric_mean(std::vector<double>{}), ContractViolation);
  EXPECT_THROW(geometric_mean(std::vector<double>{1.0, 0.0}), ContractViolation);
  EXPECT_THROW(geometric_mean(std::vector<double>{1.0, -2.0}), ContractViolation);
  // Log-domain accumulation survives products that overflow.
  EXPECT_NEAR(geometric_mean(std::vector<double>(100, 1e300)), 1e300, 1e288);
}

TEST(Classify, Threshold) {
  EXPECT_EQ(classify(7.36e4, 10.0), Verdict::CenterBiased);
  EXPECT_EQ(classify(3.95, 10.0), Verdict::NotDetected);
  EXPECT_EQ(classify(10.0, 10.0), Verdict::NotDetected);
  EXPECT_THROW(classify(0.0, 10.0), ContractViolation);
}

TEST(RunCell, SingleRun) {
  auto c = small_config();
  c.runs = 1;
  const auto cell = run_cell(c, MethodId::DE, FunctionId::F09, Variant::Shifted);
  ASSERT_EQ(cell.run_errors.size(), 1u);
  EXPECT_EQ(cell.run_errors.front(), cell.mean_error);
}

TEST(RunCell, CenterSamplerFloored) {
  auto c = ci_preset();
  c.budget = 5000;
  c.runs = 5;
  const auto cell = run_cell(c, MethodId::CenterSampler, FunctionId::F01, Variant::Unshifted);
  EXPECT_EQ(cell.mean_error, 1e-8);
  for (double e : cell.run_errors) EXPECT_EQ(e, 1e-8);
}

TEST(RunCell, DifferentialEvolutionMagnitude) {
  auto c = paper_preset();
  const auto cell = run_cell(c, MethodId::DE, FunctionId::F01, Variant::Unshifted);
  EXPECT_EQ(cell.run_errors.size(), 20u);
  EXPECT_GE(cell.mean_error, 1e-8);
  EXPECT_LE(cell.mean_error, 1e-1);
}

TEST(RunCell, ErrorsAtOrAboveFloor) {
  const auto c = small_config();
  for (auto v : {Variant::Unshifted, Variant::Shifted}) {
    const auto cell = run_cell(c, MethodId::GWO, FunctionId::F07, v);
    EXPECT_EQ(cell.run_errors.size(), c.runs);
    for (double e : cell.run_errors) EXPECT_GE(e, c.error_floor);
  }
}

TEST(RunAudit, RejectsEmptyMethods) {
  auto c = small_config();
  c.methods.clear();
  EXPECT_THROW(run_audit(c), ContractViolation);
  c = small_config();
  c.runs = 0;
  EXPECT_THROW(run_audit(c), ConfigError);
}

TEST(RunAudit, CanonicalAndSchedulingIndependent) {
  const auto c = small_config();
  const auto serial = run_audit(c, 1);
  const auto parallel = run_audit(c, 4);
  EXPECT_EQ(serial, parallel);

  ASSERT_EQ(serial.reports.size(), 3u);
  EXPECT_EQ(serial.reports[0].method, "RandomSearch");
  EXPECT_EQ(serial.reports[1].method, "DE");
  EXPECT_EQ(serial.reports[2].method, "GWO");
  ASSERT_EQ(serial.cells.size(), 3u * 3u * 2u);
  EXPECT_EQ(serial.cells[0].function, FunctionId::F01);
  EXPECT_EQ(serial.cells[0].variant, Variant::Unshifted);
  EXPECT_EQ(serial.cells[1].variant, Variant::Shifted);

  for (const auto& rep : serial.reports) {
    std::vector<double> ratios;
    for (const auto& r : rep.records) ratios.push_back(r.ratio);
    EXPECT_NEAR(rep.geomean, geometric_mean(ratios), 1e-12 * rep.geomean);
    EXPECT_EQ(rep.verdict, classify(rep.geomean, c.bias_threshold));
  }
}

TEST(RunAudit, CellCallbackSeesEveryCell) {
  const auto c = small_config();
  std::size_t seen = 0;
  const auto results = run_audit(c, 3, [&](const AuditCellResult&) { ++seen; });
  EXPECT_EQ(seen, results.cells.size());
}

TEST(RunAudit, SeedsDependOnCellIdentity) {
  EXPECT_NE(run_seed(1, MethodId::DE, FunctionId::F01, Variant::Unshifted, 0),
            run_seed(1, MethodId::DE, FunctionId::F01, Variant::Shifted, 0));
  EXPECT_NE(run_seed(1, MethodId::DE, FunctionId::F01, Variant::Unshifted, 0),
            run_seed(1, MethodId::DE, FunctionId::F01, Variant::Unshifted, 1));
  EXPECT_NE(run_seed(1, MethodId::DE, FunctionId::F01, Variant::Unshifted, 0),
            run_seed(2, MethodId::DE, FunctionId::F01, Variant::Unshifted, 0));
}

TEST(AuditConfig, Validation) {
  AuditConfig c;
  c.methods = {MethodId::DE};
  EXPECT_NO_THROW(validate(c));
  for (auto mutate : std::vector<void (*)(AuditConfig&)>{
           [](AuditConfig& x) { x.error_floor = 0.0; }, [](AuditConfig& x) { x.bias_threshold = 1.0; },
           [](AuditConfig& x) { x.runs = 0; }, [](AuditConfig& x) { x.shift_fraction = 0.5; },
           [](AuditConfig& x) { x.dimension = 1; }, [](AuditConfig& x) { x.functions.clear(); }}) {
    AuditConfig bad = c;
    mutate(bad);
    EXPECT_THROW(validate(bad), ConfigError);
  }
}

TEST(AuditConfig, Presets) {
  EXPECT_EQ(paper_preset().dimension, 30u);
  EXPECT_EQ(paper_preset().budget, 50000u);
  EXPECT_EQ(paper_preset().runs, 20u);
  EXPECT_EQ(paper_preset().error_floor, 1e-8);
  EXPECT_EQ(paper_preset().bias_threshold, 10.0);
  EXPECT_EQ(paper_preset().shift_fraction, 0.1);
  EXPECT_EQ(ci_preset().budget, 20000u);
  EXPECT_EQ(ci_preset().runs, 5u);
}
