#pragma once

// Classical 13-function test suite and the shift transform x -> f(x + s).

#include <algorithm>
#include <array>
#include <cctype>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <numbers>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "cbias/errors.hpp"
#include "cbias/rng.hpp"

namespace cbias {

enum class FunctionId : std::uint8_t { F01 = 1, F02, F03, F04, F05, F06, F07, F08, F09, F10, F11, F12, F13 };

inline constexpr std::array<FunctionId, 13> kAllFunctions = {
    FunctionId::F01, FunctionId::F02, FunctionId::F03, FunctionId::F04, FunctionId::F05,
    FunctionId::F06, FunctionId::F07, FunctionId::F08, FunctionId::F09, FunctionId::F10,
    FunctionId::F11, FunctionId::F12, FunctionId::F13};

enum class Modality : std::uint8_t { Unimodal, Multimodal };
enum class Separability : std::uint8_t { Separable, NonSeparable };

// F06 ships in two forms. Smooth, sum (x_i + 0.5)^2, reproduces the
// published f(0) = 7.5; Floor, sum floor(x_i + 0.5)^2, is the textbook form.
enum class StepVariant : std::uint8_t { Smooth, Floor };

// Minimum of -x sin(sqrt|x|) per coordinate, reached at x = 420.968746...
inline constexpr double kSchwefel226Min = -418.98288727243369;

constexpr int ordinal(FunctionId id) noexcept { return static_cast<int>(id); }

inline std::string to_string(FunctionId id) {
  const int n = ordinal(id);
  return std::string("F") + (n < 10 ? "0" : "") + std::to_string(n);
}

// Accepts "F01", "f1", "F1", "1".
inline FunctionId parse_function_id(std::string_view text) {
  std::string_view digits = text;
  if (!digits.empty() && (digits.front() == 'F' || digits.front() == 'f')) digits.remove_prefix(1);
  if (digits.empty() || digits.size() > 2 ||
      !std::all_of(digits.begin(), digits.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); })) {
    throw ConfigError("unknown function id '" + std::string(text) + "'");
  }
  const int n = std::stoi(std::string(digits));
  if (n < 1 || n > 13) throw ConfigError("unknown function id '" + std::string(text) + "'");
  return static_cast<FunctionId>(n);
}

inline std::string_view to_string(Modality m) { return m == Modality::Unimodal ? "U" : "M"; }
inline std::string_view to_string(Separability s) { return s == Separability::Separable ? "S" : "N"; }

// Search box [-bound, bound]^dimension.
struct Box {
  double bound = 0.0;
  std::size_t dimension = 0;

  [[nodiscard]] double lower() const noexcept { return -bound; }
  [[nodiscard]] double upper() const noexcept { return bound; }
  [[nodiscard]] double width() const noexcept { return 2.0 * bound; }
  [[nodiscard]] bool contains(std::span<const double> x) const noexcept {
    return x.size() == dimension &&
           std::all_of(x.begin(), x.end(), [this](double v) { return v >= -bound && v <= bound; });
  }
};

struct BenchmarkFunction {
  FunctionId id = FunctionId::F01;
  std::string name;
  Modality modality = Modality::Unimodal;
  Separability separability = Separability::Separable;
  double range = 0.0;      // box is [-range, range]^d
  double f_star = 0.0;     // optimal value at this dimension
  double x_star = 0.0;     // optimizer coordinate, replicated
  double f_at_zero = 0.0;  // tabulated value at the zero vector (dimension 30)
  std::size_t dimension = 0;
  StepVariant step_variant = StepVariant::Smooth;

  [[nodiscard]] Box box() const noexcept { return {range, dimension}; }
  [[nodiscard]] bool noisy() const noexcept { return id == FunctionId::F07; }
};

namespace detail {

struct FunctionMeta {
  FunctionId id;
  std::string_view name;
  Modality modality;
  Separability separability;
  double range;
  double x_star;
  double f_at_zero;
};

inline constexpr std::array<FunctionMeta, 13> kTable = {{
    {FunctionId::F01, "Sphere", Modality::Unimodal, Separability::Separable, 100.0, 0.0, 0.0},
    {FunctionId::F02, "Schwefel 2.22", Modality::Unimodal, Separability::NonSeparable, 100.0, 0.0, 0.0},
    {FunctionId::F03, "Schwefel 1.2", Modality::Unimodal, Separability::NonSeparable, 100.0, 0.0, 0.0},
    {FunctionId::F04, "Schwefel 2.21", Modality::Unimodal, Separability::Separable, 100.0, 0.0, 0.0},
    {FunctionId::F05, "Rosenbrock", Modality::Unimodal, Separability::NonSeparable, 30.0, 1.0, 29.0},
    {FunctionId::F06, "Step", Modality::Unimodal, Separability::Separable, 100.0, -0.5, 7.5},
    {FunctionId::F07, "Quartic with noise", Modality::Unimodal, Separability::Separable, 1.28, 0.0, 0.0},
    {FunctionId::F08, "Schwefel 2.26", Modality::Multimodal, Separability::Separable, 500.0, 420.968746, 0.0},
    {FunctionId::F09, "Rastrigin", Modality::Multimodal, Separability::Separable, 5.12, 0.0, 0.0},
    {FunctionId::F10, "Ackley", Modality::Multimodal, Separability::NonSeparable, 32.0, 0.0, 0.0},
    {FunctionId::F11, "Griewank", Modality::Multimodal, Separability::NonSeparable, 600.0, 0.0, 0.0},
    {FunctionId::F12, "Penalized1", Modality::Multimodal, Separability::NonSeparable, 50.0, -1.0, 1.67},
    {FunctionId::F13, "Penalized2", Modality::Multimodal, Separability::Separable, 50.0, 1.0, 3.0},
}};

inline double penalty(double x, double a, double k, double m) {
  if (x > a) return k * std::pow(x - a, m);
  if (x < -a) return k * std::pow(-x - a, m);
  return 0.0;
}

inline double sqr(double v) { return v * v; }

inline double sphere(std::span<const double> x) {
  double s = 0.0;
  for (double v : x) s += v * v;
  return s;
}

inline double schwefel_222(std::span<const double> x) {
  double sum = 0.0;
  double prod = 1.0;
  for (double v : x) {
    sum += std::abs(v);
    prod *= std::abs(v);
  }
  return sum + prod;
}

inline double schwefel_12(std::span<const double> x) {
  double s = 0.0;
  double prefix = 0.0;
  for (double v : x) {
    prefix += v;
    s += prefix * prefix;
  }
  return s;
}

inline double schwefel_221(std::span<const double> x) {
  double m = 0.0;
  for (double v : x) m = std::max(m, std::abs(v));
  return m;
}

inline double rosenbrock(std::span<const double> x) {
  double s = 0.0;
  for (std::size_t i = 0; i + 1 < x.size(); ++i) s += 100.0 * sqr(x[i + 1] - x[i] * x[i]) + sqr(x[i] - 1.0);
  return s;
}

inline double step(std::span<const double> x, StepVariant variant) {
  double s = 0.0;
  if (variant == StepVariant::Smooth) {
    for (double v : x) s += sqr(v + 0.5);
  } else {
    for (double v : x) s += sqr(std::floor(v + 0.5));
  }
  return s;
}

inline double quartic(std::span<const double> x) {
  double s = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) s += static_cast<double>(i + 1) * sqr(sqr(x[i]));
  return s;
}

inline double schwefel_226(std::span<const double> x) {
  double s = 0.0;
  for (double v : x) s -= v * std::sin(std::sqrt(std::abs(v)));
  return s + 0.0;  // -0.0 -> 0.0
}

inline double rastrigin(std::span<const double> x) {
  double s = 0.0;
  for (double v : x) s += v * v - 10.0 * std::cos(2.0 * std::numbers::pi * v) + 10.0;
  return s;
}

// Written so that the zero vector evaluates to exactly 0.
inline double ackley(std::span<const double> x) {
  const double d = static_cast<double>(x.size());
  double sq = 0.0;
  double cs = 0.0;
  for (double v : x) {
    sq += v * v;
    cs += std::cos(2.0 * std::numbers::pi * v);
  }
  return 20.0 * (1.0 - std::exp(-0.2 * std::sqrt(sq / d))) + std::numbers::e * (1.0 - std::exp(cs / d - 1.0));
}

inline double griewank(std::span<const double> x) {
  double sum = 0.0;
  double prod = 1.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sum += x[i] * x[i];
    prod *= std::cos(x[i] / std::sqrt(static_cast<double>(i + 1)));
  }
  return sum / 4000.0 - prod + 1.0;
}

inline double penalized1(std::span<const double> x) {
  const std::size_t d = x.size();
  auto y = [&](std::size_t i) { return 1.0 + (x[i] + 1.0) / 4.0; };
  double s = 10.0 * sqr(std::sin(std::numbers::pi * y(0)));
  for (std::size_t i = 0; i + 1 < d; ++i) s += sqr(y(i) - 1.0) * (1.0 + 10.0 * sqr(std::sin(std::numbers::pi * y(i + 1))));
  s += sqr(y(d - 1) - 1.0);
  double p = 0.0;
  for (double v : x) p += penalty(v, 10.0, 100.0, 4.0);
  return std::numbers::pi / static_cast<double>(d) * s + p;
}

inline double penalized2(std::span<const double> x) {
  const std::size_t d = x.size();
  double s = sqr(std::sin(3.0 * std::numbers::pi * x[0]));
  for (std::size_t i = 0; i + 1 < d; ++i) s += sqr(x[i] - 1.0) * (1.0 + sqr(std::sin(3.0 * std::numbers::pi * x[i + 1])));
  s += sqr(x[d - 1] - 1.0) * (1.0 + sqr(std::sin(2.0 * std::numbers::pi * x[d - 1])));
  double p = 0.0;
  for (double v : x) p += penalty(v, 5.0, 100.0, 4.0);
  return 0.1 * s + p;
}

}  // namespace detail

inline BenchmarkFunction make_function(FunctionId id, std::size_t dimension,
                                       StepVariant step_variant = StepVariant::Smooth) {
  if (ordinal(id) < 1 || ordinal(id) > 13) throw ConfigError("unknown function id");
  if (dimension < 2) throw ConfigError("dimension must be at least 2");
  const auto& m = detail::kTable[static_cast<std::size_t>(ordinal(id) - 1)];
  BenchmarkFunction f;
  f.id = id;
  f.name = std::string(m.name);
  f.modality = m.modality;
  f.separability = m.separability;
  f.range = m.range;
  f.x_star = m.x_star;
  f.f_at_zero = m.f_at_zero;
  f.dimension = dimension;
  f.step_variant = step_variant;
  f.f_star = id == FunctionId::F08 ? kSchwefel226Min * static_cast<double>(dimension) : 0.0;
  if (id == FunctionId::F06 && step_variant == StepVariant::Floor) {
    f.x_star = 0.0;
    f.f_at_zero = 0.0;
  }
  return f;
}

// Objective value at x. Points outside the box are accepted; only F07
// consumes the noise stream (one U[0,1) draw per call when non-null).
inline double evaluate(const BenchmarkFunction& f, std::span<const double> x, Rng* noise = nullptr) {
  if (x.size() != f.dimension) {
    throw ContractViolation("point has dimension " + std::to_string(x.size()) + ", function expects " +
                            std::to_string(f.dimension));
  }
  if (std::any_of(x.begin(), x.end(), [](double v) { return std::isnan(v); })) {
    throw ContractViolation("NaN coordinate passed to " + to_string(f.id));
  }
  switch (f.id) {
    case FunctionId::F01: return detail::sphere(x);
    case FunctionId::F02: return detail::schwefel_222(x);
    case FunctionId::F03: return detail::schwefel_12(x);
    case FunctionId::F04: return detail::schwefel_221(x);
    case FunctionId::F05: return detail::rosenbrock(x);
    case FunctionId::F06: return detail::step(x, f.step_variant);
    case FunctionId::F07: return detail::quartic(x) + (noise != nullptr ? uniform01(*noise) : 0.0);
    case FunctionId::F08: return detail::schwefel_226(x);
    case FunctionId::F09: return detail::rastrigin(x);
    case FunctionId::F10: return detail::ackley(x);
    case FunctionId::F11: return detail::griewank(x);
    case FunctionId::F12: return detail::penalized1(x);
    case FunctionId::F13: return detail::penalized2(x);
  }
  throw ConfigError("unknown function id");
}

struct ShiftSpec {
  double fraction = 0.0;
  std::vector<double> vector;
};

// Every component equals fraction * (box width).
inline ShiftSpec make_shift(const BenchmarkFunction& f, double fraction) {
  if (!(fraction >= 0.0 && fraction < 0.5)) {
    throw ConfigError("shift fraction must lie in [0, 0.5), got " + std::to_string(fraction));
  }
  return {fraction, std::vector<double>(f.dimension, fraction * 2.0 * f.range)};
}

// x -> base(x + s) on the base function's own box; the box does not move.
struct ShiftedProblem {
  BenchmarkFunction base;
  ShiftSpec shift;

  [[nodiscard]] std::size_t dimension() const noexcept { return base.dimension; }
  [[nodiscard]] Box box() const noexcept { return base.box(); }
  [[nodiscard]] std::vector<double> optimizer() const {
    std::vector<double> x(base.dimension);
    for (std::size_t i = 0; i < x.size(); ++i) x[i] = base.x_star - shift.vector[i];
    return x;
  }
};

inline ShiftedProblem make_problem(FunctionId id, std::size_t dimension, double shift_fraction,
                                   StepVariant step_variant = StepVariant::Smooth) {
  auto base = make_function(id, dimension, step_variant);
  auto shift = make_shift(base, shift_fraction);
  return {std::move(base), std::move(shift)};
}

// scratch receives x + s and must have the problem's dimension.
inline double shifted_evaluate(const ShiftedProblem& p, std::span<const double> x, Rng* noise,
                               std::span<double> scratch) {
  if (x.size() != p.dimension() || scratch.size() != p.dimension()) {
    throw ContractViolation("point dimension does not match shifted problem");
  }
  for (std::size_t i = 0; i < x.size(); ++i) scratch[i] = x[i] + p.shift.vector[i];
  return evaluate(p.base, scratch, noise);
}

inline double shifted_evaluate(const ShiftedProblem& p, std::span<const double> x, Rng* noise = nullptr) {
  std::vector<double> scratch(p.dimension());
  return shifted_evaluate(p, x, noise, scratch);
}

}  // namespace cbias
