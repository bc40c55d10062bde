#pragma once

#include <cstdint>
#include <functional>
#include <limits>
#include <span>
#include <utility>
#include <vector>

#include "cbias/bench.hpp"
#include "cbias/errors.hpp"
#include "cbias/rng.hpp"

namespace cbias {

// Budget-metered view of a (possibly shifted) problem. Tracks the best
// value ever returned, F07 noise included.
class ObjectiveHandle {
 public:
  using Observer = std::function<void(std::span<const double> point, double value)>;

  ObjectiveHandle(ShiftedProblem problem, std::uint64_t budget, std::uint64_t noise_seed = 0, bool noisy = true)
      : problem_(std::move(problem)),
        budget_(budget),
        noise_(noise_seed),
        noisy_(noisy),
        scratch_(problem_.dimension()) {
    if (budget_ == 0) throw ConfigError("evaluation budget must be positive");
  }

  double evaluate(std::span<const double> x) {
    if (used_ >= budget_) throw BudgetExhausted();
    const double value = shifted_evaluate(problem_, x, noisy_ ? &noise_ : nullptr, scratch_);
    ++used_;
    if (value < best_value_ || best_point_.empty()) {
      best_value_ = value;
      best_point_.assign(x.begin(), x.end());
    }
    if (record_trace_) trace_.push_back(best_value_);
    if (observer_) observer_(x, value);
    return value;
  }

  [[nodiscard]] const ShiftedProblem& problem() const noexcept { return problem_; }
  [[nodiscard]] Box box() const noexcept { return problem_.box(); }
  [[nodiscard]] std::size_t dimension() const noexcept { return problem_.dimension(); }
  [[nodiscard]] std::uint64_t budget() const noexcept { return budget_; }
  [[nodiscard]] std::uint64_t used() const noexcept { return used_; }
  [[nodiscard]] std::uint64_t remaining() const noexcept { return budget_ - used_; }
  [[nodiscard]] bool exhausted() const noexcept { return used_ >= budget_; }
  [[nodiscard]] double best_value() const noexcept { return best_value_; }
  [[nodiscard]] const std::vector<double>& best_point() const noexcept { return best_point_; }

  // Called after every successful evaluation.
  void set_observer(Observer observer) { observer_ = std::move(observer); }

  // Records best-so-far after each evaluation.
  void enable_trace() { record_trace_ = true; }
  [[nodiscard]] const std::vector<double>& trace() const noexcept { return trace_; }

 private:
  ShiftedProblem problem_;
  std::uint64_t budget_;
  std::uint64_t used_ = 0;
  Rng noise_;
  bool noisy_;
  std::vector<double> scratch_;
  double best_value_ = std::numeric_limits<double>::infinity();
  std::vector<double> best_point_;
  Observer observer_;
  bool record_trace_ = false;
  std::vector<double> trace_;
};

}  // namespace cbias
