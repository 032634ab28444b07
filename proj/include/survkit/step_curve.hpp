#pragma once

#include <cstddef>
#include <vector>

namespace survkit {

// Right-continuous piecewise-constant curve: value(t) = initial_value for
// t < jump_times[0], and values[j] for the last jump_times[j] <= t.
//
// Survival curves start at 1 and are non-increasing; cumulative-hazard
// curves start at 0 and are non-decreasing. Immutable after construction.
class StepCurve {
 public:
  enum class Kind { kSurvival, kCumulativeHazard };

  // Jump-free cumulative hazard (H = 0); placeholder before a fit.
  StepCurve() : kind_(Kind::kCumulativeHazard), initial_value_(0.0) {}

  StepCurve(Kind kind, double initial_value, std::vector<double> jump_times,
            std::vector<double> values);

  Kind kind() const { return kind_; }
  double initial_value() const { return initial_value_; }
  const std::vector<double>& jump_times() const { return jump_times_; }
  const std::vector<double>& values() const { return values_; }
  std::size_t n_jumps() const { return jump_times_.size(); }

  // Value at t (right-continuous step convention).
  double eval(double t) const;

  // Left limit: value just before t.
  double eval_left(double t) const;

  // Exact area under the curve on [0, horizon].
  double area(double horizon) const;

 private:
  Kind kind_;
  double initial_value_;
  std::vector<double> jump_times_;
  std::vector<double> values_;
};

}  // namespace survkit
