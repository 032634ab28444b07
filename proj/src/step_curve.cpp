#include "survkit/step_curve.hpp"

#include <algorithm>
#include <cmath>

#include "survkit/error.hpp"

namespace survkit {

StepCurve::StepCurve(Kind kind, double initial_value, std::vector<double> jump_times,
                     std::vector<double> values)
    : kind_(kind),
      initial_value_(initial_value),
      jump_times_(std::move(jump_times)),
      values_(std::move(values)) {
  if (jump_times_.size() != values_.size())
    throw ValidationError("StepCurve: jump_times and values length mismatch");
  double prev_t = 0.0;
  double prev_v = initial_value_;
  for (std::size_t j = 0; j < jump_times_.size(); ++j) {
    const double t = jump_times_[j];
    const double v = values_[j];
    if (!(t > prev_t))
      throw ValidationError("StepCurve: jump times must be strictly increasing and positive");
    if (!std::isfinite(v)) throw ValidationError("StepCurve: non-finite value");
    if (kind_ == Kind::kSurvival) {
      if (v < -1e-15 || v > 1.0 + 1e-15 || v > prev_v + 1e-12)
        throw ValidationError("StepCurve: survival values must be non-increasing in [0,1]");
    } else {
      if (v < prev_v - 1e-12)
        throw ValidationError("StepCurve: cumulative hazard must be non-decreasing");
    }
    prev_t = t;
    prev_v = v;
  }
}

double StepCurve::eval(double t) const {
  // Last jump <= t.
  auto it = std::upper_bound(jump_times_.begin(), jump_times_.end(), t);
  if (it == jump_times_.begin()) return initial_value_;
  return values_[static_cast<std::size_t>(it - jump_times_.begin()) - 1];
}

double StepCurve::eval_left(double t) const {
  // Last jump strictly < t.
  auto it = std::lower_bound(jump_times_.begin(), jump_times_.end(), t);
  if (it == jump_times_.begin()) return initial_value_;
  return values_[static_cast<std::size_t>(it - jump_times_.begin()) - 1];
}

double StepCurve::area(double horizon) const {
  if (horizon <= 0.0) return 0.0;
  double total = 0.0;
  double seg_start = 0.0;
  double seg_value = initial_value_;
  for (std::size_t j = 0; j < jump_times_.size() && jump_times_[j] < horizon; ++j) {
    total += seg_value * (jump_times_[j] - seg_start);
    seg_start = jump_times_[j];
    seg_value = values_[j];
  }
  total += seg_value * (horizon - seg_start);
  return total;
}

}  // namespace survkit
