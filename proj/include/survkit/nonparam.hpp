#pragma once

#include <optional>
#include <string>
#include <vector>

#include "survkit/step_curve.hpp"

namespace survkit {

// Product-limit survival estimate, optionally weighted (risk sets and death
// counts are weight sums). Tie convention: deaths are processed before
// censorings at the same time, so a tied censoring stays in the risk set for
// that time's deaths.
StepCurve kaplan_meier(const std::vector<double>& times, const std::vector<int>& events,
                       const std::vector<double>* weights = nullptr);

// Nelson-Aalen cumulative hazard: H(t) = sum over death times u <= t of d_u / n_u.
StepCurve nelson_aalen(const std::vector<double>& times, const std::vector<int>& events,
                       const std::vector<double>* weights = nullptr);

// Kaplan-Meier estimate of the censoring distribution G(t) = P(C > t):
// censorings become the events. The tie convention is mirrored — deaths
// leave the risk set before tied censorings are counted.
StepCurve censoring_km(const std::vector<double>& times, const std::vector<int>& events);

// CSV rows "time,value" with an initial row at time 0; plot-ready.
std::string curve_to_csv(const StepCurve& curve);

}  // namespace survkit
