#include "survkit/nonparam.hpp"

#include <algorithm>
#include <cstdio>
#include <numeric>

#include "survkit/error.hpp"

namespace survkit {

namespace {

struct TimeGroup {
  double time;
  double deaths;     // weight sum of events at this time
  double censored;   // weight sum of censorings at this time
};

// Unique observed times ascending, with per-time death/censoring weight sums
// and the total weight, after input validation.
std::vector<TimeGroup> group_times(const std::vector<double>& times,
                                   const std::vector<int>& events,
                                   const std::vector<double>* weights, double* total_weight) {
  const std::size_t n = times.size();
  if (n == 0) throw ValidationError("survival curve: empty input");
  if (events.size() != n) throw ValidationError("survival curve: events length mismatch");
  if (weights && weights->size() != n)
    throw ValidationError("survival curve: weights length mismatch");

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return times[a] < times[b]; });

  std::vector<TimeGroup> groups;
  double total = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    const std::size_t i = order[k];
    if (!(times[i] > 0.0)) throw ValidationError("survival curve: nonpositive time");
    if (events[i] != 0 && events[i] != 1)
      throw ValidationError("survival curve: event indicator must be 0 or 1");
    const double w = weights ? (*weights)[i] : 1.0;
    if (w < 0.0) throw ValidationError("survival curve: negative weight");
    total += w;
    if (groups.empty() || groups.back().time != times[i])
      groups.push_back({times[i], 0.0, 0.0});
    if (events[i] == 1)
      groups.back().deaths += w;
    else
      groups.back().censored += w;
  }
  if (!(total > 0.0)) throw ValidationError("survival curve: all weights are zero");
  *total_weight = total;
  return groups;
}

}  // namespace

StepCurve kaplan_meier(const std::vector<double>& times, const std::vector<int>& events,
                       const std::vector<double>* weights) {
  double at_risk = 0.0;
  const auto groups = group_times(times, events, weights, &at_risk);
  std::vector<double> jump_times, values;
  double surv = 1.0;
  for (const auto& g : groups) {
    if (g.deaths > 0.0 && at_risk > 0.0) {
      surv *= 1.0 - g.deaths / at_risk;
      jump_times.push_back(g.time);
      values.push_back(std::max(surv, 0.0));
    }
    at_risk -= g.deaths + g.censored;
  }
  return StepCurve(StepCurve::Kind::kSurvival, 1.0, std::move(jump_times), std::move(values));
}

StepCurve nelson_aalen(const std::vector<double>& times, const std::vector<int>& events,
                       const std::vector<double>* weights) {
  double at_risk = 0.0;
  const auto groups = group_times(times, events, weights, &at_risk);
  std::vector<double> jump_times, values;
  double cumhaz = 0.0;
  for (const auto& g : groups) {
    if (g.deaths > 0.0 && at_risk > 0.0) {
      cumhaz += g.deaths / at_risk;
      jump_times.push_back(g.time);
      values.push_back(cumhaz);
    }
    at_risk -= g.deaths + g.censored;
  }
  return StepCurve(StepCurve::Kind::kCumulativeHazard, 0.0, std::move(jump_times),
                   std::move(values));
}

StepCurve censoring_km(const std::vector<double>& times, const std::vector<int>& events) {
  double at_risk = 0.0;
  const auto groups = group_times(times, events, nullptr, &at_risk);
  std::vector<double> jump_times, values;
  double surv = 1.0;
  for (const auto& g : groups) {
    // Deaths leave first; tied censorings face the reduced risk set.
    const double risk_for_censoring = at_risk - g.deaths;
    if (g.censored > 0.0 && risk_for_censoring > 0.0) {
      surv *= 1.0 - g.censored / risk_for_censoring;
      jump_times.push_back(g.time);
      values.push_back(std::max(surv, 0.0));
    }
    at_risk -= g.deaths + g.censored;
  }
  return StepCurve(StepCurve::Kind::kSurvival, 1.0, std::move(jump_times), std::move(values));
}

std::string curve_to_csv(const StepCurve& curve) {
  std::string out = "time,value\n";
  char buf[64];
  std::snprintf(buf, sizeof(buf), "0,%.17g\n", curve.initial_value());
  out += buf;
  for (std::size_t j = 0; j < curve.n_jumps(); ++j) {
    std::snprintf(buf, sizeof(buf), "%.17g,%.17g\n", curve.jump_times()[j], curve.values()[j]);
    out += buf;
  }
  return out;
}

}  // namespace survkit
