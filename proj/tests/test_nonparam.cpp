#include <doctest.h>

#include <cmath>
#include <vector>

#include "survkit/error.hpp"
#include "survkit/nonparam.hpp"
#include "survkit/rng.hpp"
#include "survkit/step_curve.hpp"

using namespace survkit;

TEST_CASE("step curve evaluation conventions") {
  StepCurve s(StepCurve::Kind::kSurvival, 1.0, {1.0, 3.0}, {2.0 / 3.0, 0.0});
  CHECK(s.eval(0.5) == 1.0);             // before first jump
  CHECK(s.eval(1.0) == 2.0 / 3.0);       // right-continuous at the jump
  CHECK(s.eval_left(1.0) == 1.0);        // left limit
  CHECK(s.eval(2.0) == 2.0 / 3.0);
  CHECK(s.eval(10.0) == 0.0);            // after last jump
  CHECK(s.eval_left(3.0) == 2.0 / 3.0);
}

TEST_CASE("step curve validates monotonicity") {
  CHECK_THROWS_AS(StepCurve(StepCurve::Kind::kSurvival, 1.0, {1.0, 2.0}, {0.5, 0.7}),
                  ValidationError);
  CHECK_THROWS_AS(StepCurve(StepCurve::Kind::kCumulativeHazard, 0.0, {1.0, 2.0}, {0.5, 0.3}),
                  ValidationError);
  CHECK_THROWS_AS(StepCurve(StepCurve::Kind::kSurvival, 1.0, {2.0, 1.0}, {0.8, 0.5}),
                  ValidationError);
}

TEST_CASE("kaplan-meier on the worked three-row example") {
  StepCurve s = kaplan_meier({1.0, 2.0, 3.0}, {1, 0, 1});
  CHECK(s.eval(0.5) == 1.0);
  CHECK(s.eval(1.0) == doctest::Approx(2.0 / 3.0).epsilon(1e-15));
  CHECK(s.eval(2.5) == doctest::Approx(2.0 / 3.0).epsilon(1e-15));
  CHECK(s.eval(3.0) == 0.0);
}

TEST_CASE("kaplan-meier equals empirical survival without censoring") {
  StepCurve s = kaplan_meier({1.0, 2.0}, {1, 1});
  CHECK(s.eval(1.5) == doctest::Approx(0.5));
}

TEST_CASE("kaplan-meier with no deaths stays at one") {
  StepCurve s = kaplan_meier({1.0, 2.0, 3.0}, {0, 0, 0});
  CHECK(s.n_jumps() == 0);
  CHECK(s.eval(100.0) == 1.0);
}

TEST_CASE("kaplan-meier rejects all-zero weights") {
  std::vector<double> w{0.0, 0.0};
  CHECK_THROWS_AS(kaplan_meier({1.0, 2.0}, {1, 1}, &w), ValidationError);
}

TEST_CASE("kaplan-meier weight-scale invariance is bitwise") {
  std::vector<double> times;
  std::vector<int> events;
  Rng rng(42);
  for (int i = 0; i < 50; ++i) {
    times.push_back(rng.exponential() + 0.01);
    events.push_back(rng.bernoulli(0.7) ? 1 : 0);
  }
  std::vector<double> w_const(times.size(), 3.5);
  StepCurve a = kaplan_meier(times, events);
  StepCurve b = kaplan_meier(times, events, &w_const);
  REQUIRE(a.n_jumps() == b.n_jumps());
  for (std::size_t j = 0; j < a.n_jumps(); ++j) {
    CHECK(a.jump_times()[j] == b.jump_times()[j]);
    CHECK(a.values()[j] == b.values()[j]);
  }
}

TEST_CASE("nelson-aalen on the worked example") {
  StepCurve h = nelson_aalen({1.0, 2.0}, {1, 1});
  CHECK(h.eval(1.0) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(h.eval(2.0) == doctest::Approx(1.5).epsilon(1e-15));
  CHECK(h.eval(0.5) == 0.0);
}

TEST_CASE("nelson-aalen trivial cases") {
  CHECK(nelson_aalen({1.0, 2.0}, {0, 0}).eval(5.0) == 0.0);
  CHECK(nelson_aalen({1.0}, {1}).eval(1.0) == doctest::Approx(1.0));
}

TEST_CASE("censoring km flips the indicator with mirrored ties") {
  SUBCASE("no censoring means G stays one") {
    StepCurve g = censoring_km({1.0, 2.0, 3.0}, {1, 1, 1});
    CHECK(g.n_jumps() == 0);
    CHECK(g.eval(3.0) == 1.0);
  }
  SUBCASE("death at 1 then censoring at 2") {
    StepCurve g = censoring_km({1.0, 2.0}, {1, 0});
    CHECK(g.eval(1.9) == 1.0);
    CHECK(g.eval(2.0) == 0.0);
  }
  SUBCASE("everyone censored at 5") {
    StepCurve g = censoring_km({5.0, 5.0, 5.0}, {0, 0, 0});
    CHECK(g.eval(5.0) == 0.0);
    CHECK(g.eval(4.9) == 1.0);
  }
  SUBCASE("tied death and censoring: death leaves the risk set first") {
    // At t=2: risk set {2,2,3}, one death removed, then censoring sees 2 at risk.
    StepCurve g = censoring_km({1.0, 2.0, 2.0, 3.0}, {1, 1, 0, 0});
    CHECK(g.eval(2.0) == doctest::Approx(0.5).epsilon(1e-15));
  }
}

TEST_CASE("km and censoring km factorize the empirical survival") {
  // With all observed times distinct, S_KM(t) * G(t) equals the empirical
  // fraction of observed times beyond t, exactly.
  Rng rng(7);
  const std::size_t n = 200;
  std::vector<double> times;
  std::vector<int> events;
  for (std::size_t i = 0; i < n; ++i) {
    times.push_back(rng.exponential() + 1e-3 * static_cast<double>(i + 1));
    events.push_back(rng.bernoulli(0.6) ? 1 : 0);
  }
  StepCurve s = kaplan_meier(times, events);
  StepCurve g = censoring_km(times, events);
  for (double t : times) {
    double beyond = 0.0;
    for (double u : times) beyond += (u > t) ? 1.0 : 0.0;
    const double empirical = beyond / static_cast<double>(n);
    CHECK(std::abs(s.eval(t) * g.eval(t) - empirical) < 1e-12);
  }
}

TEST_CASE("exponentiated nelson-aalen dominates km") {
  // Per-factor 1 - x <= exp(-x), so the product-limit estimate is bounded
  // above by exp(-H) at every jump.
  Rng rng(11);
  std::vector<double> times;
  std::vector<int> events;
  for (int i = 0; i < 300; ++i) {
    times.push_back(rng.weibull(1.3, 2.0));
    events.push_back(rng.bernoulli(0.5) ? 1 : 0);
  }
  StepCurve s = kaplan_meier(times, events);
  StepCurve h = nelson_aalen(times, events);
  REQUIRE(s.n_jumps() > 50);
  for (std::size_t j = 0; j < s.n_jumps(); ++j) {
    const double t = s.jump_times()[j];
    CHECK(s.eval(t) <= std::exp(-h.eval(t)) + 1e-12);
  }
}

TEST_CASE("curve csv serialization starts at time zero") {
  StepCurve s = kaplan_meier({1.0, 2.0}, {1, 0});
  const std::string csv = curve_to_csv(s);
  CHECK(csv == "time,value\n0,1\n1,0.5\n");
}

TEST_CASE("step curve area is exact on segments") {
  StepCurve s(StepCurve::Kind::kSurvival, 1.0, {1.0, 3.0}, {2.0 / 3.0, 0.0});
  CHECK(s.area(3.0) == doctest::Approx(1.0 + 2.0 * (2.0 / 3.0)).epsilon(1e-15));
  CHECK(s.area(0.0) == 0.0);
  CHECK(s.area(0.5) == doctest::Approx(0.5));
  CHECK(s.area(10.0) == doctest::Approx(7.0 / 3.0));
}
