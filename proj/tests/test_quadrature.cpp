#include <doctest.h>

#include <cmath>
#include <limits>

#include "evt/errors.hpp"
#include "evt/quadrature.hpp"

using evt::ExtendedReal;
using evt::integrate_adaptive;
using evt::Interval;

TEST_CASE("constant on [0,1]") {
  const auto r = integrate_adaptive([](double) { return 1.0; }, Interval{0.0, 1.0}, 1e-12);
  CHECK(std::abs(r.value - 1.0) <= 1e-14);
  CHECK(r.evaluations > 0);
  CHECK(r.error_estimate >= 0.0);
}

TEST_CASE("gumbel density integrates to one over the whole line") {
  const auto r = integrate_adaptive([](double x) { return std::exp(-x - std::exp(-x)); },
                                    evt::whole_line(), 1e-12);
  CHECK(std::abs(r.value - 1.0) <= 1e-10);
}

TEST_CASE("t^2 exp(-2t) over (0, inf) equals 1/4") {
  const auto r = integrate_adaptive([](double t) { return t * t * std::exp(-2.0 * t); },
                                    Interval{0.0, ExtendedReal::pos_inf()}, 1e-12);
  CHECK(std::abs(r.value - 0.25) <= 1e-10);
}

TEST_CASE("half-line toward -inf") {
  // integral over (-inf, 0) of e^{x} dx = 1
  const auto r = integrate_adaptive([](double x) { return std::exp(x); },
                                    Interval{ExtendedReal::neg_inf(), 0.0}, 1e-12);
  CHECK(std::abs(r.value - 1.0) <= 1e-10);
}

TEST_CASE("integrable endpoint singularity x^{-3/4} on (0,1]") {
  const auto r = integrate_adaptive([](double x) { return std::pow(x, -0.75); },
                                    Interval{0.0, 1.0}, 1e-9);
  CHECK(std::abs(r.value - 4.0) <= 1e-6);
}

TEST_CASE("divergent integrand is detected") {
  CHECK_THROWS_AS(integrate_adaptive([](double x) { return 1.0 / x; }, Interval{0.0, 1.0}, 1e-10),
                  evt::DivergenceError);
  CHECK_THROWS_AS(integrate_adaptive([](double x) { return std::pow(x, -1.2); },
                                     Interval{0.0, 1.0}, 1e-10),
                  evt::DivergenceError);
}

TEST_CASE("NaN from the integrand propagates as IntegrandError") {
  CHECK_THROWS_AS(integrate_adaptive([](double) { return std::numeric_limits<double>::quiet_NaN(); },
                                     Interval{0.0, 1.0}, 1e-10),
                  evt::IntegrandError);
}

TEST_CASE("evaluation budget exhaustion") {
  // An oscillatory integrand with an unreachable tolerance under a small budget.
  CHECK_THROWS_AS(integrate_adaptive([](double x) { return std::sin(1.0 / (x + 1e-8)); },
                                     Interval{0.0, 1.0}, 1e-15, 2000),
                  evt::NoConvergenceError);
}

TEST_CASE("reversed endpoints are rejected") {
  CHECK_THROWS_AS(integrate_adaptive([](double) { return 1.0; }, Interval{1.0, 0.0}, 1e-10),
                  std::domain_error);
}

TEST_CASE("degenerate interval integrates to zero") {
  const auto r = integrate_adaptive([](double) { return 42.0; }, Interval{2.0, 2.0}, 1e-10);
  CHECK(r.value == 0.0);
}
