#include <doctest.h>

#include <cmath>
#include <vector>

#include "evt/classify.hpp"
#include "evt/entropy.hpp"
#include "evt/evt_limits.hpp"
#include "evt/maxima.hpp"

using namespace evt;

TEST_CASE("gn_log_density closed-form spot checks") {
  // n = 1: g_1 = f
  const NormalizedMaximaDensity d1{make_exponential(), {1, 1.0, 0.0, Domain::Gumbel}};
  CHECK(std::abs(gn_log_density(d1, 0.7) - (-0.7)) <= 1e-14);

  // uniform, n = 10: g_n(x) = (1 + x/n)^{n-1}
  const auto du = normalized_maxima(make_uniform01(), Domain::Weibull, 10);
  CHECK(std::abs(gn_log_density(du, -1.0) - 9.0 * std::log(0.9)) <= 1e-13);

  // pareto(1), n = 100 at x = 1: g_n = 0.99^{99}
  const auto dp = normalized_maxima(make_pareto(1.0), Domain::Frechet, 100);
  CHECK(std::abs(gn_log_density(dp, 1.0) - 99.0 * std::log(0.99)) <= 1e-12);

  // outside the support the log-density is -infinity
  CHECK(std::isinf(gn_log_density(du, 0.5)));
  CHECK(std::isinf(gn_log_density(dp, 0.001)));
}

TEST_CASE("gn_support maps the endpoints through the normalization") {
  const auto dp = normalized_maxima(make_pareto(1.0), Domain::Frechet, 100);
  CHECK(dp.constants.a == doctest::Approx(100.0).epsilon(1e-12));
  CHECK(gn_support(dp).lo.value() == doctest::Approx(0.01).epsilon(1e-12));
  CHECK(gn_support(dp).hi.is_pos_inf());

  const auto du = normalized_maxima(make_uniform01(), Domain::Weibull, 50);
  CHECK(gn_support(du).lo.value() == doctest::Approx(-50.0).epsilon(1e-12));
  CHECK(gn_support(du).hi.value() == doctest::Approx(0.0).scale(1.0).epsilon(1e-12));

  const auto de = normalized_maxima(make_exponential(), Domain::Gumbel, 1000);
  CHECK(gn_support(de).lo.value() == doctest::Approx(-std::log(1000.0)).epsilon(1e-12));
  CHECK(gn_support(de).hi.is_pos_inf());
}

TEST_CASE("g_n integrates to one for every built-in exemplar") {
  const std::vector<std::pair<DistributionFamily, Domain>> cases = {
      {make_pareto(1.0), Domain::Frechet},     {make_pareto(2.0), Domain::Frechet},
      {make_uniform01(), Domain::Weibull},     {make_reversed_power(3.0), Domain::Weibull},
      {make_exponential(), Domain::Gumbel},    {make_weibull_min(2.0), Domain::Gumbel},
      {make_frechet_law(1.0), Domain::Frechet}, {make_weibull_ev_law(2.0), Domain::Weibull},
      {make_gumbel_law(), Domain::Gumbel}};
  for (const auto& [F, dom] : cases) {
    for (long long n : {10LL, 1000LL, 100000LL}) {
      const auto D = normalized_maxima(F, dom, n);
      const auto r = integrate_adaptive(
          [&D](double x) {
            const double L = gn_log_density(D, x);
            return L > kLogFloor ? std::exp(L) : 0.0;
          },
          gn_support(D), 1e-10);
      CHECK(std::abs(r.value - 1.0) <= 1e-8);
    }
  }
}

TEST_CASE("g_n equals the derivative of F^n(a x + b)") {
  const auto D = normalized_maxima(make_exponential(), Domain::Gumbel, 100);
  auto Fn = [&D](double x) {
    const double lc = log_cdf(D.family, D.constants.a * x + D.constants.b);
    return std::exp(static_cast<double>(D.constants.n) * lc);
  };
  const double h = 1e-5;
  for (double x : {-1.0, -0.5, 0.0, 0.5, 1.0, 1.5, 2.0, 3.0, 4.0, 5.0}) {
    const double fd = (Fn(x + h) - Fn(x - h)) / (2.0 * h);
    const double gn = std::exp(gn_log_density(D, x));
    CHECK(std::abs(fd - gn) <= 1e-3 * std::max(gn, 1e-12));
  }
}

TEST_CASE("density convergence to the limit law is monotone on compact grids") {
  struct Case {
    DistributionFamily F;
    Domain dom;
    MaxStableLaw law;
    std::vector<double> grid;
  };
  const std::vector<Case> cases = {
      {make_pareto(1.0), Domain::Frechet, MaxStableLaw::frechet(1.0), {0.5, 1.0, 2.0, 4.0}},
      {make_uniform01(), Domain::Weibull, MaxStableLaw::weibull(1.0), {-3.0, -2.0, -1.0, -0.5}},
      {make_exponential(), Domain::Gumbel, MaxStableLaw::gumbel(), {-2.0, -1.0, 0.0, 1.0, 3.0}},
      {make_weibull_min(2.0), Domain::Gumbel, MaxStableLaw::gumbel(), {-2.0, -1.0, 0.0, 1.0, 3.0}}};
  for (const auto& c : cases) {
    double prev = std::numeric_limits<double>::infinity();
    for (long long n : {100LL, 1000LL, 10000LL, 100000LL}) {
      const auto D = normalized_maxima(c.F, c.dom, n);
      double sup = 0.0;
      for (double x : c.grid) {
        const double L = gn_log_density(D, x);
        const double gn = L > kLogFloor ? std::exp(L) : 0.0;
        sup = std::max(sup, std::abs(gn - ev_pdf(c.law, x)));
      }
      CHECK(sup < prev);
      prev = sup;
    }
  }
}

TEST_CASE("moments of the normalized maximum approach the limit moments") {
  const auto de = normalized_maxima(make_exponential(), Domain::Gumbel, 10000);
  CHECK(std::abs(moment_of_normalized_max(de, 1, 1e-10) -
                 limit_moment(MaxStableLaw::gumbel(), 1)) <= 0.01);

  const auto dp = normalized_maxima(make_pareto(2.0), Domain::Frechet, 10000);
  CHECK(std::abs(moment_of_normalized_max(dp, 1, 1e-10) - std::sqrt(std::numbers::pi)) <= 0.01);

  const auto du = normalized_maxima(make_uniform01(), Domain::Weibull, 10000);
  CHECK(std::abs(moment_of_normalized_max(du, 1, 1e-10) - (-1.0)) <= 0.01);

  CHECK_THROWS_AS(moment_of_normalized_max(de, 0, 1e-8), std::domain_error);
}

TEST_CASE("divergent moment is detected") {
  // pareto(1) has an infinite mean for every n
  const auto D = normalized_maxima(make_pareto(1.0), Domain::Frechet, 100);
  CHECK_THROWS_AS(moment_of_normalized_max(D, 1, 1e-8), NumericError);
}

TEST_CASE("weibull_to_frechet transform") {
  const auto FX = weibull_to_frechet(make_uniform01());
  for (double x : {1.5, 2.0, 10.0, 100.0}) {
    CHECK(std::abs(cdf(FX, x) - (1.0 - 1.0 / x)) <= 1e-14);
    CHECK(std::abs(pdf(FX, x) - 1.0 / (x * x)) <= 1e-14);
  }
  CHECK(cdf(FX, 0.5) == 0.0);
  CHECK(FX.left.value() == doctest::Approx(1.0).epsilon(1e-15));

  const auto FX3 = weibull_to_frechet(make_reversed_power(3.0));
  const auto P3 = make_pareto(3.0);
  for (double x : {1.5, 2.0, 10.0}) {
    CHECK(std::abs(cdf(FX3, x) - cdf(P3, x)) <= 1e-13);
  }

  CHECK_THROWS_AS(weibull_to_frechet(make_exponential()), std::domain_error);
}

TEST_CASE("norming duality under the transform at n = 50") {
  const auto delta = norming_constants(make_uniform01(), Domain::Weibull, 50).a;
  const auto a50 = norming_constants(weibull_to_frechet(make_uniform01()), Domain::Frechet, 50).a;
  CHECK(std::abs(1.0 / delta - 50.0) <= 1e-9);
  CHECK(std::abs(a50 - 50.0) <= 1e-9);
}

TEST_CASE("transform coherence: H_2(g_n) both ways at n = 1000") {
  const long long n = 1000;
  const auto DY = normalized_maxima(make_uniform01(), Domain::Weibull, n);
  const double route1 =
      renyi_entropy_numeric([&DY](double x) { return gn_log_density(DY, x); }, gn_support(DY),
                            RenyiOrder(2.0), 1e-11)
          .entropy;

  // substitute x = -1/y: integral over y > 0 of (g_n^X(y))^2 y^2 dy with the
  // transformed family and a_n = 1/delta_n
  const auto FX = weibull_to_frechet(make_uniform01());
  const NormalizedMaximaDensity DX{FX, {n, 1.0 / DY.constants.a, 0.0, Domain::Frechet}};
  const auto r = integrate_adaptive(
      [&DX](double y) {
        const double L = 2.0 * gn_log_density(DX, y) + 2.0 * std::log(y);
        return L > kLogFloor ? std::exp(L) : 0.0;
      },
      gn_support(DX), 1e-11);
  const double route2 = std::log(r.value) / (1.0 - 2.0);
  CHECK(std::abs(route1 - route2) <= 1e-6);
}

TEST_CASE("potter bounds") {
  const auto pareto_surv = [](double t) { return t <= 1.0 ? 1.0 : std::pow(t, -1.0); };
  const std::vector<double> xs = {1.0, 2.0, 4.0, 8.0};
  const std::vector<double> ts = {10.0, 100.0};
  const auto rep = potter_bound_holds(pareto_surv, -1.0, 0.1, 10.0, xs, ts);
  CHECK(rep.holds);
  CHECK(rep.checks.size() == xs.size() * ts.size());

  const auto u = [](double t) { return std::sqrt(t) * (1.0 + 1.0 / t); };
  const std::vector<double> xs2 = {1.0, 2.0, 4.0};
  CHECK(potter_bound_holds(u, 0.5, 0.2, 10.0, xs2, ts).holds);

  CHECK_THROWS_AS(potter_bound_holds(pareto_surv, -1.0, 0.0, 10.0, xs, ts), std::domain_error);
  const std::vector<double> bad_xs = {0.5};
  CHECK_THROWS_AS(potter_bound_holds(pareto_surv, -1.0, 0.1, 10.0, bad_xs, ts),
                  std::domain_error);
  const std::vector<double> bad_ts = {5.0};
  CHECK_THROWS_AS(potter_bound_holds(pareto_surv, -1.0, 0.1, 10.0, xs, bad_ts),
                  std::domain_error);
}

TEST_CASE("gumbel tail bound") {
  const std::vector<double> grid = {0.0, 0.5, 1.0, 2.0, -0.5, -2.0};
  const auto rep = gumbel_tail_bound_holds(make_exponential(), 10000, 0.2, grid);
  CHECK(rep.holds);
  // at x = 0 the checked value is n * survival(b_n) = 1 against (1+eps)^2
  CHECK(rep.checks[0].value == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(rep.checks[0].upper == doctest::Approx(1.44).epsilon(1e-12));

  CHECK(gumbel_tail_bound_holds(make_weibull_min(2.0), 100000, 0.3, grid).holds);

  const std::vector<double> too_negative = {-6.0};
  CHECK_THROWS_AS(gumbel_tail_bound_holds(make_exponential(), 10000, 0.2, too_negative),
                  std::domain_error);
}

TEST_CASE("auxiliary ratio bound") {
  // exponential: u == 1, every ratio is exactly one
  const std::vector<double> xs = {0.5, 1.0, -0.5, 0.0};
  const auto rep = auxiliary_ratio_bound_holds(make_exponential(), 1.0, 0.1, xs);
  CHECK(rep.holds);
  for (const auto& c : rep.checks) {
    CHECK(!c.skipped);
    CHECK(std::abs(c.value - 1.0) <= 1e-8);
  }
  // the x = 0 brackets collapse to [(1-eps), (1+eps)]
  CHECK(rep.checks[3].lower == doctest::Approx(0.9).epsilon(1e-12));
  CHECK(rep.checks[3].upper == doctest::Approx(1.1).epsilon(1e-12));

  const std::vector<double> xs2 = {0.5, 1.0, -0.5};
  CHECK(auxiliary_ratio_bound_holds(make_weibull_min(2.0), 3.0, 0.25, xs2).holds);

  // a shifted point below l(F) is skipped with a note
  const std::vector<double> off = {-5.0, 0.5};
  const auto rep2 = auxiliary_ratio_bound_holds(make_exponential(), 1.0, 0.25, off);
  CHECK(rep2.checks[0].skipped);
  CHECK(!rep2.checks[1].skipped);
  CHECK(rep2.notes.size() == 1);
  CHECK(rep2.holds);  // skipped points do not count as violations
}

TEST_CASE("envelope spec derived constants") {
  const auto fh = EnvelopeSpec::frechet_h(1.0, 0.1, 0.2, 0.1);
  CHECK(fh.power == doctest::Approx(0.8).epsilon(1e-14));
  CHECK(fh.prefactor == doctest::Approx(1.1 / 0.8).epsilon(1e-14));
  CHECK(fh.exponent_scale == doctest::Approx(0.9 / 0.8).epsilon(1e-14));

  const auto h1 = EnvelopeSpec::gumbel_h1(0.2, 0.2, 0.2, 0.3, 0.2);
  CHECK(h1.power == doctest::Approx(4.0).epsilon(1e-14));
  CHECK(h1.exponent_scale == doctest::Approx(1.352).epsilon(1e-14));
  CHECK(h1.prefactor == doctest::Approx(15.993005740151194).epsilon(1e-12));

  const auto h2 = EnvelopeSpec::gumbel_h2(0.2, 0.2, 0.2, 0.3, 0.2);
  CHECK(h2.power == doctest::Approx(0.8 / 0.3).epsilon(1e-12));
  CHECK(h2.exponent_scale == doctest::Approx(1.352).epsilon(1e-14));

  CHECK_THROWS_AS(EnvelopeSpec::gumbel_h2(0.2, 0.3, 0.2, 0.2, 0.2), std::invalid_argument);
  CHECK_THROWS_AS(EnvelopeSpec::frechet_h(1.0, 0.1, 1.5, 0.1), std::invalid_argument);
  CHECK_THROWS_AS(EnvelopeSpec::frechet_h(0.1, 0.1, 0.2, 0.1), std::invalid_argument);
}

TEST_CASE("envelopes dominate g_n on their documented grids") {
  const auto dp = normalized_maxima(make_pareto(1.0), Domain::Frechet, 100000);
  const auto fh = EnvelopeSpec::frechet_h(1.0, 0.1, 0.2, 0.1);
  const std::vector<double> fx = {0.05, 0.1, 0.5, 1.0};
  CHECK(envelope_dominates(dp, fh, fx).holds);

  const auto de = normalized_maxima(make_exponential(), Domain::Gumbel, 100000);
  const auto h1 = EnvelopeSpec::gumbel_h1(0.2, 0.2, 0.2, 0.3, 0.2);
  const std::vector<double> gx = {-0.5, -1.0, -3.0};
  CHECK(envelope_dominates(de, h1, gx).holds);

  // h2 dominates on the left part of its region (checked by evaluation)
  const auto h2 = EnvelopeSpec::gumbel_h2(0.2, 0.2, 0.2, 0.3, 0.2);
  const std::vector<double> hx = {0.25, 0.5, 1.0, 2.0};
  CHECK(envelope_dominates(de, h2, hx).holds);
}

TEST_CASE("envelope integrability: h1 has a finite integral over (-inf, 0)") {
  const auto h1 = EnvelopeSpec::gumbel_h1(0.2, 0.2, 0.2, 0.3, 0.2);
  const auto r = integrate_adaptive([&h1](double x) { return h1.evaluate(x); },
                                    Interval{ExtendedReal::neg_inf(), 0.0}, 1e-10);
  CHECK(std::isfinite(r.value));
  CHECK(r.value > 3.9);
  CHECK(r.value < 4.0);
}

TEST_CASE("envelope preconditions") {
  const auto de = normalized_maxima(make_exponential(), Domain::Gumbel, 1000);
  const auto fh = EnvelopeSpec::frechet_h(1.0, 0.1, 0.2, 0.1);
  const std::vector<double> fx = {0.5};
  CHECK_THROWS_AS(envelope_dominates(de, fh, fx), std::domain_error);  // kind/domain mismatch

  const auto dp = normalized_maxima(make_pareto(1.0), Domain::Frechet, 1000);
  const std::vector<double> out = {2.0};
  CHECK_THROWS_AS(envelope_dominates(dp, fh, out), std::domain_error);  // outside (0, 1]

  const auto h1 = EnvelopeSpec::gumbel_h1(0.2, 0.2, 0.2, 0.3, 0.2);
  const std::vector<double> pos = {0.5};
  CHECK_THROWS_AS(envelope_dominates(de, h1, pos), std::domain_error);  // H1 needs x < 0

  const auto h2 = EnvelopeSpec::gumbel_h2(0.2, 0.2, 0.2, 0.3, 0.2);
  const std::vector<double> beyond = {4.0};  // eps4 * x > 1
  CHECK_THROWS_AS(envelope_dominates(de, h2, beyond), std::domain_error);
}

TEST_CASE("default envelope grids stay inside their regions") {
  for (double x : default_envelope_grid(EnvelopeKind::FrechetH)) CHECK((x > 0.0 && x <= 1.0));
  for (double x : default_envelope_grid(EnvelopeKind::GumbelH1)) CHECK(x < 0.0);
  for (double x : default_envelope_grid(EnvelopeKind::GumbelH2, 0.3)) {
    CHECK(x > 0.0);
    CHECK(0.3 * x < 1.0);
  }
  CHECK(default_envelope_grid(EnvelopeKind::FrechetH).size() == 33);
}
