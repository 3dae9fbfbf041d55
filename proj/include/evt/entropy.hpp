#pragma once

#include <cmath>
#include <functional>
#include <stdexcept>

#include "evt/errors.hpp"
#include "evt/extended_real.hpp"
#include "evt/quadrature.hpp"

namespace evt {

// Order of a Renyi entropy: beta > 0, beta != 1 (the Shannon case has its
// own operation).
struct RenyiOrder {
  double beta;
  explicit RenyiOrder(double b) : beta(b) {
    if (!(b > 0.0) || b == 1.0)
      throw std::domain_error("RenyiOrder: requires beta > 0 and beta != 1");
  }
};

struct EntropyResult {
  double beta;
  double entropy;     // log(integral) / (1 - beta)
  double integral;    // integral of f^beta over the support
  double quad_error;  // quadrature error estimate for the integral
};

// Densities are passed as log-density handles; exponentiation happens inside
// the integrand so that f^beta never underflows before it is floored.
using LogDensity = std::function<double(double)>;

// exp() underflows to zero below this; such points contribute nothing.
inline constexpr double kLogFloor = -745.0;

// H_beta = log(integral f^beta) / (1 - beta), by adaptive quadrature of
// exp(beta * log f). A zero integral means f^beta is not integrable at the
// working precision, which the validity constraints predict; report it as
// divergence rather than returning an infinite entropy.
inline EntropyResult renyi_entropy_numeric(const LogDensity& log_density, const Interval& support,
                                           RenyiOrder order, double rel_tol,
                                           std::size_t max_evaluations = 1'000'000) {
  const double beta = order.beta;
  Integrand integrand = [&log_density, beta](double x) {
    const double t = beta * log_density(x);
    return t > kLogFloor ? std::exp(t) : 0.0;
  };
  const QuadratureResult q = integrate_adaptive(integrand, support, rel_tol, max_evaluations);
  if (!(q.value > 0.0))
    throw DivergenceError("renyi_entropy_numeric: integral of f^beta vanished at working precision");
  return EntropyResult{beta, std::log(q.value) / (1.0 - beta), q.value, q.error_estimate};
}

// Shannon entropy -integral of f log f over {f > 0}, via the log-density to
// avoid evaluating 0 * log 0.
inline double shannon_entropy_numeric(const LogDensity& log_density, const Interval& support,
                                      double rel_tol, std::size_t max_evaluations = 1'000'000) {
  Integrand integrand = [&log_density](double x) {
    const double L = log_density(x);
    return L > kLogFloor ? -L * std::exp(L) : 0.0;
  };
  return integrate_adaptive(integrand, support, rel_tol, max_evaluations).value;
}

// Renyi entropy of Y = (X - b)/a given H_beta of X: location drops out,
// scale shifts the entropy by -log a.
inline double location_scale_shift(double a, double b, double h) {
  if (!(a > 0.0)) throw std::domain_error("location_scale_shift: requires scale a > 0");
  (void)b;
  return h - std::log(a);
}

}  // namespace evt
