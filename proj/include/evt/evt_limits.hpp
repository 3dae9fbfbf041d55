#pragma once

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "evt/distributions.hpp"
#include "evt/entropy.hpp"
#include "evt/errors.hpp"
#include "evt/special_functions.hpp"

namespace evt {

// One of the three max-stable laws. alpha is the shape for Frechet/Weibull
// and ignored for Gumbel.
struct MaxStableLaw {
  Domain kind;
  double alpha;

  static MaxStableLaw frechet(double a) {
    require_alpha(a);
    return {Domain::Frechet, a};
  }
  static MaxStableLaw weibull(double a) {
    require_alpha(a);
    return {Domain::Weibull, a};
  }
  static MaxStableLaw gumbel() { return {Domain::Gumbel, 1.0}; }

 private:
  static void require_alpha(double a) {
    if (!(a > 0.0)) throw std::invalid_argument("MaxStableLaw: requires alpha > 0");
  }
};

inline double ev_log_pdf(const MaxStableLaw& G, double x) {
  constexpr double neg_inf = -std::numeric_limits<double>::infinity();
  switch (G.kind) {
    case Domain::Frechet:
      return x > 0.0 ? std::log(G.alpha) - (G.alpha + 1.0) * std::log(x) - std::pow(x, -G.alpha)
                     : neg_inf;
    case Domain::Weibull:
      return x < 0.0 ? std::log(G.alpha) + (G.alpha - 1.0) * std::log(-x) - std::pow(-x, G.alpha)
                     : neg_inf;
    default:
      return -x - std::exp(-x);
  }
}

inline double ev_pdf(const MaxStableLaw& G, double x) {
  const double L = ev_log_pdf(G, x);
  return L > kLogFloor ? std::exp(L) : 0.0;
}

inline double ev_cdf(const MaxStableLaw& G, double x) {
  switch (G.kind) {
    case Domain::Frechet: return x <= 0.0 ? 0.0 : std::exp(-std::pow(x, -G.alpha));
    case Domain::Weibull: return x < 0.0 ? std::exp(-std::pow(-x, G.alpha)) : 1.0;
    default: return std::exp(-std::exp(-x));
  }
}

inline Interval ev_support(const MaxStableLaw& G) {
  switch (G.kind) {
    case Domain::Frechet: return {0.0, ExtendedReal::pos_inf()};
    case Domain::Weibull: return {ExtendedReal::neg_inf(), 0.0};
    default: return whole_line();
  }
}

// Closed-form Renyi entropy of a max-stable law. The validity constraints
// mark exactly where the defining integral diverges, so a violation is
// reported as a DivergenceError naming the inequality.
inline double limit_renyi_entropy(const MaxStableLaw& G, RenyiOrder order) {
  const double beta = order.beta;
  const double alpha = G.alpha;
  switch (G.kind) {
    case Domain::Frechet: {
      if (!(beta > 1.0 / (alpha + 1.0)))
        throw DivergenceError(
            "limit_renyi_entropy: Frechet integral diverges; requires beta > 1/(alpha+1), got beta = " +
            std::to_string(beta) + ", 1/(alpha+1) = " + std::to_string(1.0 / (alpha + 1.0)));
      const double s = (alpha + 1.0) / alpha;
      return -std::log(alpha) + s * std::log(beta) -
             (std::log(beta) - log_gamma(s * (beta - 1.0) + 1.0)) / (1.0 - beta);
    }
    case Domain::Weibull: {
      if (!(alpha > std::max(0.0, (beta - 1.0) / beta)))
        throw DivergenceError(
            "limit_renyi_entropy: Weibull integral diverges; requires alpha > max(0, (beta-1)/beta), got alpha = " +
            std::to_string(alpha) + ", (beta-1)/beta = " + std::to_string((beta - 1.0) / beta));
      const double s = (alpha - 1.0) / alpha;
      return -std::log(alpha) + s * std::log(beta) -
             (std::log(beta) - log_gamma(s * (beta - 1.0) + 1.0)) / (1.0 - beta);
    }
    default:
      return (log_gamma(beta) - beta * std::log(beta)) / (1.0 - beta);
  }
}

// Limit k-th moment of a max-stable law: Gamma(1 - k/alpha) for Frechet
// (finite only for k < alpha), (-1)^k Gamma(1 + k/alpha) for Weibull, and
// (-1)^k Gamma^{(k)}(1) for Gumbel (k = 1, 2 supported).
inline double limit_moment(const MaxStableLaw& G, int k) {
  if (k < 1) throw std::domain_error("limit_moment: requires k >= 1");
  const double sign = (k % 2 == 0) ? 1.0 : -1.0;
  switch (G.kind) {
    case Domain::Frechet:
      if (!(static_cast<double>(k) < G.alpha))
        throw DivergenceError("limit_moment: Frechet k-th moment is infinite for k >= alpha");
      return gamma_function(1.0 - static_cast<double>(k) / G.alpha);
    case Domain::Weibull:
      return sign * gamma_function(1.0 + static_cast<double>(k) / G.alpha);
    default:
      if (k == 1) return euler_mascheroni();
      if (k == 2) {
        const double g = euler_mascheroni();
        return g * g + std::numbers::pi * std::numbers::pi / 6.0;
      }
      throw std::domain_error("limit_moment: Gumbel moments supported only for k in {1, 2}");
  }
}

}  // namespace evt
