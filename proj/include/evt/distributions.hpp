#pragma once

#include <cmath>
#include <functional>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "evt/extended_real.hpp"

namespace evt {

enum class Domain { Frechet, Weibull, Gumbel };

inline const char* domain_name(Domain d) {
  switch (d) {
    case Domain::Frechet: return "frechet";
    case Domain::Weibull: return "weibull";
    default: return "gumbel";
  }
}

// A continuous law F as a bag of callables over its support (left, right).
// Immutable value object; user-defined families plug in by filling the same
// fields. The log-space functions are exact complements, not log(cdf(x)),
// so tail quantities stay accurate where 1 - F is tiny.
struct DistributionFamily {
  std::string name;
  std::vector<double> params;
  ExtendedReal left = ExtendedReal::neg_inf();
  ExtendedReal right = ExtendedReal::pos_inf();

  std::function<double(double)> pdf_fn;
  std::function<double(double)> log_pdf_fn;
  std::function<double(double)> cdf_fn;
  std::function<double(double)> survival_fn;
  std::function<double(double)> log_cdf_fn;
  std::function<double(double)> log_survival_fn;

  // Optional closed forms; empty when a family has none.
  std::function<double(double)> quantile_fn;             // F^{-1}(p)
  std::function<double(double)> upper_quantile_fn;       // x with survival(x) = q
  std::function<double(long long)> weibull_scale_fn;     // delta_n without cancellation
  std::function<double(double)> auxiliary_fn;            // closed-form u(t)

  std::optional<Domain> known_domain;  // declared domain of attraction
  std::optional<double> known_alpha;   // tail index of the limit law
};

inline double pdf(const DistributionFamily& F, double x) { return F.pdf_fn(x); }
inline double log_pdf(const DistributionFamily& F, double x) { return F.log_pdf_fn(x); }
inline double cdf(const DistributionFamily& F, double x) { return F.cdf_fn(x); }
inline double survival(const DistributionFamily& F, double x) { return F.survival_fn(x); }
inline double log_survival(const DistributionFamily& F, double x) { return F.log_survival_fn(x); }

// ln F(x); -infinity where F(x) = 0 (documented sentinel).
inline double log_cdf(const DistributionFamily& F, double x) { return F.log_cdf_fn(x); }

// Closed-form quantile. Families without one must go through
// norming::solve_quantile instead.
inline double quantile(const DistributionFamily& F, double p) {
  if (!(p > 0.0 && p < 1.0)) throw std::domain_error("quantile: requires 0 < p < 1");
  if (!F.quantile_fn)
    throw std::domain_error("quantile: family '" + F.name + "' has no closed-form quantile");
  return F.quantile_fn(p);
}

inline Interval support(const DistributionFamily& F) { return {F.left, F.right}; }

namespace detail {
inline constexpr double kNegInf = -std::numeric_limits<double>::infinity();

inline void require_positive(double v, const char* what) {
  if (!(v > 0.0)) throw std::invalid_argument(std::string(what) + " must be > 0");
}
}  // namespace detail

// Pareto(alpha): F(x) = 1 - x^{-alpha}, x >= 1.
inline DistributionFamily make_pareto(double alpha) {
  detail::require_positive(alpha, "pareto: alpha");
  DistributionFamily F;
  F.name = "pareto";
  F.params = {alpha};
  F.left = 1.0;
  F.right = ExtendedReal::pos_inf();
  F.pdf_fn = [alpha](double x) { return x >= 1.0 ? alpha * std::pow(x, -alpha - 1.0) : 0.0; };
  F.log_pdf_fn = [alpha](double x) {
    return x >= 1.0 ? std::log(alpha) - (alpha + 1.0) * std::log(x) : detail::kNegInf;
  };
  F.cdf_fn = [alpha](double x) { return x <= 1.0 ? 0.0 : -std::expm1(-alpha * std::log(x)); };
  F.survival_fn = [alpha](double x) { return x <= 1.0 ? 1.0 : std::exp(-alpha * std::log(x)); };
  F.log_cdf_fn = [alpha](double x) {
    return x <= 1.0 ? detail::kNegInf : std::log1p(-std::exp(-alpha * std::log(x)));
  };
  F.log_survival_fn = [alpha](double x) { return x <= 1.0 ? 0.0 : -alpha * std::log(x); };
  F.quantile_fn = [alpha](double p) { return std::exp(-std::log1p(-p) / alpha); };
  F.upper_quantile_fn = [alpha](double q) { return std::exp(-std::log(q) / alpha); };
  F.known_domain = Domain::Frechet;
  F.known_alpha = alpha;
  return F;
}

// ReversedPower(alpha): F(x) = 1 - (1-x)^alpha on [0, 1]; alpha = 1 is Uniform(0,1).
inline DistributionFamily make_reversed_power(double alpha) {
  detail::require_positive(alpha, "reversed-power: alpha");
  DistributionFamily F;
  F.name = alpha == 1.0 ? "uniform" : "reversed-power";
  F.params = {alpha};
  F.left = 0.0;
  F.right = 1.0;
  F.pdf_fn = [alpha](double x) {
    return (x >= 0.0 && x <= 1.0) ? alpha * std::pow(1.0 - x, alpha - 1.0) : 0.0;
  };
  F.log_pdf_fn = [alpha](double x) {
    if (!(x >= 0.0 && x <= 1.0)) return detail::kNegInf;
    return std::log(alpha) + (alpha - 1.0) * std::log1p(-x);
  };
  F.cdf_fn = [alpha](double x) {
    if (x <= 0.0) return 0.0;
    if (x >= 1.0) return 1.0;
    return -std::expm1(alpha * std::log1p(-x));
  };
  F.survival_fn = [alpha](double x) {
    if (x <= 0.0) return 1.0;
    if (x >= 1.0) return 0.0;
    return std::exp(alpha * std::log1p(-x));
  };
  F.log_cdf_fn = [alpha](double x) {
    if (x <= 0.0) return detail::kNegInf;
    if (x >= 1.0) return 0.0;
    return std::log1p(-std::exp(alpha * std::log1p(-x)));
  };
  F.log_survival_fn = [alpha](double x) {
    if (x <= 0.0) return 0.0;
    if (x >= 1.0) return detail::kNegInf;
    return alpha * std::log1p(-x);
  };
  F.quantile_fn = [alpha](double p) { return -std::expm1(std::log1p(-p) / alpha); };
  F.upper_quantile_fn = [alpha](double q) { return -std::expm1(std::log(q) / alpha); };
  F.weibull_scale_fn = [alpha](long long n) {
    return std::exp(-std::log(static_cast<double>(n)) / alpha);
  };
  F.known_domain = Domain::Weibull;
  F.known_alpha = alpha;
  return F;
}

inline DistributionFamily make_uniform01() { return make_reversed_power(1.0); }

// Exponential(rate 1): F(x) = 1 - e^{-x}, x >= 0.
inline DistributionFamily make_exponential() {
  DistributionFamily F;
  F.name = "exponential";
  F.left = 0.0;
  F.right = ExtendedReal::pos_inf();
  F.pdf_fn = [](double x) { return x >= 0.0 ? std::exp(-x) : 0.0; };
  F.log_pdf_fn = [](double x) { return x >= 0.0 ? -x : detail::kNegInf; };
  F.cdf_fn = [](double x) { return x <= 0.0 ? 0.0 : -std::expm1(-x); };
  F.survival_fn = [](double x) { return x <= 0.0 ? 1.0 : std::exp(-x); };
  F.log_cdf_fn = [](double x) { return x <= 0.0 ? detail::kNegInf : std::log1p(-std::exp(-x)); };
  F.log_survival_fn = [](double x) { return x <= 0.0 ? 0.0 : -x; };
  F.quantile_fn = [](double p) { return -std::log1p(-p); };
  F.upper_quantile_fn = [](double q) { return -std::log(q); };
  F.auxiliary_fn = [](double) { return 1.0; };  // memorylessness: u == 1
  F.known_domain = Domain::Gumbel;
  return F;
}

// WeibullMin(k): F(x) = 1 - e^{-x^k}, x >= 0, k >= 1.
inline DistributionFamily make_weibull_min(double k) {
  if (!(k >= 1.0)) throw std::invalid_argument("weibull-min: requires shape k >= 1");
  DistributionFamily F;
  F.name = "weibull-min";
  F.params = {k};
  F.left = 0.0;
  F.right = ExtendedReal::pos_inf();
  F.pdf_fn = [k](double x) {
    if (x < 0.0) return 0.0;
    if (x == 0.0) return k == 1.0 ? 1.0 : 0.0;
    return k * std::pow(x, k - 1.0) * std::exp(-std::pow(x, k));
  };
  F.log_pdf_fn = [k](double x) {
    if (x < 0.0 || (x == 0.0 && k != 1.0)) return detail::kNegInf;
    if (x == 0.0) return 0.0;
    return std::log(k) + (k - 1.0) * std::log(x) - std::pow(x, k);
  };
  F.cdf_fn = [k](double x) { return x <= 0.0 ? 0.0 : -std::expm1(-std::pow(x, k)); };
  F.survival_fn = [k](double x) { return x <= 0.0 ? 1.0 : std::exp(-std::pow(x, k)); };
  F.log_cdf_fn = [k](double x) {
    return x <= 0.0 ? detail::kNegInf : std::log1p(-std::exp(-std::pow(x, k)));
  };
  F.log_survival_fn = [k](double x) { return x <= 0.0 ? 0.0 : -std::pow(x, k); };
  F.quantile_fn = [k](double p) { return std::pow(-std::log1p(-p), 1.0 / k); };
  F.upper_quantile_fn = [k](double q) { return std::pow(-std::log(q), 1.0 / k); };
  F.known_domain = Domain::Gumbel;
  return F;
}

// Frechet(alpha) as an input family: F(x) = exp(-x^{-alpha}), x > 0.
inline DistributionFamily make_frechet_law(double alpha) {
  detail::require_positive(alpha, "frechet: alpha");
  DistributionFamily F;
  F.name = "frechet";
  F.params = {alpha};
  F.left = 0.0;
  F.right = ExtendedReal::pos_inf();
  F.pdf_fn = [alpha](double x) {
    return x > 0.0 ? alpha * std::pow(x, -alpha - 1.0) * std::exp(-std::pow(x, -alpha)) : 0.0;
  };
  F.log_pdf_fn = [alpha](double x) {
    return x > 0.0 ? std::log(alpha) - (alpha + 1.0) * std::log(x) - std::pow(x, -alpha)
                   : detail::kNegInf;
  };
  F.cdf_fn = [alpha](double x) { return x <= 0.0 ? 0.0 : std::exp(-std::pow(x, -alpha)); };
  F.survival_fn = [alpha](double x) {
    return x <= 0.0 ? 1.0 : -std::expm1(-std::pow(x, -alpha));
  };
  F.log_cdf_fn = [alpha](double x) { return x <= 0.0 ? detail::kNegInf : -std::pow(x, -alpha); };
  F.log_survival_fn = [alpha](double x) {
    return x <= 0.0 ? 0.0 : std::log(-std::expm1(-std::pow(x, -alpha)));
  };
  F.quantile_fn = [alpha](double p) { return std::pow(-std::log(p), -1.0 / alpha); };
  F.upper_quantile_fn = [alpha](double q) { return std::pow(-std::log1p(-q), -1.0 / alpha); };
  F.known_domain = Domain::Frechet;
  F.known_alpha = alpha;
  return F;
}

// WeibullEV(alpha) as an input family: F(x) = exp(-|x|^alpha), x < 0.
inline DistributionFamily make_weibull_ev_law(double alpha) {
  detail::require_positive(alpha, "weibull-ev: alpha");
  DistributionFamily F;
  F.name = "weibull-ev";
  F.params = {alpha};
  F.left = ExtendedReal::neg_inf();
  F.right = 0.0;
  F.pdf_fn = [alpha](double x) {
    return x < 0.0 ? alpha * std::pow(-x, alpha - 1.0) * std::exp(-std::pow(-x, alpha)) : 0.0;
  };
  F.log_pdf_fn = [alpha](double x) {
    return x < 0.0 ? std::log(alpha) + (alpha - 1.0) * std::log(-x) - std::pow(-x, alpha)
                   : detail::kNegInf;
  };
  F.cdf_fn = [alpha](double x) { return x < 0.0 ? std::exp(-std::pow(-x, alpha)) : 1.0; };
  F.survival_fn = [alpha](double x) {
    return x < 0.0 ? -std::expm1(-std::pow(-x, alpha)) : 0.0;
  };
  F.log_cdf_fn = [alpha](double x) { return x < 0.0 ? -std::pow(-x, alpha) : 0.0; };
  F.log_survival_fn = [alpha](double x) {
    return x < 0.0 ? std::log(-std::expm1(-std::pow(-x, alpha))) : detail::kNegInf;
  };
  F.quantile_fn = [alpha](double p) { return -std::pow(-std::log(p), 1.0 / alpha); };
  F.upper_quantile_fn = [alpha](double q) { return -std::pow(-std::log1p(-q), 1.0 / alpha); };
  F.weibull_scale_fn = [alpha](long long n) {
    return std::pow(-std::log1p(-1.0 / static_cast<double>(n)), 1.0 / alpha);
  };
  F.known_domain = Domain::Weibull;
  F.known_alpha = alpha;
  return F;
}

// Gumbel as an input family: F(x) = exp(-e^{-x}).
inline DistributionFamily make_gumbel_law() {
  DistributionFamily F;
  F.name = "gumbel";
  F.pdf_fn = [](double x) { return std::exp(-x - std::exp(-x)); };
  F.log_pdf_fn = [](double x) { return -x - std::exp(-x); };
  F.cdf_fn = [](double x) { return std::exp(-std::exp(-x)); };
  F.survival_fn = [](double x) { return -std::expm1(-std::exp(-x)); };
  F.log_cdf_fn = [](double x) { return -std::exp(-x); };
  F.log_survival_fn = [](double x) {
    const double s = -std::expm1(-std::exp(-x));
    return s > 0.0 ? std::log(s) : detail::kNegInf;
  };
  F.quantile_fn = [](double p) { return -std::log(-std::log(p)); };
  F.upper_quantile_fn = [](double q) { return -std::log(-std::log1p(-q)); };
  F.known_domain = Domain::Gumbel;
  return F;
}

// CLI/config dispatcher. Family names match the config file schema.
inline DistributionFamily make_family(const std::string& name, const std::vector<double>& params) {
  auto want = [&](std::size_t k) {
    if (params.size() != k)
      throw std::invalid_argument("family '" + name + "' expects " + std::to_string(k) +
                                  " parameter(s), got " + std::to_string(params.size()));
  };
  if (name == "pareto") { want(1); return make_pareto(params[0]); }
  if (name == "reversed-power" || name == "reversed_power") { want(1); return make_reversed_power(params[0]); }
  if (name == "uniform") { want(0); return make_uniform01(); }
  if (name == "exponential") { want(0); return make_exponential(); }
  if (name == "weibull-min" || name == "weibull_min") { want(1); return make_weibull_min(params[0]); }
  if (name == "frechet") { want(1); return make_frechet_law(params[0]); }
  if (name == "weibull-ev" || name == "weibull_ev") { want(1); return make_weibull_ev_law(params[0]); }
  if (name == "gumbel") { want(0); return make_gumbel_law(); }
  throw std::invalid_argument("unknown family '" + name + "'");
}

inline std::vector<std::string> family_names() {
  return {"pareto", "reversed-power", "uniform", "exponential",
          "weibull-min", "frechet", "weibull-ev", "gumbel"};
}

}  // namespace evt
