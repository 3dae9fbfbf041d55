#pragma once

#include <cmath>
#include <cstddef>
#include <functional>
#include <limits>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "evt/distributions.hpp"
#include "evt/entropy.hpp"
#include "evt/errors.hpp"
#include "evt/norming.hpp"
#include "evt/quadrature.hpp"

namespace evt {

// Exact density of the normalized maximum (M_n - b)/a:
//   g_n(x) = n a f(a x + b) F^{n-1}(a x + b),
// evaluated only in log space; F^{n-1} is never formed directly.
struct NormalizedMaximaDensity {
  DistributionFamily family;
  NormingConstants constants;

  long long n() const { return constants.n; }
};

inline NormalizedMaximaDensity normalized_maxima(const DistributionFamily& F, Domain domain,
                                                 long long n, double quad_rel_tol = 1e-10) {
  return {F, norming_constants(F, domain, n, quad_rel_tol)};
}

inline double gn_log_density(const NormalizedMaximaDensity& D, double x) {
  constexpr double neg_inf = -std::numeric_limits<double>::infinity();
  const auto& c = D.constants;
  const double s = c.a * x + c.b;
  const double lf = log_pdf(D.family, s);
  if (!(lf > neg_inf)) return neg_inf;
  double t = std::log(static_cast<double>(c.n)) + std::log(c.a) + lf;
  if (c.n > 1) {
    const double lF = log_cdf(D.family, s);
    if (!(lF > neg_inf)) return neg_inf;
    t += static_cast<double>(c.n - 1) * lF;
  }
  return t;
}

// Support of g_n: (l(F), r(F)) mapped through x -> (x - b)/a.
inline Interval gn_support(const NormalizedMaximaDensity& D) {
  const auto& c = D.constants;
  const ExtendedReal lo = D.family.left.is_finite()
                              ? ExtendedReal((D.family.left.value() - c.b) / c.a)
                              : ExtendedReal::neg_inf();
  const ExtendedReal hi = D.family.right.is_finite()
                              ? ExtendedReal((D.family.right.value() - c.b) / c.a)
                              : ExtendedReal::pos_inf();
  return {lo, hi};
}

// k-th moment of the normalized maximum by adaptive quadrature.
inline double moment_of_normalized_max(const NormalizedMaximaDensity& D, int k, double rel_tol) {
  if (k < 1) throw std::domain_error("moment_of_normalized_max: requires k >= 1");
  Integrand integrand = [&D, k](double x) {
    const double L = gn_log_density(D, x);
    if (!(L > kLogFloor)) return 0.0;
    return std::pow(x, static_cast<double>(k)) * std::exp(L);
  };
  return integrate_adaptive(integrand, gn_support(D), rel_tol).value;
}

// X = 1/(r(F_Y) - Y) maps a family with finite right endpoint into the
// Frechet domain: F_X(x) = F_Y(r - 1/x) on (1/(r - l), infinity), and the
// Frechet scale of X is 1/delta_n of Y.
inline DistributionFamily weibull_to_frechet(const DistributionFamily& FY) {
  if (!FY.right.is_finite())
    throw std::domain_error("weibull_to_frechet: requires finite r(F)");
  const double r = FY.right.value();
  constexpr double neg_inf = -std::numeric_limits<double>::infinity();

  DistributionFamily FX;
  FX.name = "frechet-transform(" + FY.name + ")";
  FX.params = FY.params;
  FX.left = FY.left.is_finite() && r > FY.left.value() ? ExtendedReal(1.0 / (r - FY.left.value()))
                                                       : ExtendedReal(0.0);
  FX.right = ExtendedReal::pos_inf();
  const double lx = FX.left.value();

  FX.pdf_fn = [FY, r, lx](double x) {
    return x > lx ? FY.pdf_fn(r - 1.0 / x) / (x * x) : 0.0;
  };
  FX.log_pdf_fn = [FY, r, lx](double x) {
    return x > lx ? FY.log_pdf_fn(r - 1.0 / x) - 2.0 * std::log(x) : neg_inf;
  };
  FX.cdf_fn = [FY, r, lx](double x) { return x > lx ? FY.cdf_fn(r - 1.0 / x) : 0.0; };
  FX.survival_fn = [FY, r, lx](double x) { return x > lx ? FY.survival_fn(r - 1.0 / x) : 1.0; };
  FX.log_cdf_fn = [FY, r, lx](double x) { return x > lx ? FY.log_cdf_fn(r - 1.0 / x) : neg_inf; };
  FX.log_survival_fn = [FY, r, lx](double x) {
    return x > lx ? FY.log_survival_fn(r - 1.0 / x) : 0.0;
  };
  if (FY.quantile_fn) {
    auto qy = FY.quantile_fn;
    FX.quantile_fn = [qy, r](double p) { return 1.0 / (r - qy(p)); };
  }
  if (FY.upper_quantile_fn) {
    auto uq = FY.upper_quantile_fn;
    FX.upper_quantile_fn = [uq, r](double q) { return 1.0 / (r - uq(q)); };
  }
  FX.known_domain = Domain::Frechet;
  FX.known_alpha = FY.known_alpha;
  return FX;
}

// ---------------------------------------------------------------------------
// Envelope functions dominating g_n, reconstructed from explicit epsilons.
// ---------------------------------------------------------------------------

enum class EnvelopeKind { FrechetH, GumbelH1, GumbelH2 };

// FrechetH:  h(x) = C x^{-alpha'-1} exp(-c x^{-alpha'}),  x in (0, 1],
//            alpha' = alpha - eps2, C = (alpha+eps1)/(1-eps2),
//            c = (1-eps3)/(1-eps2).
// GumbelH1:  h1(x) = c1 (1+eps4|x|)^{c2} exp(-c3 (1+eps4|x|)^{1/eps4}), x < 0,
//            c2 = (1+eps2)/eps4, c3 = (1-eps3)(1+eps4)^2.
// GumbelH2:  h2(x) = c1 (1-eps4 x)^{c2} exp(-c3 (1-eps4 x)^{1/eps4}),
//            0 < x < 1/eps4, c2 = (1-eps2)/eps4, requires eps4 > eps2.
// The Frechet prefactor plays two roles (overall scale and exponent scale);
// both derived constants are exposed separately.
struct EnvelopeSpec {
  EnvelopeKind kind;
  std::vector<double> epsilons;
  double alpha = 0.0;  // Frechet tail index; unused for the Gumbel kinds

  double power = 0.0;           // alpha' or c2
  double prefactor = 0.0;       // C or c1
  double exponent_scale = 0.0;  // c or c3

  static EnvelopeSpec frechet_h(double alpha, double eps1, double eps2, double eps3) {
    require_eps(eps1);
    require_eps(eps2);
    require_eps(eps3);
    if (!(eps2 < alpha))
      throw std::invalid_argument("EnvelopeSpec: FrechetH requires eps2 < alpha");
    EnvelopeSpec e;
    e.kind = EnvelopeKind::FrechetH;
    e.epsilons = {eps1, eps2, eps3};
    e.alpha = alpha;
    e.power = alpha - eps2;
    e.prefactor = (alpha + eps1) / (1.0 - eps2);
    e.exponent_scale = (1.0 - eps3) / (1.0 - eps2);
    return e;
  }

  static EnvelopeSpec gumbel_h1(double eps1, double eps2, double eps3, double eps4, double eps5) {
    EnvelopeSpec e = gumbel_common(EnvelopeKind::GumbelH1, eps1, eps2, eps3, eps4, eps5);
    e.power = (1.0 + eps2) / eps4;
    e.prefactor = (1.0 + eps1) * std::pow(1.0 + eps4, 2.0 * (1.0 + eps2) / eps4) /
                  ((1.0 - eps2) * std::pow(1.0 - eps5, 1.0 + eps2));
    return e;
  }

  static EnvelopeSpec gumbel_h2(double eps1, double eps2, double eps3, double eps4, double eps5) {
    if (!(eps4 > eps2))
      throw std::invalid_argument("EnvelopeSpec: GumbelH2 requires eps4 > eps2");
    EnvelopeSpec e = gumbel_common(EnvelopeKind::GumbelH2, eps1, eps2, eps3, eps4, eps5);
    e.power = (1.0 - eps2) / eps4;
    e.prefactor = (1.0 + eps1) * std::pow(1.0 + eps4, 2.0 * (1.0 - eps2) / eps4) /
                  ((1.0 - eps2) * std::pow(1.0 - eps5, 1.0 - eps2));
    return e;
  }

  double eps4() const { return epsilons.size() == 5 ? epsilons[3] : 0.0; }

  double evaluate(double x) const {
    switch (kind) {
      case EnvelopeKind::FrechetH: {
        if (!(x > 0.0)) throw std::domain_error("EnvelopeSpec: FrechetH needs x > 0");
        return prefactor * std::pow(x, -power - 1.0) *
               std::exp(-exponent_scale * std::pow(x, -power));
      }
      case EnvelopeKind::GumbelH1: {
        const double base = 1.0 + eps4() * std::abs(x);
        return prefactor * std::pow(base, power) *
               std::exp(-exponent_scale * std::pow(base, 1.0 / eps4()));
      }
      default: {
        const double base = 1.0 - eps4() * x;
        if (!(base > 0.0))
          throw std::domain_error("EnvelopeSpec: GumbelH2 needs eps4 * x < 1");
        return prefactor * std::pow(base, power) *
               std::exp(-exponent_scale * std::pow(base, 1.0 / eps4()));
      }
    }
  }

 private:
  static void require_eps(double e) {
    if (!(e > 0.0 && e < 1.0)) throw std::invalid_argument("EnvelopeSpec: epsilons must lie in (0, 1)");
  }
  static EnvelopeSpec gumbel_common(EnvelopeKind k, double eps1, double eps2, double eps3,
                                    double eps4, double eps5) {
    require_eps(eps1);
    require_eps(eps2);
    require_eps(eps3);
    require_eps(eps4);
    require_eps(eps5);
    EnvelopeSpec e;
    e.kind = k;
    e.epsilons = {eps1, eps2, eps3, eps4, eps5};
    e.exponent_scale = (1.0 - eps3) * (1.0 + eps4) * (1.0 + eps4);
    return e;
  }
};

// 33 geometrically spaced points over the region an envelope kind addresses.
inline std::vector<double> default_envelope_grid(EnvelopeKind kind, double eps4 = 0.0) {
  constexpr int kPoints = 33;
  std::vector<double> xs(kPoints);
  auto geometric = [&](double lo, double hi) {
    const double ratio = std::log(hi / lo) / (kPoints - 1);
    for (int i = 0; i < kPoints; ++i) xs[i] = lo * std::exp(ratio * i);
    xs.front() = lo;
    xs.back() = hi;  // the exponential form can overshoot by one ulp
  };
  switch (kind) {
    case EnvelopeKind::FrechetH: geometric(1e-2, 1.0); break;
    case EnvelopeKind::GumbelH1:
      geometric(1e-2, 10.0);
      for (auto& x : xs) x = -x;
      break;
    default:
      if (!(eps4 > 0.0)) throw std::domain_error("default_envelope_grid: GumbelH2 needs eps4 > 0");
      geometric(1e-2, 0.99 / eps4);
      break;
  }
  return xs;
}

// ---------------------------------------------------------------------------
// Grid predicates for the finite-n bounds. They report, they do not certify:
// an honest list of violations is the output, not a proof.
// ---------------------------------------------------------------------------

struct BoundCheck {
  double t = 0.0;     // secondary coordinate where applicable
  double x = 0.0;     // grid point
  double value = 0.0; // quantity being bounded
  double lower = -std::numeric_limits<double>::infinity();
  double upper = std::numeric_limits<double>::infinity();
  bool ok = true;
  bool skipped = false;
};

struct BoundReport {
  bool holds = true;
  std::vector<BoundCheck> checks;
  std::vector<std::string> notes;

  void add(BoundCheck c) {
    if (!c.skipped && !c.ok) holds = false;
    checks.push_back(std::move(c));
  }
};

// Potter bounds for U regularly varying with index rho:
//   (1-eps) x^{rho-eps} < U(tx)/U(t) < (1+eps) x^{rho+eps),  x >= 1, t >= t0.
// Strict inequalities; eps = 0 would fail at x = 1 by construction, so it is
// rejected up front.
inline BoundReport potter_bound_holds(const std::function<double(double)>& U, double rho,
                                      double eps, double t0, std::span<const double> xs,
                                      std::span<const double> ts) {
  if (!(eps > 0.0)) throw std::domain_error("potter_bound_holds: requires eps > 0");
  for (double x : xs)
    if (!(x >= 1.0)) throw std::domain_error("potter_bound_holds: grid xs must lie in [1, inf)");
  for (double t : ts)
    if (!(t >= t0)) throw std::domain_error("potter_bound_holds: grid ts must lie in [t0, inf)");
  BoundReport rep;
  for (double t : ts) {
    const double ut = U(t);
    for (double x : xs) {
      BoundCheck c;
      c.t = t;
      c.x = x;
      c.value = U(t * x) / ut;
      c.lower = (1.0 - eps) * std::pow(x, rho - eps);
      c.upper = (1.0 + eps) * std::pow(x, rho + eps);
      c.ok = c.lower < c.value && c.value < c.upper;
      rep.add(c);
    }
  }
  return rep;
}

// Finite-n tail bound in the Gumbel domain:
//   n(1 - F(a_n x + b_n)) <= (1+eps)^2 (1+eps x)^{-1/eps}        for x >= 0,
//   n(1 - F(a_n x + b_n)) <= (1+eps)^2 (1-eps|x|)^{-1/eps}       for x < 0,
// needing eps |x| < 1 on the negative branch. Both sides approach
// (1+eps)^2 e^{-x} as eps -> 0 from above, so the bound contains the limit
// n F-bar -> e^{-x} with margin.
inline BoundReport gumbel_tail_bound_holds(const DistributionFamily& F, long long n, double eps,
                                           std::span<const double> xs,
                                           double quad_rel_tol = 1e-10) {
  if (!(eps > 0.0)) throw std::domain_error("gumbel_tail_bound_holds: requires eps > 0");
  const NormingConstants c = norming_constants(F, Domain::Gumbel, n, quad_rel_tol);
  BoundReport rep;
  for (double x : xs) {
    if (x < 0.0 && !(eps * -x < 1.0))
      throw std::domain_error("gumbel_tail_bound_holds: needs eps*|x| < 1 for x < 0");
    BoundCheck chk;
    chk.x = x;
    chk.value = static_cast<double>(n) * survival(F, c.a * x + c.b);
    const double base = x >= 0.0 ? 1.0 + eps * x : 1.0 - eps * (-x);
    chk.upper = (1.0 + eps) * (1.0 + eps) * std::pow(base, -1.0 / eps);
    chk.ok = chk.value <= chk.upper;
    rep.add(chk);
  }
  return rep;
}

// Auxiliary-function ratio bounds: with L(t) = -log F(t),
//   (1-eps) [L(t)/L(t+xu(t))]^{-eps} <= u(t+xu(t))/u(t) <= (1+eps) [L(t)/L(t+xu(t))]^{eps}
// for x >= 0, and with the ratio flipped inside the brackets for x < 0.
// Shifted points outside the support are skipped with a note.
inline BoundReport auxiliary_ratio_bound_holds(const DistributionFamily& F, double t, double eps,
                                               std::span<const double> xs,
                                               double quad_rel_tol = 1e-10) {
  if (!(eps > 0.0)) throw std::domain_error("auxiliary_ratio_bound_holds: requires eps > 0");
  const double ut = auxiliary_function(F, t, quad_rel_tol);
  const double Lt = -log_cdf(F, t);
  BoundReport rep;
  for (double x : xs) {
    BoundCheck chk;
    chk.t = t;
    chk.x = x;
    const double s = t + x * ut;
    if (!(s < F.right.as_double()) || !(s > F.left.as_double()) || !(survival(F, s) > 0.0)) {
      chk.skipped = true;
      rep.notes.push_back("x = " + std::to_string(x) + ": shifted point outside support, skipped");
      rep.add(chk);
      continue;
    }
    chk.value = auxiliary_function(F, s, quad_rel_tol) / ut;
    const double Ls = -log_cdf(F, s);
    const double bracket = x >= 0.0 ? Lt / Ls : Ls / Lt;
    chk.lower = (1.0 - eps) * std::pow(bracket, -eps);
    chk.upper = (1.0 + eps) * std::pow(bracket, eps);
    chk.ok = chk.lower <= chk.value && chk.value <= chk.upper;
    rep.add(chk);
  }
  return rep;
}

// Pointwise domination g_n(x) <= h(x) on a grid inside the region the
// envelope addresses: (0, 1] for FrechetH, x < 0 for GumbelH1, and
// 0 < x < 1/eps4 for GumbelH2.
inline BoundReport envelope_dominates(const NormalizedMaximaDensity& D, const EnvelopeSpec& E,
                                      std::span<const double> xs) {
  const Domain want = E.kind == EnvelopeKind::FrechetH ? Domain::Frechet : Domain::Gumbel;
  if (D.constants.domain != want)
    throw std::domain_error("envelope_dominates: envelope kind does not match the density's domain");
  BoundReport rep;
  for (double x : xs) {
    switch (E.kind) {
      case EnvelopeKind::FrechetH:
        if (!(x > 0.0 && x <= 1.0))
          throw std::domain_error("envelope_dominates: FrechetH grid must lie in (0, 1]");
        break;
      case EnvelopeKind::GumbelH1:
        if (!(x < 0.0)) throw std::domain_error("envelope_dominates: GumbelH1 grid must lie in (-inf, 0)");
        break;
      default:
        if (!(x > 0.0 && E.eps4() * x < 1.0))
          throw std::domain_error("envelope_dominates: GumbelH2 grid must satisfy 0 < x < 1/eps4");
        break;
    }
    BoundCheck chk;
    chk.x = x;
    const double L = gn_log_density(D, x);
    chk.value = L > kLogFloor ? std::exp(L) : 0.0;
    chk.upper = E.evaluate(x);
    chk.ok = chk.value <= chk.upper;
    rep.add(chk);
  }
  return rep;
}

}  // namespace evt
