// evtlab: numerical extreme-value-theory lab.
//
// Subcommands: converge, entropy, limit-entropy, norming, classify,
// check-bounds, moments. Exit codes: 0 success, 2 config error,
// 3 numeric divergence/no-convergence, 4 I/O error.

#include <cstdio>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "evt/classify.hpp"
#include "evt/distributions.hpp"
#include "evt/entropy.hpp"
#include "evt/evt_limits.hpp"
#include "evt/lab.hpp"
#include "evt/maxima.hpp"
#include "evt/norming.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitNumeric = 3;
constexpr int kExitIo = 4;

std::string g17(double v) { return evt::format_g17(v); }

evt::Domain parse_domain_or_resolve(const evt::DistributionFamily& F, const std::string& name) {
  if (name == "frechet") return evt::Domain::Frechet;
  if (name == "weibull") return evt::Domain::Weibull;
  if (name == "gumbel") return evt::Domain::Gumbel;
  if (name != "auto")
    throw evt::ConfigError("domain must be one of auto/frechet/weibull/gumbel, got '" + name + "'");
  if (F.known_domain) return *F.known_domain;
  const evt::DomainVerdict v = evt::classify_domain(F, 16);
  switch (v.domain) {
    case evt::Classification::Frechet: return evt::Domain::Frechet;
    case evt::Classification::Weibull: return evt::Domain::Weibull;
    case evt::Classification::Gumbel: return evt::Domain::Gumbel;
    default: throw evt::ConfigError("could not classify family '" + F.name + "'");
  }
}

evt::MaxStableLaw law_for(const evt::DistributionFamily& F, evt::Domain domain) {
  if (domain == evt::Domain::Gumbel) return evt::MaxStableLaw::gumbel();
  if (!F.known_alpha) {
    const auto v = evt::classify_domain(F, 16);
    if (!v.alpha_estimate) throw evt::ConfigError("no tail index available for '" + F.name + "'");
    return domain == evt::Domain::Frechet ? evt::MaxStableLaw::frechet(*v.alpha_estimate)
                                          : evt::MaxStableLaw::weibull(*v.alpha_estimate);
  }
  return domain == evt::Domain::Frechet ? evt::MaxStableLaw::frechet(*F.known_alpha)
                                        : evt::MaxStableLaw::weibull(*F.known_alpha);
}

void print_report(const evt::BoundReport& rep) {
  for (const auto& c : rep.checks) {
    if (c.skipped) {
      std::cout << "x = " << g17(c.x) << "  skipped\n";
      continue;
    }
    std::cout << "x = " << g17(c.x);
    if (c.t != 0.0) std::cout << "  t = " << g17(c.t);
    std::cout << "  value = " << g17(c.value);
    if (std::isfinite(c.lower)) std::cout << "  lower = " << g17(c.lower);
    if (std::isfinite(c.upper)) std::cout << "  upper = " << g17(c.upper);
    std::cout << (c.ok ? "  ok" : "  VIOLATED") << "\n";
  }
  for (const auto& n : rep.notes) std::cout << "note: " << n << "\n";
  std::cout << "holds: " << (rep.holds ? "true" : "false") << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"numerical lab for entropies of normalized maxima"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_path;
  double quad_tol = 1e-10;
  app.add_option("--config", config_path, "experiment config (JSON)");
  auto* opt_out = app.add_option("--out", out_path, "output path (overrides config)");
  auto* opt_tol = app.add_option("--quad-tol", quad_tol, "quadrature relative tolerance");

  std::string family = "exponential";
  std::vector<double> params;
  std::string domain = "auto";
  double beta = 2.0;
  long long n = 0;
  int k = 1;
  unsigned threads = 1;
  bool theorem_mode = false;
  std::string plot_path;
  std::string law_name = "gumbel";
  double alpha = 1.0;
  int grid_size = 16;
  std::string bound_name;
  std::string envelope_kind;
  std::vector<double> eps;
  std::vector<double> grid;
  std::vector<double> ts;
  double rho = 0.0;
  double t0 = 10.0;
  double t_point = 0.0;

  auto add_family_opts = [&](CLI::App* sub) {
    sub->add_option("--family", family, "family name")->capture_default_str();
    sub->add_option("--params", params, "family parameters")->delimiter(',');
    sub->fallthrough();
  };

  // converge ----------------------------------------------------------------
  auto* converge = app.add_subcommand("converge", "run the entropy-convergence experiment grid");
  converge->fallthrough();
  converge->add_option("--threads", threads, "worker threads")->capture_default_str();
  converge->add_flag("--theorem-mode", theorem_mode, "reject beta <= 1 before computing");
  converge->add_option("--plot-data", plot_path, "also write (beta, n, abs_error) CSV here");
  converge->callback([&] {
    if (config_path.empty()) throw evt::ConfigError("converge: --config is required");
    evt::ExperimentConfig cfg = evt::load_experiment_config(config_path);
    if (*opt_out) cfg.output_path = out_path;
    if (*opt_tol) cfg.quad_rel_tol = quad_tol;
    const auto records = evt::run_convergence(cfg, threads, theorem_mode);
    if (cfg.output_path.empty())
      evt::emit_csv(records, std::cout);
    else
      evt::emit_csv_file(records, cfg.output_path);
    if (!plot_path.empty()) evt::emit_plot_data_file(records, plot_path);
    for (const auto& r : records)
      if (r.diverged) throw evt::DivergenceError("converge: at least one grid cell diverged");
  });

  // entropy -----------------------------------------------------------------
  auto* entropy = app.add_subcommand("entropy", "Renyi entropy of a family pdf or of g_n");
  add_family_opts(entropy);
  entropy->add_option("--beta", beta, "Renyi order")->required();
  entropy->add_option("--n", n, "sample size; entropy of g_n when given");
  entropy->add_option("--domain", domain, "domain of attraction")->capture_default_str();
  entropy->callback([&] {
    const auto F = evt::make_family(family, params);
    evt::EntropyResult er{};
    if (n > 0) {
      const auto dom = parse_domain_or_resolve(F, domain);
      const auto D = evt::normalized_maxima(F, dom, n, quad_tol);
      er = evt::renyi_entropy_numeric([&D](double x) { return evt::gn_log_density(D, x); },
                                      evt::gn_support(D), evt::RenyiOrder(beta), quad_tol);
      std::cout << "family = " << F.name << "\nn = " << n << "\n";
    } else {
      er = evt::renyi_entropy_numeric([&F](double x) { return evt::log_pdf(F, x); },
                                      evt::support(F), evt::RenyiOrder(beta), quad_tol);
      std::cout << "family = " << F.name << "\n";
    }
    std::cout << "beta = " << g17(beta) << "\nentropy = " << g17(er.entropy)
              << "\nintegral = " << g17(er.integral) << "\nquad_error = " << g17(er.quad_error)
              << "\n";
  });

  // limit-entropy -------------------------------------------------------------
  auto* limit = app.add_subcommand("limit-entropy", "closed-form Renyi entropy of a max-stable law");
  limit->fallthrough();
  limit->add_option("--law", law_name, "frechet | weibull | gumbel")->required();
  limit->add_option("--alpha", alpha, "shape (frechet/weibull)")->capture_default_str();
  limit->add_option("--beta", beta, "Renyi order")->required();
  limit->callback([&] {
    evt::MaxStableLaw G = evt::MaxStableLaw::gumbel();
    if (law_name == "frechet")
      G = evt::MaxStableLaw::frechet(alpha);
    else if (law_name == "weibull")
      G = evt::MaxStableLaw::weibull(alpha);
    else if (law_name != "gumbel")
      throw evt::ConfigError("limit-entropy: unknown law '" + law_name + "'");
    const double h = evt::limit_renyi_entropy(G, evt::RenyiOrder(beta));
    std::cout << "law = " << law_name << "\n";
    if (law_name != "gumbel") std::cout << "alpha = " << g17(alpha) << "\n";
    std::cout << "beta = " << g17(beta) << "\nentropy = " << g17(h) << "\n";
  });

  // norming -------------------------------------------------------------------
  auto* norming = app.add_subcommand("norming", "norming constants a_n, b_n for a family");
  add_family_opts(norming);
  norming->add_option("--domain", domain, "domain of attraction")->capture_default_str();
  norming->add_option("--n", n, "sample size")->required();
  norming->callback([&] {
    const auto F = evt::make_family(family, params);
    const auto dom = parse_domain_or_resolve(F, domain);
    const auto c = evt::norming_constants(F, dom, n, quad_tol);
    std::cout << "family = " << F.name << "\nn = " << c.n << "\na = " << g17(c.a)
              << "\nb = " << g17(c.b) << "\ndomain = " << evt::domain_name(c.domain) << "\n";
  });

  // classify --------------------------------------------------------------------
  auto* classify = app.add_subcommand("classify", "domain-of-attraction verdict with ratio trace");
  add_family_opts(classify);
  classify->add_option("--grid-size", grid_size, "tail grid size")->capture_default_str();
  classify->callback([&] {
    const auto F = evt::make_family(family, params);
    const auto v = evt::classify_domain(F, grid_size);
    std::cout << "family = " << F.name << "\ndomain = " << evt::classification_name(v.domain)
              << "\n";
    if (v.alpha_estimate) std::cout << "alpha = " << g17(*v.alpha_estimate) << "\n";
    std::cout << "trace:\n";
    for (const auto& [t, ratio] : v.ratio_trace)
      std::cout << "  t = " << g17(t) << "  ratio = " << g17(ratio) << "\n";
  });

  // check-bounds ------------------------------------------------------------------
  auto* bounds = app.add_subcommand("check-bounds", "evaluate the finite-n bound predicates");
  add_family_opts(bounds);
  bounds->add_option("--bound", bound_name, "potter | tail | aux-ratio | envelope")->required();
  bounds->add_option("--eps", eps, "epsilon(s)")->delimiter(',');
  bounds->add_option("--n", n, "sample size")->capture_default_str();
  bounds->add_option("--grid", grid, "x grid")->delimiter(',');
  bounds->add_option("--rho", rho, "regular-variation index (potter)");
  bounds->add_option("--t0", t0, "threshold t0 (potter)")->capture_default_str();
  bounds->add_option("--ts", ts, "t grid (potter)")->delimiter(',');
  bounds->add_option("--t", t_point, "base point t (aux-ratio)");
  bounds->add_option("--envelope-kind", envelope_kind, "frechet-h | gumbel-h1 | gumbel-h2");
  bounds->callback([&] {
    const auto F = evt::make_family(family, params);
    if (n <= 0) n = 100000;
    evt::BoundReport rep;
    if (bound_name == "potter") {
      const double e = eps.empty() ? 0.1 : eps[0];
      if (ts.empty()) ts = {10.0, 100.0, 1000.0};
      if (grid.empty()) grid = {1.0, 2.0, 4.0, 8.0};
      rep = evt::potter_bound_holds([&F](double t) { return evt::survival(F, t); }, rho, e, t0,
                                    grid, ts);
    } else if (bound_name == "tail") {
      const double e = eps.empty() ? 0.2 : eps[0];
      if (grid.empty()) grid = {0.0, 0.5, 1.0, 2.0, -0.5, -2.0};
      rep = evt::gumbel_tail_bound_holds(F, n, e, grid, quad_tol);
    } else if (bound_name == "aux-ratio") {
      const double e = eps.empty() ? 0.25 : eps[0];
      if (grid.empty()) grid = {0.5, 1.0, -0.5};
      rep = evt::auxiliary_ratio_bound_holds(F, t_point, e, grid, quad_tol);
    } else if (bound_name == "envelope") {
      evt::EnvelopeSpec spec = [&] {
        if (envelope_kind == "frechet-h") {
          if (eps.size() != 3)
            throw evt::ConfigError("envelope frechet-h needs --eps eps1,eps2,eps3");
          if (!F.known_alpha) throw evt::ConfigError("envelope frechet-h needs a family with a tail index");
          return evt::EnvelopeSpec::frechet_h(*F.known_alpha, eps[0], eps[1], eps[2]);
        }
        if (envelope_kind == "gumbel-h1" || envelope_kind == "gumbel-h2") {
          if (eps.size() != 5)
            throw evt::ConfigError("envelope " + envelope_kind + " needs --eps eps1,...,eps5");
          return envelope_kind == "gumbel-h1"
                     ? evt::EnvelopeSpec::gumbel_h1(eps[0], eps[1], eps[2], eps[3], eps[4])
                     : evt::EnvelopeSpec::gumbel_h2(eps[0], eps[1], eps[2], eps[3], eps[4]);
        }
        throw evt::ConfigError("envelope kind must be frechet-h, gumbel-h1 or gumbel-h2");
      }();
      const auto dom = spec.kind == evt::EnvelopeKind::FrechetH ? evt::Domain::Frechet
                                                                : evt::Domain::Gumbel;
      const auto D = evt::normalized_maxima(F, dom, n, quad_tol);
      if (grid.empty()) grid = evt::default_envelope_grid(spec.kind, spec.eps4());
      rep = evt::envelope_dominates(D, spec, grid);
    } else {
      throw evt::ConfigError("unknown bound '" + bound_name + "'");
    }
    print_report(rep);
  });

  // moments -------------------------------------------------------------------
  auto* moments = app.add_subcommand("moments", "k-th moment of the normalized maximum");
  add_family_opts(moments);
  moments->add_option("--domain", domain, "domain of attraction")->capture_default_str();
  moments->add_option("--n", n, "sample size")->required();
  moments->add_option("--k", k, "moment order")->capture_default_str();
  moments->callback([&] {
    const auto F = evt::make_family(family, params);
    const auto dom = parse_domain_or_resolve(F, domain);
    const auto D = evt::normalized_maxima(F, dom, n, quad_tol);
    const double m = evt::moment_of_normalized_max(D, k, quad_tol);
    std::cout << "family = " << F.name << "\nn = " << n << "\nk = " << k
              << "\nmoment = " << g17(m) << "\n";
    const auto G = law_for(F, dom);
    try {
      std::cout << "limit = " << g17(evt::limit_moment(G, k)) << "\n";
    } catch (const evt::DivergenceError&) {
      std::cout << "limit = infinite\n";
    } catch (const std::domain_error&) {
      // no supported closed form for this order
    }
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    app.exit(e);
    return kExitConfig;
  } catch (const evt::IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitIo;
  } catch (const evt::ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const evt::NumericError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNumeric;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return kExitOk;
}
