#pragma once

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstddef>
#include <cstdio>
#include <exception>
#include <fstream>
#include <limits>
#include <mutex>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include <json.hpp>

#include "evt/classify.hpp"
#include "evt/distributions.hpp"
#include "evt/entropy.hpp"
#include "evt/errors.hpp"
#include "evt/evt_limits.hpp"
#include "evt/maxima.hpp"
#include "evt/norming.hpp"

namespace evt {

// A configuration was rejected before any computation (CLI exit code 2).
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Writing results failed (CLI exit code 4).
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct ExperimentConfig {
  std::string family;
  std::vector<double> params;
  std::string domain = "auto";  // "auto" | "frechet" | "weibull" | "gumbel"
  std::vector<double> betas;
  std::vector<long long> ns;
  double quad_rel_tol = 1e-10;
  std::string output_path;  // empty = stdout
};

// Strict parse: every key must be known, spelled exactly, and well typed.
inline ExperimentConfig experiment_config_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw ConfigError("config: top level must be a JSON object");
  static const std::vector<std::string> known = {"family", "params",       "domain",
                                                 "betas",  "ns",           "quad_rel_tol",
                                                 "output_path"};
  for (auto it = j.begin(); it != j.end(); ++it) {
    bool ok = false;
    for (const auto& k : known) ok = ok || it.key() == k;
    if (!ok) throw ConfigError("config: unknown key '" + it.key() + "'");
  }
  ExperimentConfig cfg;
  try {
    if (!j.contains("family")) throw ConfigError("config: missing 'family'");
    cfg.family = j.at("family").get<std::string>();
    if (j.contains("params")) cfg.params = j.at("params").get<std::vector<double>>();
    if (j.contains("domain")) cfg.domain = j.at("domain").get<std::string>();
    if (!j.contains("betas")) throw ConfigError("config: missing 'betas'");
    cfg.betas = j.at("betas").get<std::vector<double>>();
    if (!j.contains("ns")) throw ConfigError("config: missing 'ns'");
    cfg.ns = j.at("ns").get<std::vector<long long>>();
    if (j.contains("quad_rel_tol")) cfg.quad_rel_tol = j.at("quad_rel_tol").get<double>();
    if (j.contains("output_path")) cfg.output_path = j.at("output_path").get<std::string>();
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }
  return cfg;
}

inline ExperimentConfig load_experiment_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open config file '" + path + "'");
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("config: invalid JSON: ") + e.what());
  }
  return experiment_config_from_json(j);
}

// One experiment row. A cell whose quadrature diverged is kept as an error
// row: the numeric fields are NaN and `diverged` is set.
struct ConvergenceRecord {
  std::string family;
  std::optional<double> alpha;
  double beta = 0.0;
  long long n = 0;
  double h_gn = 0.0;
  double h_limit = 0.0;
  double abs_error = 0.0;
  double quad_error = 0.0;
  bool diverged = false;
};

// %.17g rendering used for every float field in emitted CSV.
inline std::string format_g17(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

inline void emit_csv(const std::vector<ConvergenceRecord>& records, std::ostream& os) {
  os << "family,alpha,beta,n,h_gn,h_limit,abs_error,quad_error\n";
  for (const auto& r : records) {
    os << r.family << ',' << (r.alpha ? format_g17(*r.alpha) : "") << ',' << format_g17(r.beta)
       << ',' << r.n << ',' << format_g17(r.h_gn) << ',' << format_g17(r.h_limit) << ','
       << format_g17(r.abs_error) << ',' << format_g17(r.quad_error) << '\n';
  }
}

inline void emit_csv_file(const std::vector<ConvergenceRecord>& records, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open output file '" + path + "'");
  emit_csv(records, out);
  out.flush();
  if (!out) throw IoError("failed writing output file '" + path + "'");
}

// Plot-ready series: one (n, abs_error) row per beta.
inline void emit_plot_data(const std::vector<ConvergenceRecord>& records, std::ostream& os) {
  os << "beta,n,abs_error\n";
  for (const auto& r : records)
    os << format_g17(r.beta) << ',' << r.n << ',' << format_g17(r.abs_error) << '\n';
}

inline void emit_plot_data_file(const std::vector<ConvergenceRecord>& records,
                                const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open output file '" + path + "'");
  emit_plot_data(records, out);
  out.flush();
  if (!out) throw IoError("failed writing output file '" + path + "'");
}

namespace detail {

inline Domain resolve_domain(const DistributionFamily& F, const std::string& requested) {
  if (requested == "frechet") return Domain::Frechet;
  if (requested == "weibull") return Domain::Weibull;
  if (requested == "gumbel") return Domain::Gumbel;
  if (requested != "auto")
    throw ConfigError("config: domain must be one of auto/frechet/weibull/gumbel, got '" +
                      requested + "'");
  if (F.known_domain) return *F.known_domain;
  const DomainVerdict v = classify_domain(F, 16);
  switch (v.domain) {
    case Classification::Frechet: return Domain::Frechet;
    case Classification::Weibull: return Domain::Weibull;
    case Classification::Gumbel: return Domain::Gumbel;
    default:
      throw ConfigError("config: domain 'auto' could not classify family '" + F.name + "'");
  }
}

inline MaxStableLaw limit_law(const DistributionFamily& F, Domain domain) {
  if (domain == Domain::Gumbel) return MaxStableLaw::gumbel();
  double alpha;
  if (F.known_alpha) {
    alpha = *F.known_alpha;
  } else {
    const DomainVerdict v = classify_domain(F, 16);
    if (!v.alpha_estimate)
      throw ConfigError("config: no tail index available for family '" + F.name + "'");
    alpha = *v.alpha_estimate;
  }
  return domain == Domain::Frechet ? MaxStableLaw::frechet(alpha) : MaxStableLaw::weibull(alpha);
}

}  // namespace detail

// Reproduce the entropy-convergence experiment over the (beta, n) grid.
// Deterministic output ordering: beta outer, n inner. Workers may fan out
// over cells; each cell's computation is self-contained and the results are
// assembled in grid order, so the record list is identical for any thread
// count.
inline std::vector<ConvergenceRecord> run_convergence(const ExperimentConfig& cfg,
                                                      unsigned threads = 1,
                                                      bool theorem_mode = false,
                                                      std::size_t max_evaluations_per_cell =
                                                          1'000'000) {
  if (cfg.betas.empty()) throw ConfigError("config: betas must be nonempty");
  if (cfg.ns.empty()) throw ConfigError("config: ns must be nonempty");
  for (std::size_t i = 1; i < cfg.ns.size(); ++i)
    if (!(cfg.ns[i] > cfg.ns[i - 1])) throw ConfigError("config: ns must be strictly increasing");
  for (long long n : cfg.ns)
    if (n < 1) throw ConfigError("config: ns must be positive");
  if (!(cfg.quad_rel_tol > 0.0)) throw ConfigError("config: quad_rel_tol must be positive");
  for (double b : cfg.betas) {
    if (theorem_mode && !(b > 1.0))
      throw ConfigError("config: theorem mode requires beta > 1, got beta = " + format_g17(b));
    if (!(b > 0.0) || b == 1.0)
      throw ConfigError("config: betas must be positive and != 1, got beta = " + format_g17(b));
  }

  DistributionFamily F;
  try {
    F = make_family(cfg.family, cfg.params);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }
  const Domain domain = detail::resolve_domain(F, cfg.domain);
  const MaxStableLaw law = detail::limit_law(F, domain);

  // Hypothesis gate: the beta-th power of the input density must integrate.
  for (double b : cfg.betas) {
    try {
      Integrand fpow = [&F, b](double x) {
        const double t = b * log_pdf(F, x);
        return t > kLogFloor ? std::exp(t) : 0.0;
      };
      integrate_adaptive(fpow, support(F), 1e-6);
    } catch (const NumericError&) {
      throw ConfigError("config: hypothesis failed: integral of f^beta is not finite for beta = " +
                        format_g17(b));
    }
  }

  // Limit entropies; a validity violation here is a config-level failure.
  std::vector<double> limits(cfg.betas.size());
  for (std::size_t i = 0; i < cfg.betas.size(); ++i) {
    try {
      limits[i] = limit_renyi_entropy(law, RenyiOrder(cfg.betas[i]));
    } catch (const DivergenceError& e) {
      throw ConfigError(std::string("config: hypothesis failed: ") + e.what());
    } catch (const std::domain_error& e) {
      throw ConfigError(std::string("config: ") + e.what());
    }
  }

  // Norming constants per n, shared read-only across workers.
  std::vector<NormingConstants> constants;
  constants.reserve(cfg.ns.size());
  for (long long n : cfg.ns) constants.push_back(norming_constants(F, domain, n, cfg.quad_rel_tol));

  const std::optional<double> alpha =
      domain == Domain::Gumbel ? std::nullopt : std::optional<double>(law.alpha);

  const std::size_t cells = cfg.betas.size() * cfg.ns.size();
  std::vector<ConvergenceRecord> records(cells);
  auto compute_cell = [&](std::size_t idx) {
    const std::size_t bi = idx / cfg.ns.size();
    const std::size_t ni = idx % cfg.ns.size();
    ConvergenceRecord rec;
    rec.family = F.name;
    rec.alpha = alpha;
    rec.beta = cfg.betas[bi];
    rec.n = cfg.ns[ni];
    rec.h_limit = limits[bi];
    const NormalizedMaximaDensity D{F, constants[ni]};
    try {
      const EntropyResult er =
          renyi_entropy_numeric([&D](double x) { return gn_log_density(D, x); }, gn_support(D),
                                RenyiOrder(rec.beta), cfg.quad_rel_tol, max_evaluations_per_cell);
      rec.h_gn = er.entropy;
      rec.abs_error = std::abs(rec.h_gn - rec.h_limit);
      rec.quad_error = er.quad_error;
    } catch (const NumericError&) {
      const double nan = std::numeric_limits<double>::quiet_NaN();
      rec.h_gn = nan;
      rec.abs_error = nan;
      rec.quad_error = nan;
      rec.diverged = true;
    }
    records[idx] = std::move(rec);
  };

  if (threads <= 1 || cells <= 1) {
    for (std::size_t i = 0; i < cells; ++i) compute_cell(i);
    return records;
  }

  std::atomic<std::size_t> next{0};
  std::exception_ptr first_error;
  std::mutex error_mutex;
  const unsigned workers = std::min<unsigned>(threads, static_cast<unsigned>(cells));
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (;;) {
        const std::size_t i = next.fetch_add(1);
        if (i >= cells) return;
        try {
          compute_cell(i);
        } catch (...) {
          std::lock_guard<std::mutex> lock(error_mutex);
          if (!first_error) first_error = std::current_exception();
          return;
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  if (first_error) std::rethrow_exception(first_error);
  return records;
}

}  // namespace evt
