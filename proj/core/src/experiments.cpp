#include "tapmeans/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <limits>
#include <sstream>
#include <thread>

#include "tapmeans/errors.hpp"
#include "tapmeans/kfunctional.hpp"
#include "tapmeans/operators.hpp"

namespace tapmeans {
namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

const char* const kOperationalNote =
    "O(.) verdicts are finite-grid surrogates: bounded envelope ratios (band) plus "
    "least-squares exponent fits (tolerance); they do not prove asymptotic statements";

const char* const kInverseLimitation =
    "Theorem 2 also asserts that f^{[r-n]} exists in L_p; every truncated series has all radial "
    "derivatives, so only the quantitative consequences (M_p bound, K-bracket against omega) "
    "are tested here";

std::string num(double x) {
  std::ostringstream os;
  os.precision(6);
  os << x;
  return os.str();
}

// Runs fn(i) for i in [0, count) on up to `jobs` threads. Results are written
// by index, so the outcome does not depend on scheduling. The exception of the
// lowest failing index is rethrown.
template <class F>
void parallel_for(std::size_t count, int jobs, F&& fn) {
  const auto workers = static_cast<std::size_t>(std::max(1, jobs));
  if (workers == 1 || count <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::vector<std::exception_ptr> errors(count);
  std::atomic<std::size_t> next{0};
  {
    std::vector<std::jthread> pool;
    for (std::size_t w = 0; w < std::min(workers, count); ++w) {
      pool.emplace_back([&] {
        for (std::size_t i = next++; i < count; i = next++) {
          try {
            fn(i);
          } catch (...) {
            errors[i] = std::current_exception();
          }
        }
      });
    }
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

NormOptions norm_options(const ExperimentConfig& config) {
  NormOptions o;
  o.grid_points = config.grid_points;
  return o;
}

CatalogEntry load_entry(const ExperimentConfig& config) {
  config.validate();
  auto entry = catalog_entry(config.function, config.seed);
  const int degree = entry.series.degree();
  if (config.grid_points != 0 && config.grid_points < 2 * static_cast<std::size_t>(degree) + 1) {
    throw ConfigError("grid_points must be at least 2 * degree + 1 = " +
                      std::to_string(2 * degree + 1) + " for " + entry.name);
  }
  return entry;
}

const ModulusFunction& require_omega(const ExperimentConfig& config, const char* experiment) {
  if (!config.omega) throw ConfigError(std::string(experiment) + " experiment needs an omega");
  return *config.omega;
}

void require_fit_grid(const ExperimentConfig& config) {
  if (config.rho_grid.size() < 4) throw ConfigError("rate fits need at least 4 rho values");
}

std::vector<double> sorted_grid(std::vector<double> grid) {
  std::sort(grid.begin(), grid.end());
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
  return grid;
}

Check make_check(std::string name, double measured, double limit, std::string detail = {}) {
  const bool pass = std::isfinite(measured) && measured <= limit;
  return {std::move(name), measured, limit, pass, std::move(detail)};
}

// max / min over positive finite ratios.
std::pair<double, double> ratio_range(const std::vector<double>& values) {
  double lo = kInfinity, hi = 0.0;
  for (const double v : values) {
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  return {lo, hi};
}

// Band check used for two-sided statements: max/min over the grid.
Check band_check(std::string name, const std::vector<double>& values, double band) {
  const auto [lo, hi] = ratio_range(values);
  const double spread = lo > 0.0 ? hi / lo : kInfinity;
  return make_check(std::move(name), spread, band,
                    "ratio range [" + num(lo) + ", " + num(hi) + "], max/min = " + num(spread));
}

// One-sided O(.) check: the ratio must not grow by more than `band` relative
// to its value at the coarsest grid point.
Check bounded_check(std::string name, const std::vector<double>& values, double band) {
  const auto [lo, hi] = ratio_range(values);
  const double growth = values.front() > 0.0 ? hi / values.front() : kInfinity;
  return make_check(std::move(name), growth, band,
                    "ratio range [" + num(lo) + ", " + num(hi) + "], max/first = " + num(growth));
}

Check exponent_check(std::string name, double fitted, double expected, double tolerance) {
  const double dev = std::abs(fitted - expected);
  return make_check(std::move(name), dev, tolerance,
                    "fitted " + num(fitted) + ", expected " + num(expected));
}

RateReport start_report(const char* experiment, const ExperimentConfig& config,
                        const CatalogEntry& entry) {
  RateReport report;
  report.experiment = experiment;
  report.function = entry.name;
  report.p = config.p;
  report.r = config.r;
  report.n = config.n;
  report.omega = config.omega ? config.omega->describe() : "";
  report.notes.emplace_back(kOperationalNote);
  report.notes.push_back("band " + num(config.band) + "x, exponent tolerance " +
                         num(config.exponent_tolerance));
  report.identities = run_identity_suite(config);
  if (!report.identities.pass()) {
    Check c{"identities", 0.0, 0.0, false, "identity suite failed; rates not computed"};
    for (const auto& check : report.identities.checks) {
      if (!check.pass) c.detail += "; " + check.name + " = " + num(check.measured);
    }
    report.verdicts.push_back(std::move(c));
  }
  return report;
}

// Fills rows with error(rho) = ||f - A_{rho,r} f||_p and the given envelope.
template <class Envelope>
void measure_defects(RateReport& report, const CatalogEntry& entry,
                     const ExperimentConfig& config, Envelope&& envelope) {
  const auto grid = sorted_grid(config.rho_grid);
  report.rows.resize(grid.size());
  const auto opts = norm_options(config);
  parallel_for(grid.size(), config.jobs, [&](std::size_t i) {
    const double rho = grid[i];
    RateRow& row = report.rows[i];
    row.rho = rho;
    row.one_minus_rho = 1.0 - rho;
    row.error = norm(approximation_defect(entry.series, SmoothingParams(rho, config.r)), config.p, opts);
    row.envelope = envelope(rho);
    row.ratio = row.error / row.envelope;
  });
  std::vector<double> ratios;
  for (const auto& row : report.rows) ratios.push_back(row.ratio);
  std::tie(report.ratio_min, report.ratio_max) = ratio_range(ratios);
  report.trivial = std::all_of(report.rows.begin(), report.rows.end(),
                               [](const RateRow& row) { return row.error == 0.0; });
}

std::optional<RateFit> fit_rows(const RateReport& report) {
  if (report.trivial) return std::nullopt;
  std::vector<std::pair<double, double>> pairs;
  for (const auto& row : report.rows) pairs.emplace_back(row.one_minus_rho, row.error);
  return fit_rate(pairs);
}

std::vector<double> column(const RateReport& report, std::size_t extra_index) {
  std::vector<double> out;
  for (const auto& row : report.rows) out.push_back(row.extra[extra_index]);
  return out;
}

std::vector<double> ratios_of(const RateReport& report) {
  std::vector<double> out;
  for (const auto& row : report.rows) out.push_back(row.ratio);
  return out;
}

void add_trivial_verdict(RateReport& report) {
  report.verdicts.push_back({"trivial case", 0.0, 0.0, true,
                             "all errors vanish: f is a polynomial of degree < r, fixed by A_{rho,r}"});
  report.notes.emplace_back("trivial case");
}

}  // namespace

std::vector<double> geometric_rho_grid(double start, double stop, int count) {
  if (count < 1) throw ConfigError("rho grid needs count >= 1");
  if (!(start >= 0.0 && start < 1.0 && stop >= 0.0 && stop < 1.0)) {
    throw ConfigError("rho grid end points must lie in [0, 1)");
  }
  if (count == 1) return {start};
  if (start == 0.0 && stop == 0.0) return std::vector<double>(1, 0.0);
  const double h0 = std::log(1.0 - start);
  const double h1 = std::log(1.0 - stop);
  std::vector<double> grid;
  for (int i = 0; i < count; ++i) {
    const double t = static_cast<double>(i) / (count - 1);
    grid.push_back(1.0 - std::exp(h0 + t * (h1 - h0)));
  }
  grid.front() = start;
  grid.back() = stop;
  return grid;
}

std::vector<double> default_rho_grid() { return geometric_rho_grid(0.9, 0.999, 12); }

void ExperimentConfig::validate() const {
  validate_norm_index(p);
  if (r < 1) throw ConfigError("r must be >= 1");
  if (n < 1 || n > r) throw ConfigError("need 1 <= n <= r");
  if (rho_grid.empty()) throw ConfigError("rho_grid must not be empty");
  for (const double rho : rho_grid) {
    if (!(rho >= 0.0 && rho < 1.0)) throw ConfigError("every rho must lie in [0, 1)");
  }
  for (const double rho : identity_rho_grid) {
    if (!(rho >= 0.0 && rho < 1.0)) throw ConfigError("every identity rho must lie in [0, 1)");
  }
  for (const double d : deltas) {
    if (!(d > 0.0 && d <= 1.0)) throw ConfigError("every delta must lie in (0, 1]");
  }
  if (grid_points > (std::size_t{1} << 20)) throw ConfigError("grid_points above 2^20");
  if (!(band > 1.0)) throw ConfigError("band must exceed 1");
  if (!(exponent_tolerance > 0.0)) throw ConfigError("exponent_tolerance must be positive");
  if (jobs < 1) throw ConfigError("jobs must be >= 1");
}

bool IdentityReport::pass() const {
  return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.pass; });
}

bool RateReport::pass() const {
  return identities.pass() &&
         std::all_of(verdicts.begin(), verdicts.end(), [](const Check& c) { return c.pass; });
}

bool KfunReport::pass() const {
  return std::all_of(verdicts.begin(), verdicts.end(), [](const Check& c) { return c.pass; });
}

bool ModuliReport::pass() const {
  return std::all_of(conditions.begin(), conditions.end(),
                     [](const ConditionReport& c) { return c.holds; });
}

IdentityReport run_identity_suite(const ExperimentConfig& config) {
  const auto entry = load_entry(config);
  const FourierSeries& f = entry.series;
  const int r = config.r;
  const int degree = f.degree();
  const auto grid = sorted_grid(config.identity_rho_grid);
  const auto opts = norm_options(config);
  const std::size_t n_points =
      std::max(config.grid_points ? config.grid_points : default_grid_points(degree),
               2 * static_cast<std::size_t>(degree) + 1);

  IdentityReport report;
  report.function = entry.name;
  report.r = r;

  // (a) binomial normalization and the range of lambda.
  {
    auto rhos = grid;
    rhos.push_back(0.0);
    rhos.push_back(1.0);
    // k <= 200 plus every frequency present in f.
    std::vector<int> ks;
    for (int k = 0; k <= std::max(r, 200); ++k) ks.push_back(k);
    for (int k = static_cast<int>(ks.size()); k <= degree; ++k) {
      if (f[k] != Complex{} || f[-k] != Complex{}) ks.push_back(k);
    }
    double dev = 0.0;
    for (const double rho : rhos) {
      for (const int k : ks) {
        dev = std::max(dev, std::abs(binomial_partition_sum(k, rho) - 1.0));
        const double lambda = lambda_multiplier(k, r, rho);
        dev = std::max({dev, -lambda, lambda - 1.0});
        if (k < r) dev = std::max(dev, std::abs(lambda - 1.0));
      }
    }
    report.checks.push_back(make_check("binomial normalization", dev, 1e-12,
                                       std::to_string(ks.size()) + " frequencies"));
  }

  // (b) multiplier form of A_{rho,r} against its Taylor form in rho.
  {
    double dev = 0.0;
    for (const double rho : grid) {
      const SmoothingParams params(rho, r);
      dev = std::max(dev, max_abs_difference(synthesize(taylor_abel_poisson(f, params), n_points),
                                             lemma1_taylor_form(f, params, n_points)));
    }
    report.checks.push_back(make_check("multiplier vs Taylor form", dev, 1e-10,
                                       "sup over " + std::to_string(n_points) + " grid points"));
  }

  // (c) f - A_{rho,r} f against its integral representation.
  {
    double dev = 0.0;
    bool converged = true;
    for (const double rho : grid) {
      const auto res = integral_representation_residual(f, SmoothingParams(rho, r), config.p,
                                                        1e-12, opts);
      dev = std::max(dev, res.residual);
      converged = converged && res.converged;
    }
    auto c = make_check("integral representation residual", dev, 1e-8,
                        converged ? "quadrature converged" : "quadrature did not converge");
    c.pass = c.pass && converged;
    report.checks.push_back(std::move(c));
  }

  // (d) A_{rho,1} is the Poisson mean.
  {
    double dev = 0.0;
    for (const double rho : grid) {
      dev = std::max(dev, max_coefficient_difference(taylor_abel_poisson(f, SmoothingParams(rho, 1)),
                                                     poisson_mean(f, rho)));
    }
    report.checks.push_back(make_check("A_{rho,1} = Poisson mean", dev, 1e-12));
  }

  // (e) the means commute.
  {
    double dev = 0.0;
    for (std::size_t i = 0; i < grid.size(); ++i) {
      const SmoothingParams a(grid[i], r);
      const SmoothingParams b(grid[(i + 1) % grid.size()], r + 1);
      dev = std::max(dev, max_coefficient_difference(
                              taylor_abel_poisson(taylor_abel_poisson(f, a), b),
                              taylor_abel_poisson(taylor_abel_poisson(f, b), a)));
    }
    report.checks.push_back(make_check("commutativity", dev, 1e-12));
  }

  // (f) ||(A_{rho,r} f)^{[r]}||_p <= C_r ||f||_p / (1-rho)^r for rho >= 1/2,
  // reported as the largest ratio of the two sides.
  {
    double worst = 0.0;
    const double fnorm = norm(f, config.p, opts);
    std::string detail = "rho >= 1/2 only";
    if (fnorm > 0.0) {
      for (const double rho : grid) {
        if (rho < 0.5) continue;
        const double lhs =
            norm(radial_derivative(taylor_abel_poisson(f, SmoothingParams(rho, r)), r), config.p, opts);
        const double rhs = lemma3_constant(r) * fnorm / std::pow(1.0 - rho, r);
        worst = std::max(worst, lhs / rhs);
      }
    } else {
      detail = "f = 0";
    }
    report.checks.push_back(make_check("Lemma 3 bound", worst, 1.0, detail));
  }
  return report;
}

RateReport run_direct_experiment(const ExperimentConfig& config) {
  const auto entry = load_entry(config);
  require_fit_grid(config);
  const auto& w = require_omega(config, "direct");
  if (const auto z = check_Z(w); !z.holds) {
    throw ExperimentRefused("condition (Z) fails for omega = " + w.describe() + ": " + z.note);
  }
  auto report = start_report("direct", config, entry);
  if (!report.identities.pass()) return report;

  measure_defects(report, entry, config,
                  [&](double rho) { return rate_envelope(w, config.r, config.n, rho); });
  if (report.trivial) {
    add_trivial_verdict(report);
    return report;
  }
  const auto fit = *fit_rows(report);
  const bool powered = w.kind() != ModulusKind::table;
  const double expected = powered ? config.r - config.n + w.alpha() : kNaN;
  report.fits.push_back({"error vs 1-rho", fit, expected});
  report.verdicts.push_back(band_check("envelope band", ratios_of(report), config.band));
  if (w.kind() == ModulusKind::power) {
    report.verdicts.push_back(
        exponent_check("fitted exponent", fit.exponent, expected, config.exponent_tolerance));
  } else if (powered) {
    report.notes.emplace_back("logarithmic factor in omega: exponent reported, not asserted");
  }
  return report;
}

RateReport run_inverse_experiment(const ExperimentConfig& config) {
  const auto entry = load_entry(config);
  require_fit_grid(config);
  const auto& w = require_omega(config, "inverse");
  if (const auto zn = check_Zn(w, config.n); !zn.holds) {
    throw ExperimentRefused("condition (Z_n) fails for omega = " + w.describe() +
                            ", n = " + std::to_string(config.n) + ": " + zn.note);
  }
  auto report = start_report("inverse", config, entry);
  report.notes.emplace_back(kInverseLimitation);
  if (!report.identities.pass()) return report;

  measure_defects(report, entry, config,
                  [&](double rho) { return rate_envelope(w, config.r, config.n, rho); });

  // f^{[r-n]} by exact multiplier action on the truncated series.
  const FourierSeries derivative =
      config.r == config.n ? entry.series : radial_derivative(entry.series, config.r - config.n);
  report.extra_columns = {"m_p", "m_p_ratio", "k_lower", "k_upper", "k_upper_ratio", "k_lower_ratio"};
  const auto opts = norm_options(config);
  KBracketOptions kopts;
  kopts.minimize_options.norm = opts;
  parallel_for(report.rows.size(), config.jobs, [&](std::size_t i) {
    RateRow& row = report.rows[i];
    const double h = row.one_minus_rho;
    const double wh = w(h);
    const double mp = m_p_quantity(entry.series, row.rho, config.r, config.p, opts);
    const auto kb = k_bracket(derivative, h, config.n, config.p, kopts);
    row.extra = {mp, mp * std::pow(h, config.n) / wh, kb.lower, kb.upper, kb.upper / wh, kb.lower / wh};
  });

  if (report.trivial) {
    add_trivial_verdict(report);
    return report;
  }
  const auto fit = *fit_rows(report);
  report.fits.push_back({"error vs 1-rho", fit,
                         w.kind() == ModulusKind::table ? kNaN : config.r - config.n + w.alpha()});
  report.verdicts.push_back(bounded_check("rate hypothesis error/envelope", ratios_of(report), config.band));
  report.verdicts.push_back(bounded_check("M_p (1-rho)^n / omega", column(report, 1), config.band));
  report.verdicts.push_back(bounded_check("K upper / omega", column(report, 4), config.band));
  return report;
}

RateReport run_saturation_experiment(const ExperimentConfig& config) {
  const auto entry = load_entry(config);
  require_fit_grid(config);
  auto report = start_report("saturation", config, entry);
  report.omega.clear();
  if (!report.identities.pass()) return report;

  measure_defects(report, entry, config,
                  [&](double rho) { return std::pow(1.0 - rho, config.r); });
  if (report.trivial) {
    add_trivial_verdict(report);
    return report;
  }
  const auto fit = *fit_rows(report);
  report.fits.push_back({"error vs 1-rho", fit, static_cast<double>(config.r)});
  report.verdicts.push_back(make_check("exponent <= r + 0.1", fit.exponent, config.r + 0.1,
                                       "fitted " + num(fit.exponent)));
  const bool attains = std::abs(fit.exponent - config.r) <= 0.1;
  report.notes.push_back(attains ? "entry attains the saturation order (1-rho)^r"
                                 : "entry converges slower than the saturation order");
  return report;
}

RateReport run_comparison_experiment(const ExperimentConfig& config) {
  const auto entry = load_entry(config);
  require_fit_grid(config);
  auto report = start_report("compare", config, entry);
  report.omega.clear();
  if (!report.identities.pass()) return report;

  const auto grid = sorted_grid(config.rho_grid);
  for (const double rho : grid) {
    if (rho == 0.0) throw ConfigError("compare experiment needs rho > 0 (t = -ln rho)");
  }
  const auto opts = norm_options(config);
  const double r_factorial = std::tgamma(config.r + 1.0);
  report.extra_columns = {"minus_log_rho", "bs_error", "bs_envelope", "bs_ratio"};
  report.rows.resize(grid.size());
  parallel_for(grid.size(), config.jobs, [&](std::size_t i) {
    const double rho = grid[i];
    const FourierSeries mean = poisson_mean(entry.series, rho);
    RateRow& row = report.rows[i];
    row.rho = rho;
    row.one_minus_rho = 1.0 - rho;
    row.error = norm(mean - leis_transform(entry.series, rho, config.r), config.p, opts);
    row.envelope = std::pow(row.one_minus_rho, config.r) / r_factorial;
    row.ratio = row.error / row.envelope;
    const double t = -std::log(rho);
    const double bs_error = norm(mean - butzer_sunouchi(entry.series, rho, config.r), config.p, opts);
    const double bs_envelope = std::pow(t, config.r) / r_factorial;
    row.extra = {t, bs_error, bs_envelope, bs_error / bs_envelope};
  });
  std::tie(report.ratio_min, report.ratio_max) = ratio_range(ratios_of(report));
  report.trivial = std::all_of(report.rows.begin(), report.rows.end(), [](const RateRow& row) {
    return row.error == 0.0 && row.extra[1] == 0.0;
  });
  if (config.r == 1) report.notes.emplace_back("r = 1: the Leis transform is the identity");
  if (report.trivial) {
    report.verdicts.push_back({"trivial case", 0.0, 0.0, true, "f is constant"});
    return report;
  }

  std::vector<std::pair<double, double>> leis, bs;
  for (const auto& row : report.rows) {
    leis.emplace_back(row.one_minus_rho, row.error);
    bs.emplace_back(row.extra[0], row.extra[1]);
  }
  const auto leis_fit = fit_rate(leis);
  const auto bs_fit = fit_rate(bs);
  report.fits.push_back({"leis error vs 1-rho", leis_fit, static_cast<double>(config.r)});
  report.fits.push_back({"butzer-sunouchi error vs -ln rho", bs_fit, static_cast<double>(config.r)});
  report.verdicts.push_back(exponent_check("leis exponent", leis_fit.exponent, config.r,
                                           config.exponent_tolerance));
  report.verdicts.push_back(exponent_check("butzer-sunouchi exponent", bs_fit.exponent, config.r,
                                           config.exponent_tolerance));
  return report;
}

KfunReport run_kfun_experiment(const ExperimentConfig& config) {
  const auto entry = load_entry(config);
  KfunReport report;
  report.function = entry.name;
  report.p = config.p;
  report.n = config.n;
  report.omega = config.omega ? config.omega->describe() : "";

  std::vector<double> deltas = config.deltas;
  if (deltas.empty()) {
    for (const double rho : sorted_grid(config.rho_grid)) deltas.push_back(1.0 - rho);
  }
  KBracketOptions kopts;
  kopts.minimize_options.norm = norm_options(config);
  report.rows.resize(deltas.size());
  parallel_for(deltas.size(), config.jobs, [&](std::size_t i) {
    const auto kb = k_bracket(entry.series, deltas[i], config.n, config.p, kopts);
    KfunRow& row = report.rows[i];
    row.delta = deltas[i];
    row.lower = kb.lower;
    row.upper = kb.upper;
    row.upper_lemma2 = kb.upper_lemma2;
    row.upper_minimize = kb.upper_minimize;
    row.witness = kb.upper_witness;
    row.lower_clamped = kb.lower_clamped;
    row.omega = config.omega ? (*config.omega)(std::min(deltas[i], 1.0)) : kNaN;
    row.ratio = config.omega ? kb.upper / row.omega : kNaN;
  });

  int clamped = 0;
  for (const auto& row : report.rows) clamped += row.lower_clamped ? 1 : 0;
  report.verdicts.push_back(make_check("lower <= upper", clamped, 0.0,
                                       std::to_string(clamped) + " clamped lower bounds"));
  if (config.omega) {
    std::vector<double> ratios;
    for (const auto& row : report.rows) ratios.push_back(row.ratio);
    report.verdicts.push_back(bounded_check("K upper / omega", ratios, config.band));
  }
  return report;
}

ModuliReport run_moduli_check(const ExperimentConfig& config) {
  config.validate();
  const auto& w = require_omega(config, "moduli-check");
  ModuliReport report;
  report.omega = w.describe();
  report.n = config.n;
  report.conditions.push_back(check_Z(w));
  report.conditions.push_back(check_Zn(w, config.n));
  report.conditions.push_back(check_almost_decreasing(w, config.n));
  report.conditions.push_back(check_doubling(w));
  return report;
}

}  // namespace tapmeans
