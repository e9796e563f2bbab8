#pragma once

// Rate experiments for the Taylor-Abel-Poisson means and the identity suite
// that has to pass before any rate is trusted.
//
// "O(.)" statements are operationalized as bounded envelope ratios over a
// finite rho grid (default band 20x) plus least-squares exponent fits
// (default tolerance 0.15). Every report restates this.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "tapmeans/catalog.hpp"
#include "tapmeans/fourier.hpp"
#include "tapmeans/moduli.hpp"
#include "tapmeans/rate_fit.hpp"

namespace tapmeans {

/// count values of rho with 1 - rho geometric between 1 - start and 1 - stop.
std::vector<double> geometric_rho_grid(double start, double stop, int count);
/// 12 points from 0.9 to 0.999.
std::vector<double> default_rho_grid();

struct ExperimentConfig {
  std::string function = "geometric:q=0.5";
  double p = kInfinity;
  int r = 1;
  int n = 1;
  std::optional<ModulusFunction> omega;
  std::vector<double> rho_grid = default_rho_grid();
  std::vector<double> identity_rho_grid = {0.1, 0.5, 0.9, 0.99};
  /// 0 selects the default grid for each norm.
  std::size_t grid_points = 0;
  std::string output;
  std::uint64_t seed = 0;
  double band = 20.0;
  double exponent_tolerance = 0.15;
  /// kfun only; empty means 1 - rho over rho_grid.
  std::vector<double> deltas;
  int jobs = 1;

  /// Throws ConfigError on any violated invariant that does not need the
  /// catalog entry (n <= r, rho in [0,1), nonempty grids, ...).
  void validate() const;
};

/// Parses the JSON schema documented in the README. Throws ConfigError.
ExperimentConfig parse_config(const nlohmann::json& j);
ExperimentConfig load_config(const std::string& path);
ModulusFunction parse_modulus(const nlohmann::json& j);
nlohmann::json modulus_to_json(const ModulusFunction& w);

/// One named check: measured quantity against a limit.
struct Check {
  std::string name;
  double measured = 0.0;
  double limit = 0.0;
  bool pass = false;
  std::string detail;
};

struct IdentityReport {
  std::string function;
  int r = 1;
  std::vector<Check> checks;
  bool pass() const;
};

struct RateRow {
  double rho = 0.0;
  double one_minus_rho = 0.0;
  double error = 0.0;
  double envelope = 0.0;
  double ratio = 0.0;
  std::vector<double> extra;
};

struct NamedFit {
  std::string name;
  RateFit fit;
  /// NaN when the theory gives no exponent to compare with.
  double expected = 0.0;
};

struct RateReport {
  std::string experiment;
  std::string function;
  double p = kInfinity;
  int r = 1;
  int n = 1;
  std::string omega;
  std::vector<std::string> extra_columns;
  /// Sorted by 1 - rho descending.
  std::vector<RateRow> rows;
  std::vector<NamedFit> fits;
  double ratio_min = 0.0;
  double ratio_max = 0.0;
  /// All errors vanish: f is fixed by the operator.
  bool trivial = false;
  IdentityReport identities;
  std::vector<Check> verdicts;
  std::vector<std::string> notes;
  bool pass() const;
};

struct KfunRow {
  double delta = 0.0;
  double lower = 0.0;
  double upper = 0.0;
  double upper_lemma2 = 0.0;
  double upper_minimize = 0.0;
  std::string witness;
  bool lower_clamped = false;
  /// omega(delta) and upper / omega(delta); NaN without a modulus.
  double omega = 0.0;
  double ratio = 0.0;
};

struct KfunReport {
  std::string function;
  double p = kInfinity;
  int n = 1;
  std::string omega;
  std::vector<KfunRow> rows;
  std::vector<Check> verdicts;
  bool pass() const;
};

struct ModuliReport {
  std::string omega;
  int n = 1;
  std::vector<ConditionReport> conditions;
  bool pass() const;
};

/// Checks (a)-(f): binomial normalization, multiplier vs Taylor form,
/// integral-representation residual, A_{rho,1} = Poisson mean, commutativity
/// of the means, and the bound on ||(A_{rho,r} f)^{[r]}||_p.
IdentityReport run_identity_suite(const ExperimentConfig& config);

/// ||f - A_{rho,r} f||_p against (1-rho)^{r-n} omega(1-rho). Refuses with
/// ExperimentRefused when omega fails (Z).
RateReport run_direct_experiment(const ExperimentConfig& config);
/// M_p(rho,f,r)(1-rho)^n / omega(1-rho) and the K-bracket of f^{[r-n]} against
/// omega. Refuses with ExperimentRefused when omega fails (Z_n).
RateReport run_inverse_experiment(const ExperimentConfig& config);
/// Exponent of ||f - A_{rho,r} f||_p against the saturation order r.
RateReport run_saturation_experiment(const ExperimentConfig& config);
/// Leis error against 1 - rho and Butzer-Sunouchi error against -ln rho.
RateReport run_comparison_experiment(const ExperimentConfig& config);
KfunReport run_kfun_experiment(const ExperimentConfig& config);
ModuliReport run_moduli_check(const ExperimentConfig& config);

}  // namespace tapmeans
