#pragma once

// Modulus functions omega(t) on [0, 1] and numerical surrogates for the
// Zygmund-Bari-Stechkin conditions (Z) and (Z_n).
//
// Every "O(.)" condition is checked as a supremum of a ratio over dyadic
// probes delta = 2^-j, j = 0..levels. A condition holds when the supremum is
// finite and grows by less than 5% when the probe depth is doubled.

#include <string>
#include <vector>

namespace tapmeans {

enum class ModulusKind { power, power_log, table };

class ModulusFunction {
 public:
  /// t^alpha, alpha > 0.
  static ModulusFunction power(double alpha);
  /// t^alpha (ln(e/t))^beta with omega(0) = 0. Needs alpha > 0 and beta <= alpha
  /// (monotone on [0,1]), or alpha = 0 and beta < 0.
  static ModulusFunction power_log(double alpha, double beta);
  /// Piecewise-linear interpolation of (t_i, w_i); t must run from 0 to 1,
  /// w must start at 0 and be nondecreasing and positive for t > 0.
  static ModulusFunction table(std::vector<double> t, std::vector<double> w);

  ModulusKind kind() const noexcept { return kind_; }
  double alpha() const noexcept { return alpha_; }
  double beta() const noexcept { return beta_; }
  const std::vector<double>& table_t() const noexcept { return t_; }
  const std::vector<double>& table_w() const noexcept { return w_; }

  /// omega(t) for t in [0, 1]; throws InvalidParameter outside.
  double operator()(double t) const;
  /// ln omega(e^u) for u <= 0, accurate where omega itself underflows.
  double log_at(double u) const;

  std::string describe() const;

 private:
  ModulusFunction() = default;
  void verify_basic_conditions() const;

  ModulusKind kind_ = ModulusKind::power;
  double alpha_ = 1.0;
  double beta_ = 0.0;
  std::vector<double> t_;
  std::vector<double> w_;
};

double omega_eval(const ModulusFunction& w, double t);

struct ProbeOptions {
  /// Base probe depth; refinement uses twice as many levels.
  int levels = 480;
  /// Relative growth of the supremum under refinement that still counts as bounded.
  double stability = 0.05;
};

struct ConditionReport {
  std::string condition;
  int n = 0;
  /// Supremum over the refined probe grid (infinite when divergence was detected).
  double sup_ratio = 0.0;
  /// Supremum over the base probe grid.
  double base_sup_ratio = 0.0;
  /// Ratio at the deepest refined probe, the numerical limit as delta -> 0.
  double limit_ratio = 0.0;
  std::string probe_grid;
  bool holds = false;
  std::string note;
};

/// sup_delta [int_0^delta omega(t)/t dt] / omega(delta).
ConditionReport check_Z(const ModulusFunction& w, const ProbeOptions& options = {});

/// sup_delta [int_delta^1 omega(t)/t^{n+1} dt] delta^n / omega(delta).
ConditionReport check_Zn(const ModulusFunction& w, int n, const ProbeOptions& options = {});

/// sup_{s <= t} [omega(t)/t^n] / [omega(s)/s^n].
ConditionReport check_almost_decreasing(const ModulusFunction& w, int n,
                                        const ProbeOptions& options = {});

/// sup_{t <= 1/2} omega(2t) / omega(t).
ConditionReport check_doubling(const ModulusFunction& w, const ProbeOptions& options = {});

/// (1-rho)^{r-n} omega(1-rho); requires 0 <= rho < 1 and n <= r.
double rate_envelope(const ModulusFunction& w, int r, int n, double rho);

}  // namespace tapmeans
