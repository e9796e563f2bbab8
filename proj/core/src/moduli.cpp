#include "tapmeans/moduli.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "tapmeans/errors.hpp"
#include "tapmeans/fourier.hpp"
#include "tapmeans/quadrature.hpp"

namespace tapmeans {
namespace {

constexpr double kLn2 = std::numbers::ln2;
constexpr int kMaxDepth = 1000;  // 2^-1000 stays above the smallest normal double

double probe_log(int j) { return -static_cast<double>(j) * kLn2; }

std::string probe_description(int levels) {
  std::ostringstream os;
  os << "dyadic delta = 2^-j, j = 0.." << levels << " (refined 0.." << 2 * levels << ")";
  return os.str();
}

int checked_depth(const ProbeOptions& options) {
  if (options.levels < 4) throw InvalidParameter("ProbeOptions: need at least 4 levels");
  const int depth = 2 * options.levels + 40;
  if (depth > kMaxDepth) {
    throw InvalidParameter("ProbeOptions: levels too deep for double precision");
  }
  return depth;
}

// Integral over [u_lo, u_hi] in the log variable, split at table breakpoints.
template <class F>
double log_piece(const ModulusFunction& w, double u_lo, double u_hi, F&& integrand) {
  const auto& rule = gauss_legendre(20);
  std::vector<double> cuts{u_lo};
  if (w.kind() == ModulusKind::table) {
    for (const double t : w.table_t()) {
      if (t <= 0.0) continue;
      const double u = std::log(t);
      if (u > u_lo && u < u_hi) cuts.push_back(u);
    }
  }
  cuts.push_back(u_hi);
  double sum = 0.0;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) sum += integrate(rule, cuts[i], cuts[i + 1], integrand);
  return sum;
}

void finish(ConditionReport& report, const std::vector<double>& ratios, int levels,
            double stability) {
  const auto base_end = ratios.begin() + std::min<std::ptrdiff_t>(levels + 1, std::ssize(ratios));
  report.base_sup_ratio = *std::max_element(ratios.begin(), base_end);
  report.sup_ratio = *std::max_element(ratios.begin(), ratios.end());
  report.limit_ratio = ratios.back();
  const bool finite = std::isfinite(report.sup_ratio) && std::isfinite(report.base_sup_ratio);
  report.holds = finite && report.sup_ratio <= (1.0 + stability) * report.base_sup_ratio;
  if (!finite) {
    report.note = "supremum is not finite";
  } else if (!report.holds) {
    std::ostringstream os;
    os << "supremum grows by " << 100.0 * (report.sup_ratio / report.base_sup_ratio - 1.0)
       << "% under probe refinement";
    report.note = os.str();
  }
}

}  // namespace

ModulusFunction ModulusFunction::power(double alpha) {
  if (!(alpha > 0.0) || !std::isfinite(alpha)) {
    throw InvalidParameter("power modulus needs alpha > 0");
  }
  ModulusFunction w;
  w.kind_ = ModulusKind::power;
  w.alpha_ = alpha;
  w.verify_basic_conditions();
  return w;
}

ModulusFunction ModulusFunction::power_log(double alpha, double beta) {
  const bool positive_alpha = alpha > 0.0 && beta <= alpha;
  const bool log_only = alpha == 0.0 && beta < 0.0;
  if (!(positive_alpha || log_only) || !std::isfinite(alpha) || !std::isfinite(beta)) {
    throw InvalidParameter(
        "power-log modulus needs alpha > 0 and beta <= alpha, or alpha = 0 and beta < 0");
  }
  ModulusFunction w;
  w.kind_ = ModulusKind::power_log;
  w.alpha_ = alpha;
  w.beta_ = beta;
  w.verify_basic_conditions();
  return w;
}

ModulusFunction ModulusFunction::table(std::vector<double> t, std::vector<double> values) {
  if (t.size() != values.size() || t.size() < 2) {
    throw InvalidParameter("table modulus needs matching t and w arrays with at least 2 points");
  }
  if (t.front() != 0.0 || t.back() != 1.0) {
    throw InvalidParameter("table modulus must span exactly [0, 1]");
  }
  if (values.front() != 0.0) throw InvalidParameter("table modulus needs w(0) = 0");
  for (std::size_t i = 1; i < t.size(); ++i) {
    if (!(t[i] > t[i - 1])) throw InvalidParameter("table modulus t must be strictly increasing");
    if (!(values[i] >= values[i - 1])) throw InvalidParameter("table modulus w must be nondecreasing");
    if (!(values[i] > 0.0)) throw InvalidParameter("table modulus w must be positive for t > 0");
  }
  ModulusFunction w;
  w.kind_ = ModulusKind::table;
  w.t_ = std::move(t);
  w.w_ = std::move(values);
  w.verify_basic_conditions();
  return w;
}

void ModulusFunction::verify_basic_conditions() const {
  // Conditions 1)-4) on the dyadic probes t = 2^-j, j = 0..40.
  double previous = (*this)(1.0);
  if (!(previous > 0.0) || !std::isfinite(previous)) {
    throw InvalidParameter("modulus: omega(1) must be positive and finite");
  }
  for (int j = 1; j <= 40; ++j) {
    const double value = (*this)(std::ldexp(1.0, -j));
    if (!(value > 0.0)) throw InvalidParameter("modulus: omega must be positive on (0, 1]");
    if (value > previous * (1.0 + 1e-12)) throw InvalidParameter("modulus: omega must be nondecreasing");
    previous = value;
  }
  if ((*this)(0.0) != 0.0) throw InvalidParameter("modulus: omega(0) must be 0");
}

double ModulusFunction::operator()(double t) const {
  if (!(t >= 0.0 && t <= 1.0)) throw InvalidParameter("modulus: t must lie in [0, 1]");
  if (t == 0.0) return 0.0;
  switch (kind_) {
    case ModulusKind::power:
      return std::pow(t, alpha_);
    case ModulusKind::power_log:
      return std::pow(t, alpha_) * std::pow(1.0 - std::log(t), beta_);
    case ModulusKind::table: {
      const auto it = std::upper_bound(t_.begin(), t_.end(), t);
      if (it == t_.end()) return w_.back();
      const auto i = static_cast<std::size_t>(it - t_.begin());
      const double s = (t - t_[i - 1]) / (t_[i] - t_[i - 1]);
      return w_[i - 1] + s * (w_[i] - w_[i - 1]);
    }
  }
  return 0.0;
}

double ModulusFunction::log_at(double u) const {
  if (u > 0.0) throw InvalidParameter("modulus: log argument must be <= 0");
  switch (kind_) {
    case ModulusKind::power:
      return alpha_ * u;
    case ModulusKind::power_log:
      return alpha_ * u + beta_ * std::log1p(-u);
    case ModulusKind::table:
      if (u < std::log(t_[1])) return std::log(w_[1] / t_[1]) + u;
      return std::log((*this)(std::exp(u)));
  }
  return 0.0;
}

std::string ModulusFunction::describe() const {
  std::ostringstream os;
  switch (kind_) {
    case ModulusKind::power:
      os << "t^" << alpha_;
      break;
    case ModulusKind::power_log:
      os << "t^" << alpha_ << " (ln(e/t))^" << beta_;
      break;
    case ModulusKind::table:
      os << "table(" << t_.size() << " points)";
      break;
  }
  return os.str();
}

double omega_eval(const ModulusFunction& w, double t) { return w(t); }

ConditionReport check_Z(const ModulusFunction& w, const ProbeOptions& options) {
  const int depth = checked_depth(options);
  ConditionReport report;
  report.condition = "(Z)";
  report.probe_grid = probe_description(options.levels);

  // Local power exponent of omega at probe j, from consecutive log values.
  auto local_exponent = [&](int j) { return (w.log_at(probe_log(j - 1)) - w.log_at(probe_log(j))) / kLn2; };
  const double a_deep = local_exponent(depth);
  const double a_mid = local_exponent(depth / 2);
  if (!(a_deep > 0.0) || a_deep < 0.75 * a_mid) {
    report.sup_ratio = report.base_sup_ratio = report.limit_ratio = kInfinity;
    report.holds = false;
    report.note = "partial sums of int_0^delta omega(t)/t dt do not settle (divergent integral)";
    return report;
  }

  // ratio_j = [int_0^{2^-j} omega(t)/t dt] / omega(2^-j), accumulated from the
  // deepest level upward with a power-law tail below 2^-depth.
  std::vector<double> ratios(static_cast<std::size_t>(depth) + 1);
  ratios.back() = 1.0 / a_deep;
  for (int j = depth - 1; j >= 0; --j) {
    const double u_hi = probe_log(j);
    const double log_w = w.log_at(u_hi);
    const double piece = log_piece(w, u_hi - kLn2, u_hi,
                                   [&](double u) { return std::exp(w.log_at(u) - log_w); });
    const double carry = std::exp(w.log_at(probe_log(j + 1)) - log_w);
    ratios[static_cast<std::size_t>(j)] = piece + ratios[static_cast<std::size_t>(j) + 1] * carry;
  }
  ratios.resize(static_cast<std::size_t>(2 * options.levels) + 1);
  finish(report, ratios, options.levels, options.stability);
  return report;
}

ConditionReport check_Zn(const ModulusFunction& w, int n, const ProbeOptions& options) {
  if (n < 1) throw InvalidParameter("check_Zn: n must be positive");
  checked_depth(options);
  const int levels = 2 * options.levels;
  ConditionReport report;
  report.condition = "(Z_n)";
  report.n = n;
  report.probe_grid = probe_description(options.levels);

  // R_j = [int_{2^-j}^1 omega(t) t^{-n-1} dt] 2^{-jn} / omega(2^-j), R_0 = 0.
  std::vector<double> ratios(static_cast<std::size_t>(levels) + 1, 0.0);
  for (int j = 0; j < levels; ++j) {
    const double u_hi = probe_log(j);
    const double u_lo = probe_log(j + 1);
    const double log_lo = w.log_at(u_lo);
    const double piece = log_piece(w, u_lo, u_hi, [&](double u) {
      return std::exp(w.log_at(u) - log_lo - n * (u - u_lo));
    });
    const double carry = std::exp(-n * kLn2 + w.log_at(u_hi) - log_lo);
    ratios[static_cast<std::size_t>(j) + 1] = ratios[static_cast<std::size_t>(j)] * carry + piece;
  }
  ratios.erase(ratios.begin());  // delta = 1 gives an empty integral
  finish(report, ratios, options.levels - 1, options.stability);
  return report;
}

ConditionReport check_almost_decreasing(const ModulusFunction& w, int n,
                                        const ProbeOptions& options) {
  if (n < 1) throw InvalidParameter("check_almost_decreasing: n must be positive");
  checked_depth(options);
  const int levels = 2 * options.levels;
  ConditionReport report;
  report.condition = "almost-decreasing";
  report.n = n;
  report.probe_grid = probe_description(options.levels);

  // ratios[j]: sup over s <= t of g(t)/g(s), g = omega(t)/t^n, with t and s
  // restricted to probes 2^-i, i = 0..j.
  std::vector<double> log_g(static_cast<std::size_t>(levels) + 1);
  for (int j = 0; j <= levels; ++j) {
    log_g[static_cast<std::size_t>(j)] = w.log_at(probe_log(j)) - n * probe_log(j);
  }
  std::vector<double> ratios(static_cast<std::size_t>(levels) + 1);
  double best = 0.0;
  double max_above = -kInfinity;
  for (int j = 0; j <= levels; ++j) {
    // Adding the probe 2^-j adds a new smallest s; pair it with every larger t.
    max_above = std::max(max_above, log_g[static_cast<std::size_t>(j)]);
    best = std::max(best, max_above - log_g[static_cast<std::size_t>(j)]);
    ratios[static_cast<std::size_t>(j)] = std::exp(best);
  }
  finish(report, ratios, options.levels, options.stability);
  return report;
}

ConditionReport check_doubling(const ModulusFunction& w, const ProbeOptions& options) {
  checked_depth(options);
  const int levels = 2 * options.levels;
  ConditionReport report;
  report.condition = "doubling";
  report.probe_grid = probe_description(options.levels);

  std::vector<double> ratios(static_cast<std::size_t>(levels));
  double best = 0.0;
  for (int j = 1; j <= levels; ++j) {
    best = std::max(best, std::exp(w.log_at(probe_log(j - 1)) - w.log_at(probe_log(j))));
    ratios[static_cast<std::size_t>(j) - 1] = best;
  }
  finish(report, ratios, options.levels - 1, options.stability);
  return report;
}

double rate_envelope(const ModulusFunction& w, int r, int n, double rho) {
  if (n > r) throw InvalidParameter("rate_envelope: need n <= r");
  if (!(rho >= 0.0 && rho < 1.0)) throw InvalidParameter("rate_envelope: rho must lie in [0, 1)");
  const double h = 1.0 - rho;
  return std::pow(h, r - n) * w(h);
}

}  // namespace tapmeans
