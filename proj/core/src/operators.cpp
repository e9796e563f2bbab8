#include "tapmeans/operators.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "tapmeans/errors.hpp"
#include "tapmeans/quadrature.hpp"

namespace tapmeans {
namespace {

constexpr double kExactIntegerLimit = 9007199254740992.0;  // 2^53

void require_rho_closed(double rho, const char* what) {
  if (!(rho >= 0.0 && rho <= 1.0)) {
    throw InvalidParameter(std::string(what) + ": rho must lie in [0, 1]");
  }
}

void require_rho_half_open(double rho, const char* what) {
  if (!(rho >= 0.0 && rho < 1.0)) {
    throw InvalidParameter(std::string(what) + ": rho must lie in [0, 1)");
  }
}

void require_nonnegative(int n, const char* what) {
  if (n < 0) throw InvalidParameter(std::string(what) + ": order must be nonnegative");
}

void require_positive(int r, const char* what) {
  if (r < 1) throw InvalidParameter(std::string(what) + ": order must be positive");
}

double factorial(int n) {
  double f = 1.0;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

// C(k, j) by the multiplicative recurrence; empty when the value would leave
// the range where doubles represent integers exactly.
bool exact_binomial(int k, int j, double& out) {
  const int m = std::min(j, k - j);
  double c = 1.0;
  for (int i = 1; i <= m; ++i) {
    const double next = c * static_cast<double>(k - m + i);
    if (next > kExactIntegerLimit) return false;
    c = next / static_cast<double>(i);
  }
  out = c;
  return true;
}

// Loader's saddle-point form of the binomial probability: Stirling-series
// remainders and the deviance bd0 keep the relative error near machine
// precision for large k, where lgamma differences lose digits.
double stirling_error(double n) {
  constexpr double s0 = 1.0 / 12, s1 = 1.0 / 360, s2 = 1.0 / 1260, s3 = 1.0 / 1680, s4 = 1.0 / 1188;
  if (n <= 15.0) {
    return std::lgamma(n + 1.0) - (n + 0.5) * std::log(n) + n - 0.5 * std::log(2.0 * std::numbers::pi);
  }
  const double nn = n * n;
  if (n > 500) return (s0 - s1 / nn) / n;
  if (n > 80) return (s0 - (s1 - s2 / nn) / nn) / n;
  if (n > 35) return (s0 - (s1 - (s2 - s3 / nn) / nn) / nn) / n;
  return (s0 - (s1 - (s2 - (s3 - s4 / nn) / nn) / nn) / nn) / n;
}

// x ln(x/m) + m - x without cancellation near x = m.
double deviance(double x, double m) {
  if (std::abs(x - m) < 0.1 * (x + m)) {
    double v = (x - m) / (x + m);
    double s = (x - m) * v;
    double ej = 2.0 * x * v;
    v *= v;
    for (int j = 1; j < 1000; ++j) {
      ej *= v;
      const double next = s + ej / (2 * j + 1);
      if (next == s) return next;
      s = next;
    }
    return s;
  }
  return x * std::log(x / m) + m - x;
}

double saddle_point_binomial(int k, int j, double rho) {
  // j successes with probability q = 1 - rho, k - j with probability rho.
  const double q = 1.0 - rho;
  const double n = k;
  const double x = j;
  if (j == 0) return std::exp(rho < 0.9 ? n * std::log(rho) : -deviance(n, n * rho) - n * q);
  if (j == k) return std::exp(q < 0.9 ? n * std::log(q) : -deviance(n, n * q) - n * rho);
  const double lc = stirling_error(n) - stirling_error(x) - stirling_error(n - x) -
                    deviance(x, n * q) - deviance(n - x, n * rho);
  const double lf = std::log(2.0 * std::numbers::pi) + std::log(x) + std::log1p(-x / n);
  return std::exp(lc - 0.5 * lf);
}

// int_rho^1 zeta^(a-r) (1-zeta)^(r-1) dzeta with the given rule.
double zeta_moment(int a, int r, double rho, const GaussRule& rule) {
  return integrate(rule, rho, 1.0, [a, r](double z) {
    return std::pow(z, a - r) * std::pow(1.0 - z, r - 1);
  });
}

FourierSeries integral_series(const FourierSeries& f, int r, double rho, const GaussRule& rule) {
  const double scale = 1.0 / factorial(r - 1);
  return apply_radial_multiplier(f, [&](int a) {
    if (a < r) return 0.0;
    return scale * falling_factorial(a, r) * zeta_moment(a, r, rho, rule);
  });
}

}  // namespace

SmoothingParams::SmoothingParams(double rho, int r) : rho_(rho), r_(r) {
  require_rho_half_open(rho, "SmoothingParams");
  require_positive(r, "SmoothingParams");
}

double binomial_term(int k, int j, double rho) {
  require_rho_closed(rho, "binomial_term");
  if (j < 0 || j > k) throw InvalidParameter("binomial_term: need 0 <= j <= k");
  if (rho == 0.0) return j == k ? 1.0 : 0.0;
  if (rho == 1.0) return j == 0 ? 1.0 : 0.0;
  double c = 0.0;
  if (exact_binomial(k, j, c)) {
    const double a = std::pow(1.0 - rho, j);
    const double b = std::pow(rho, k - j);
    if (a > 1e-290 && b > 1e-290) return c * a * b;
  }
  return saddle_point_binomial(k, j, rho);
}

double binomial_partition_sum(int k, double rho) {
  if (k < 0) throw InvalidParameter("binomial_partition_sum: negative k");
  double sum = 0.0;
  for (int j = 0; j <= k; ++j) sum += binomial_term(k, j, rho);
  return sum;
}

double lambda_multiplier(int k, int r, double rho) {
  require_rho_closed(rho, "lambda_multiplier");
  require_positive(r, "lambda_multiplier");
  if (k < 0) throw InvalidParameter("lambda_multiplier: negative k");
  if (k < r || rho == 1.0) return 1.0;
  if (rho == 0.0) return 0.0;
  double sum = 0.0;
  for (int j = 0; j < r; ++j) sum += binomial_term(k, j, rho);
  return std::clamp(sum, 0.0, 1.0);
}

double lambda_complement(int k, int r, double rho) {
  const double lambda = lambda_multiplier(k, r, rho);
  if (k < r || rho == 1.0) return 0.0;
  if (rho == 0.0) return 1.0;
  if (lambda <= 0.5) return 1.0 - lambda;
  // lambda > 1/2 puts the binomial mode below r, so the terms j >= r decrease
  // and the tail can be cut once it is negligible.
  const double odds = (1.0 - rho) / rho;
  double term = binomial_term(k, r, rho);
  double sum = term;
  for (int j = r; j < k; ++j) {
    const double ratio = static_cast<double>(k - j) / static_cast<double>(j + 1) * odds;
    term *= ratio;
    sum += term;
    if (ratio < 1.0 && term * ratio / (1.0 - ratio) <= 1e-17 * sum) break;
  }
  return std::clamp(sum, 0.0, 1.0);
}

double falling_factorial(int k, int n) {
  require_nonnegative(n, "falling_factorial");
  if (k < n) return 0.0;
  double f = 1.0;
  for (int i = 0; i < n; ++i) f *= static_cast<double>(k - i);
  return f;
}

FourierSeries taylor_abel_poisson(const FourierSeries& f, const SmoothingParams& params) {
  return apply_radial_multiplier(
      f, [&](int a) { return lambda_multiplier(a, params.r(), params.rho()); });
}

FourierSeries approximation_defect(const FourierSeries& f, const SmoothingParams& params) {
  return apply_radial_multiplier(
      f, [&](int a) { return lambda_complement(a, params.r(), params.rho()); });
}

FourierSeries poisson_mean(const FourierSeries& f, double rho) {
  require_rho_half_open(rho, "poisson_mean");
  return apply_radial_multiplier(f, [rho](int a) { return std::pow(rho, a); });
}

GridSignal poisson_kernel_values(double rho, std::size_t n_points) {
  require_rho_half_open(rho, "poisson_kernel_values");
  return GridSignal::from_function(n_points, [rho](double x) {
    return (1.0 - rho * rho) / (1.0 - 2.0 * rho * std::cos(x) + rho * rho);
  });
}

FourierSeries radial_derivative(const FourierSeries& f, int n) {
  require_nonnegative(n, "radial_derivative");
  if (n == 0) return f;
  return apply_radial_multiplier(f, [n](int a) { return falling_factorial(a, n); });
}

FourierSeries poisson_rho_partial(const FourierSeries& f, double rho, int m) {
  require_rho_half_open(rho, "poisson_rho_partial");
  require_nonnegative(m, "poisson_rho_partial");
  return apply_radial_multiplier(f, [rho, m](int a) {
    if (a < m) return 0.0;
    return falling_factorial(a, m) * std::pow(rho, a - m);
  });
}

GridSignal lemma1_taylor_form(const FourierSeries& f, const SmoothingParams& params,
                              std::size_t n_points) {
  if (n_points < 2 * static_cast<std::size_t>(f.degree()) + 1) {
    throw PreconditionViolation("lemma1_taylor_form: grid too small for the series degree");
  }
  const double h = 1.0 - params.rho();
  GridSignal total(n_points);
  double weight = 1.0;  // (1-rho)^k / k!
  for (int k = 0; k < params.r(); ++k) {
    if (k > 0) weight *= h / k;
    total += synthesize(poisson_rho_partial(f, params.rho(), k), n_points) * weight;
  }
  return total;
}

HolomorphicPair holomorphic_split(const FourierSeries& f) {
  const int K = f.degree();
  std::vector<Complex> c1(f.size()), c2(f.size());
  c1[static_cast<std::size_t>(K)] = 0.5 * f[0];
  c2[static_cast<std::size_t>(K)] = 0.5 * f[0];
  for (int k = 1; k <= K; ++k) {
    c1[static_cast<std::size_t>(K + k)] = f[k];
    c2[static_cast<std::size_t>(K + k)] = f[-k];
  }
  return {FourierSeries(K, std::move(c1)), FourierSeries(K, std::move(c2))};
}

Complex power_series_derivative(const FourierSeries& one_sided, int order, Complex z) {
  require_nonnegative(order, "power_series_derivative");
  Complex sum{};
  Complex zp{1.0};
  for (int k = order; k <= one_sided.degree(); ++k) {
    sum += falling_factorial(k, order) * one_sided[k] * zp;
    zp *= z;
  }
  return sum;
}

GridSignal holomorphic_recombination(const HolomorphicPair& pair, double rho, int m,
                                     std::size_t n_points) {
  require_rho_half_open(rho, "holomorphic_recombination");
  require_nonnegative(m, "holomorphic_recombination");
  GridSignal out(n_points);
  std::vector<Complex> values(n_points);
  for (std::size_t j = 0; j < n_points; ++j) {
    const double x = out.node(j);
    const Complex e = std::polar(1.0, x);
    const Complex em = std::polar(1.0, m * x);
    values[j] = em * power_series_derivative(pair.f1, m, rho * e) +
                std::conj(em) * power_series_derivative(pair.f2, m, rho * std::conj(e));
  }
  return GridSignal(std::move(values));
}

FourierSeries leis_transform(const FourierSeries& f, double rho, int r) {
  require_rho_half_open(rho, "leis_transform");
  require_positive(r, "leis_transform");
  const double step = rho - 1.0;
  return apply_radial_multiplier(f, [r, step](int a) {
    double sum = 1.0;
    double binom = 1.0;
    double power = 1.0;
    for (int j = 1; j <= std::min(r - 1, a); ++j) {
      binom = binom * static_cast<double>(a - j + 1) / j;
      power *= step;
      sum += binom * power;
    }
    return sum;
  });
}

FourierSeries butzer_sunouchi(const FourierSeries& f, double rho, int r) {
  if (!(rho > 0.0 && rho < 1.0)) {
    throw InvalidParameter("butzer_sunouchi: rho must lie in (0, 1)");
  }
  require_positive(r, "butzer_sunouchi");
  const double t = -std::log(rho);
  return apply_radial_multiplier(f, [r, t](int a) {
    const double x = -static_cast<double>(a) * t;
    double sum = 1.0;
    double term = 1.0;
    for (int m = 1; m < r; ++m) {
      term *= x / m;
      sum += term;
    }
    return sum;
  });
}

FourierSeries conjugate_derivative_ladder(const FourierSeries& f, int m) {
  require_nonnegative(m, "conjugate_derivative_ladder");
  return m % 2 == 0 ? derivative_classical(f, m) : derivative_classical(conjugate(f), m);
}

double m_p_quantity(const FourierSeries& f, double rho, int r, double p,
                    const NormOptions& options) {
  require_nonnegative(r, "m_p_quantity");
  return norm(radial_derivative(poisson_mean(f, rho), r), p, options);
}

double lemma3_constant(int r) {
  require_positive(r, "lemma3_constant");
  return factorial(r) * (std::ldexp(1.0, 3 * r + 1) - std::ldexp(1.0, r + 1)) / 3.0;
}

double lemma2_upper_constant(int n) {
  require_nonnegative(n, "lemma2_upper_constant");
  return (std::ldexp(1.0, 2 * n) - 1.0) / 3.0;
}

IntegralRepresentation integral_representation(const FourierSeries& f,
                                               const SmoothingParams& params,
                                               double tolerance) {
  if (!(tolerance > 0.0)) throw InvalidParameter("integral_representation: tolerance must be positive");
  constexpr std::size_t kMaxNodes = std::size_t{1} << 14;
  const int r = params.r();
  const double rho = params.rho();
  // The zeta-integrand of mode a is a polynomial of degree a-1, so
  // max(degree, 16) nodes already integrate every mode exactly; the doubled
  // rule only measures rounding.
  std::size_t n = std::max<std::size_t>(static_cast<std::size_t>(f.degree()), 16);
  FourierSeries current = integral_series(f, r, rho, gauss_legendre(n));
  while (true) {
    FourierSeries refined = integral_series(f, r, rho, gauss_legendre(2 * n));
    const double estimate = coefficient_l1_norm(refined - current);
    if (estimate <= tolerance || 2 * n >= kMaxNodes) {
      return {std::move(refined), estimate, 2 * n, estimate <= tolerance};
    }
    n *= 2;
    current = std::move(refined);
  }
}

IntegralResidual integral_representation_residual(const FourierSeries& f,
                                                  const SmoothingParams& params, double p,
                                                  double tolerance, const NormOptions& options) {
  const auto integral = integral_representation(f, params, tolerance);
  const FourierSeries difference = approximation_defect(f, params) - integral.series;
  return {norm(difference, p, options), integral.error_estimate, integral.nodes,
          integral.converged};
}

}  // namespace tapmeans
