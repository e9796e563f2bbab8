#pragma once

// Fourier-multiplier operators built on the Poisson integral: the
// Taylor-Abel-Poisson means A_{rho,r}, radial derivatives, and the Leis and
// Butzer-Sunouchi Taylor sections used for comparison.

#include <cstddef>
#include <utility>

#include "tapmeans/fourier.hpp"

namespace tapmeans {

/// Parameters (rho, r) of A_{rho,r}: 0 <= rho < 1, r >= 1.
class SmoothingParams {
 public:
  SmoothingParams(double rho, int r);

  double rho() const noexcept { return rho_; }
  int r() const noexcept { return r_; }

 private:
  double rho_;
  int r_;
};

/// C(k, j) (1-rho)^j rho^(k-j), for 0 <= j <= k and rho in [0, 1].
double binomial_term(int k, int j, double rho);

/// sum_{j=0}^{k} C(k,j)(1-rho)^j rho^(k-j); equal to 1 up to rounding.
double binomial_partition_sum(int k, double rho);

/// lambda_{k,r}(rho): 1 for k < r, otherwise sum_{j<r} C(k,j)(1-rho)^j rho^(k-j).
/// rho may be 1, where the value is 1 for every k.
double lambda_multiplier(int k, int r, double rho);

/// 1 - lambda_{k,r}(rho) = sum_{j=r}^{k} C(k,j)(1-rho)^j rho^(k-j), evaluated
/// without cancellation when lambda is close to 1.
double lambda_complement(int k, int r, double rho);

/// k!/(k-n)! for k >= n, else 0.
double falling_factorial(int k, int n);

/// c_k -> lambda_{|k|,r}(rho) c_k.
FourierSeries taylor_abel_poisson(const FourierSeries& f, const SmoothingParams& params);

/// f - A_{rho,r}(f), built from lambda_complement.
FourierSeries approximation_defect(const FourierSeries& f, const SmoothingParams& params);

/// Abel-Poisson mean f(rho, .): c_k -> rho^|k| c_k, 0 <= rho < 1.
FourierSeries poisson_mean(const FourierSeries& f, double rho);

/// P(rho, x_j) = (1 - rho^2) / |1 - rho e^{i x_j}|^2 on an N-point grid.
GridSignal poisson_kernel_values(double rho, std::size_t n_points);

/// f^{[n]}: c_k -> |k|!/(|k|-n)! c_k for |k| >= n, 0 otherwise.
FourierSeries radial_derivative(const FourierSeries& f, int n);

/// d^m/drho^m of the Poisson mean: c_k -> |k|!/(|k|-m)! rho^(|k|-m) c_k.
FourierSeries poisson_rho_partial(const FourierSeries& f, double rho, int m);

/// Grid values of sum_{k<r} d^k f(rho,.)/drho^k (1-rho)^k / k!, the Taylor
/// form of A_{rho,r}(f). Requires n_points >= 2 * degree + 1.
GridSignal lemma1_taylor_form(const FourierSeries& f, const SmoothingParams& params,
                              std::size_t n_points);

/// The two power series f1(z) = c_0/2 + sum_{k>0} c_k z^k and
/// f2(z) = c_0/2 + sum_{k>0} c_{-k} z^k, stored with support on k >= 0.
struct HolomorphicPair {
  FourierSeries f1;
  FourierSeries f2;
};

HolomorphicPair holomorphic_split(const FourierSeries& f);

/// order-th complex derivative of sum_{k>=0} c_k z^k at z.
Complex power_series_derivative(const FourierSeries& one_sided, int order, Complex z);

/// Grid values of e^{i m x} f1^{(m)}(rho e^{ix}) + e^{-i m x} f2^{(m)}(rho e^{-ix}).
/// For m >= 1 this equals d^m f(rho,x)/drho^m; for m = 0 it equals f(rho,x).
GridSignal holomorphic_recombination(const HolomorphicPair& pair, double rho, int m,
                                     std::size_t n_points);

/// Leis transform: the degree-(r-1) Taylor polynomial of the Poisson mean at
/// rho = 1, c_k -> sum_{j <= min(r-1,|k|)} C(|k|,j) (rho-1)^j c_k.
FourierSeries leis_transform(const FourierSeries& f, double rho, int r);

/// Butzer-Sunouchi transform with t = -ln(rho) in (0, inf):
/// c_k -> sum_{m<r} (-|k| t)^m / m! c_k.
FourierSeries butzer_sunouchi(const FourierSeries& f, double rho, int r);

/// f^{{m}}: the classical derivative f^{(m)} for even m and the derivative of
/// the conjugate function for odd m.
FourierSeries conjugate_derivative_ladder(const FourierSeries& f, int m);

/// M_p(rho, f, r) = ||(f(rho,.))^{[r]}||_p.
double m_p_quantity(const FourierSeries& f, double rho, int r, double p,
                    const NormOptions& options = {});

/// r! (2^{3r+1} - 2^{r+1}) / 3, the constant in
/// ||(A_{rho,r} f)^{[r]}||_p <= C_r ||f||_p / (1-rho)^r for rho in [1/2, 1).
double lemma3_constant(int r);

/// (4^n - 1) / 3
double lemma2_upper_constant(int n);

/// Series of (1/(r-1)!) int_rho^1 d^r f(zeta,.)/dzeta^r (1-zeta)^{r-1} dzeta,
/// integrated by Gauss-Legendre in zeta.
struct IntegralRepresentation {
  FourierSeries series;
  /// sum_k |F_k(n nodes) - F_k(2n nodes)|, bounds the sup-norm quadrature error.
  double error_estimate = 0.0;
  std::size_t nodes = 0;
  bool converged = false;
};

IntegralRepresentation integral_representation(const FourierSeries& f,
                                               const SmoothingParams& params,
                                               double tolerance);

struct IntegralResidual {
  /// ||(f - A_{rho,r} f) - F||_p
  double residual = 0.0;
  double quadrature_error = 0.0;
  std::size_t nodes = 0;
  bool converged = false;
};

IntegralResidual integral_representation_residual(const FourierSeries& f,
                                                  const SmoothingParams& params, double p,
                                                  double tolerance,
                                                  const NormOptions& options = {});

}  // namespace tapmeans
