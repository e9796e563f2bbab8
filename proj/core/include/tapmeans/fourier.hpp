#pragma once

// Finite Fourier series on the torus, uniform-grid signals, and the
// transforms and norms that connect them.

#include <complex>
#include <concepts>
#include <cstddef>
#include <cstdlib>
#include <limits>
#include <span>
#include <vector>

namespace tapmeans {

using Complex = std::complex<double>;

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

/// Two-sided coefficient vector c_{-K}, ..., c_K of a trigonometric polynomial
/// f(x) = sum_k c_k e^{ikx}.
class FourierSeries {
 public:
  FourierSeries() : FourierSeries(0) {}
  explicit FourierSeries(int degree);
  /// `coeffs` is ordered k = -degree .. degree and must hold 2*degree+1 values.
  FourierSeries(int degree, std::vector<Complex> coeffs);

  static FourierSeries constant(Complex value);
  /// amplitude * e^{ikx}
  static FourierSeries exponential(int k, Complex amplitude = 1.0);
  /// amplitude * cos(kx)
  static FourierSeries cosine(int k, double amplitude = 1.0);
  /// amplitude * sin(kx)
  static FourierSeries sine(int k, double amplitude = 1.0);

  int degree() const noexcept { return degree_; }
  std::size_t size() const noexcept { return coeffs_.size(); }

  /// Coefficient c_k; zero for |k| > degree().
  Complex operator[](int k) const noexcept {
    return std::abs(k) > degree_ ? Complex{} : coeffs_[static_cast<std::size_t>(k + degree_)];
  }
  std::span<const Complex> coefficients() const noexcept { return coeffs_; }

  /// True when c_{-k} == conj(c_k) within `tol` for every k.
  bool real_valued(double tol = 1e-12) const;

  /// Same function at a different degree: pads with zeros or drops |k| > degree.
  FourierSeries resized(int degree) const;
  /// Drops the outermost coefficients while both c_{±K} have modulus <= threshold.
  FourierSeries trimmed(double threshold = 0.0) const;

  FourierSeries& operator+=(const FourierSeries& other);
  FourierSeries& operator-=(const FourierSeries& other);
  FourierSeries& operator*=(Complex scale);

  friend FourierSeries operator+(FourierSeries a, const FourierSeries& b) { return a += b; }
  friend FourierSeries operator-(FourierSeries a, const FourierSeries& b) { return a -= b; }
  friend FourierSeries operator*(FourierSeries a, Complex s) { return a *= s; }
  friend FourierSeries operator*(Complex s, FourierSeries a) { return a *= s; }

 private:
  int degree_;
  std::vector<Complex> coeffs_;
};

/// max_k |a_k - b_k| over the union of both supports.
double max_coefficient_difference(const FourierSeries& a, const FourierSeries& b);

/// sqrt(sum_k |c_k|^2); equals the normalized L2 norm by Parseval.
double coefficient_l2_norm(const FourierSeries& s);

/// sum_k |c_k|; majorizes the sup norm.
double coefficient_l1_norm(const FourierSeries& s);

/// c_k -> m(k) c_k for k = -K..K.
template <class Multiplier>
  requires std::invocable<Multiplier&, int>
FourierSeries apply_multiplier(const FourierSeries& s, Multiplier&& m) {
  const int K = s.degree();
  std::vector<Complex> out(s.size());
  for (int k = -K; k <= K; ++k) {
    out[static_cast<std::size_t>(k + K)] = m(k) * s[k];
  }
  return FourierSeries(K, std::move(out));
}

/// c_k -> m(|k|) c_k, evaluating m once per |k|. Zero coefficient pairs skip
/// the call, so m may be expensive.
template <class Multiplier>
  requires std::invocable<Multiplier&, int>
FourierSeries apply_radial_multiplier(const FourierSeries& s, Multiplier&& m) {
  const int K = s.degree();
  std::vector<Complex> out(s.size());
  for (int a = 0; a <= K; ++a) {
    const Complex plus = s[a];
    const Complex minus = s[-a];
    if (plus == Complex{} && minus == Complex{}) continue;
    const auto factor = m(a);
    out[static_cast<std::size_t>(K + a)] = factor * plus;
    out[static_cast<std::size_t>(K - a)] = factor * minus;
  }
  return FourierSeries(K, std::move(out));
}

/// Samples at x_j = 2*pi*j/N, j = 0..N-1.
class GridSignal {
 public:
  explicit GridSignal(std::size_t n_points);
  explicit GridSignal(std::vector<Complex> samples);

  template <class F>
    requires std::invocable<F&, double>
  static GridSignal from_function(std::size_t n_points, F&& f) {
    GridSignal g(n_points);
    for (std::size_t j = 0; j < n_points; ++j) g.samples_[j] = Complex(f(g.node(j)));
    return g;
  }

  std::size_t size() const noexcept { return samples_.size(); }
  double node(std::size_t j) const noexcept;
  std::span<const Complex> samples() const noexcept { return samples_; }
  Complex operator[](std::size_t j) const noexcept { return samples_[j]; }

  GridSignal& operator+=(const GridSignal& other);
  GridSignal& operator-=(const GridSignal& other);
  GridSignal& operator*=(Complex scale);

  friend GridSignal operator+(GridSignal a, const GridSignal& b) { return a += b; }
  friend GridSignal operator-(GridSignal a, const GridSignal& b) { return a -= b; }
  friend GridSignal operator*(GridSignal a, Complex s) { return a *= s; }

 private:
  std::vector<Complex> samples_;
};

/// c_k = (1/N) sum_j s_j e^{-ikx_j}, k = -K..K. Requires 2K+1 <= N.
FourierSeries analyze(const GridSignal& signal, int degree);

/// s_j = sum_k c_k e^{ikx_j}. Any N >= 1; modes above Nyquist alias.
GridSignal synthesize(const FourierSeries& series, std::size_t n_points);

/// Rectangle-rule ((1/N) sum |s_j|^p)^{1/p}, or max_j |s_j| for p = infinity.
double lp_norm(const GridSignal& signal, double p);

double max_abs_difference(const GridSignal& a, const GridSignal& b);

/// Throws InvalidParameter unless 1 <= p <= infinity.
void validate_norm_index(double p);

/// c_k -> -i sgn(k) c_k.
FourierSeries conjugate(const FourierSeries& series);

/// c_k -> (ik)^order c_k.
FourierSeries derivative_classical(const FourierSeries& series, int order);

struct NormOptions {
  /// 0 selects default_grid_points(degree).
  std::size_t grid_points = 0;
  /// For p = infinity, double the grid until the maximum changes by less than
  /// `sup_relative_change` twice in a row or the grid would exceed
  /// `max_grid_points`, then polish the largest grid peaks by golden section.
  bool refine_sup = true;
  double sup_relative_change = 1e-6;
  std::size_t max_grid_points = std::size_t{1} << 20;
};

/// 8 * degree + 64.
std::size_t default_grid_points(int degree);

/// L_p norm of a series, normalized so that ||1||_p = 1.
double norm(const FourierSeries& series, double p, const NormOptions& options = {});

}  // namespace tapmeans
