#include "tapmeans/fourier.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "fft.hpp"
#include "tapmeans/errors.hpp"

namespace tapmeans {

FourierSeries::FourierSeries(int degree) : degree_(degree) {
  if (degree < 0) throw InvalidParameter("FourierSeries: negative degree");
  coeffs_.assign(2 * static_cast<std::size_t>(degree) + 1, Complex{});
}

FourierSeries::FourierSeries(int degree, std::vector<Complex> coeffs)
    : degree_(degree), coeffs_(std::move(coeffs)) {
  if (degree < 0) throw InvalidParameter("FourierSeries: negative degree");
  if (coeffs_.size() != 2 * static_cast<std::size_t>(degree) + 1) {
    throw InvalidParameter("FourierSeries: expected " + std::to_string(2 * degree + 1) +
                           " coefficients, got " + std::to_string(coeffs_.size()));
  }
}

FourierSeries FourierSeries::constant(Complex value) {
  return FourierSeries(0, {value});
}

FourierSeries FourierSeries::exponential(int k, Complex amplitude) {
  const int K = std::abs(k);
  FourierSeries s(K);
  s.coeffs_[static_cast<std::size_t>(k + K)] = amplitude;
  return s;
}

FourierSeries FourierSeries::cosine(int k, double amplitude) {
  if (k == 0) return constant(amplitude);
  const int K = std::abs(k);
  FourierSeries s(K);
  s.coeffs_.front() = 0.5 * amplitude;
  s.coeffs_.back() = 0.5 * amplitude;
  return s;
}

FourierSeries FourierSeries::sine(int k, double amplitude) {
  if (k == 0) return FourierSeries(0);
  const int K = std::abs(k);
  const double sign = k > 0 ? 1.0 : -1.0;
  FourierSeries s(K);
  // sin(kx) = (e^{ikx} - e^{-ikx}) / 2i
  s.coeffs_.back() = Complex(0.0, -0.5 * sign * amplitude);
  s.coeffs_.front() = Complex(0.0, 0.5 * sign * amplitude);
  return s;
}

bool FourierSeries::real_valued(double tol) const {
  for (int k = 0; k <= degree_; ++k) {
    if (std::abs((*this)[-k] - std::conj((*this)[k])) > tol) return false;
  }
  return true;
}

FourierSeries FourierSeries::resized(int degree) const {
  FourierSeries out(degree);
  const int common = std::min(degree, degree_);
  for (int k = -common; k <= common; ++k) {
    out.coeffs_[static_cast<std::size_t>(k + degree)] = (*this)[k];
  }
  return out;
}

FourierSeries FourierSeries::trimmed(double threshold) const {
  int K = degree_;
  while (K > 0 && std::abs((*this)[K]) <= threshold && std::abs((*this)[-K]) <= threshold) --K;
  return resized(K);
}

FourierSeries& FourierSeries::operator+=(const FourierSeries& other) {
  if (other.degree_ > degree_) *this = resized(other.degree_);
  for (int k = -other.degree_; k <= other.degree_; ++k) {
    coeffs_[static_cast<std::size_t>(k + degree_)] += other[k];
  }
  return *this;
}

FourierSeries& FourierSeries::operator-=(const FourierSeries& other) {
  if (other.degree_ > degree_) *this = resized(other.degree_);
  for (int k = -other.degree_; k <= other.degree_; ++k) {
    coeffs_[static_cast<std::size_t>(k + degree_)] -= other[k];
  }
  return *this;
}

FourierSeries& FourierSeries::operator*=(Complex scale) {
  for (auto& c : coeffs_) c *= scale;
  return *this;
}

double max_coefficient_difference(const FourierSeries& a, const FourierSeries& b) {
  const int K = std::max(a.degree(), b.degree());
  double worst = 0.0;
  for (int k = -K; k <= K; ++k) worst = std::max(worst, std::abs(a[k] - b[k]));
  return worst;
}

double coefficient_l2_norm(const FourierSeries& s) {
  double sum = 0.0;
  for (const auto& c : s.coefficients()) sum += std::norm(c);
  return std::sqrt(sum);
}

double coefficient_l1_norm(const FourierSeries& s) {
  double sum = 0.0;
  for (const auto& c : s.coefficients()) sum += std::abs(c);
  return sum;
}

GridSignal::GridSignal(std::size_t n_points) : samples_(n_points) {
  if (n_points == 0) throw InvalidParameter("GridSignal: need at least one point");
}

GridSignal::GridSignal(std::vector<Complex> samples) : samples_(std::move(samples)) {
  if (samples_.empty()) throw InvalidParameter("GridSignal: need at least one point");
}

double GridSignal::node(std::size_t j) const noexcept {
  return 2.0 * std::numbers::pi * static_cast<double>(j) / static_cast<double>(samples_.size());
}

GridSignal& GridSignal::operator+=(const GridSignal& other) {
  if (other.size() != size()) throw InvalidParameter("GridSignal: size mismatch");
  for (std::size_t j = 0; j < size(); ++j) samples_[j] += other.samples_[j];
  return *this;
}

GridSignal& GridSignal::operator-=(const GridSignal& other) {
  if (other.size() != size()) throw InvalidParameter("GridSignal: size mismatch");
  for (std::size_t j = 0; j < size(); ++j) samples_[j] -= other.samples_[j];
  return *this;
}

GridSignal& GridSignal::operator*=(Complex scale) {
  for (auto& s : samples_) s *= scale;
  return *this;
}

FourierSeries analyze(const GridSignal& signal, int degree) {
  if (degree < 0) throw InvalidParameter("analyze: negative degree");
  const std::size_t N = signal.size();
  if (2 * static_cast<std::size_t>(degree) + 1 > N) {
    throw PreconditionViolation("analyze: degree " + std::to_string(degree) +
                                " needs at least " + std::to_string(2 * degree + 1) +
                                " grid points, got " + std::to_string(N));
  }
  std::vector<Complex> spectrum(N);
  detail::dft(signal.samples(), spectrum, -1);
  const double scale = 1.0 / static_cast<double>(N);
  std::vector<Complex> coeffs(2 * static_cast<std::size_t>(degree) + 1);
  const auto n = static_cast<long long>(N);
  for (int k = -degree; k <= degree; ++k) {
    const auto slot = static_cast<std::size_t>(((k % n) + n) % n);
    coeffs[static_cast<std::size_t>(k + degree)] = spectrum[slot] * scale;
  }
  return FourierSeries(degree, std::move(coeffs));
}

GridSignal synthesize(const FourierSeries& series, std::size_t n_points) {
  if (n_points == 0) throw InvalidParameter("synthesize: need at least one point");
  std::vector<Complex> folded(n_points);
  const auto n = static_cast<long long>(n_points);
  const int K = series.degree();
  for (int k = -K; k <= K; ++k) {
    const auto slot = static_cast<std::size_t>(((k % n) + n) % n);
    folded[slot] += series[k];
  }
  std::vector<Complex> samples(n_points);
  detail::dft(folded, samples, +1);
  return GridSignal(std::move(samples));
}

void validate_norm_index(double p) {
  if (!(p >= 1.0)) throw InvalidParameter("norm index p must satisfy 1 <= p <= inf");
}

double lp_norm(const GridSignal& signal, double p) {
  validate_norm_index(p);
  const auto samples = signal.samples();
  if (std::isinf(p)) {
    double m = 0.0;
    for (const auto& s : samples) m = std::max(m, std::abs(s));
    return m;
  }
  double sum = 0.0;
  if (p == 1.0) {
    for (const auto& s : samples) sum += std::abs(s);
    return sum / static_cast<double>(samples.size());
  }
  if (p == 2.0) {
    for (const auto& s : samples) sum += std::norm(s);
    return std::sqrt(sum / static_cast<double>(samples.size()));
  }
  for (const auto& s : samples) sum += std::pow(std::abs(s), p);
  return std::pow(sum / static_cast<double>(samples.size()), 1.0 / p);
}

double max_abs_difference(const GridSignal& a, const GridSignal& b) {
  if (a.size() != b.size()) throw InvalidParameter("GridSignal: size mismatch");
  double worst = 0.0;
  for (std::size_t j = 0; j < a.size(); ++j) worst = std::max(worst, std::abs(a[j] - b[j]));
  return worst;
}

FourierSeries conjugate(const FourierSeries& series) {
  return apply_multiplier(series, [](int k) {
    return k == 0 ? Complex{} : Complex(0.0, k > 0 ? -1.0 : 1.0);
  });
}

FourierSeries derivative_classical(const FourierSeries& series, int order) {
  if (order < 0) throw InvalidParameter("derivative_classical: negative order");
  return apply_multiplier(series, [order](int k) {
    Complex factor{1.0};
    for (int i = 0; i < order; ++i) factor *= Complex(0.0, static_cast<double>(k));
    return factor;
  });
}

std::size_t default_grid_points(int degree) {
  return 8 * static_cast<std::size_t>(std::max(degree, 0)) + 64;
}

namespace {

double abs_at(const FourierSeries& series, double x) {
  const Complex w = std::polar(1.0, x);
  Complex sum = series[0], power{1.0};
  for (int k = 1; k <= series.degree(); ++k) {
    power *= w;
    sum += series[k] * power + series[-k] * std::conj(power);
  }
  return std::abs(sum);
}

// Golden-section search for a local maximum of |f| on [a, b].
double polish_peak(const FourierSeries& series, double a, double b) {
  const double g = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = b - g * (b - a), d = a + g * (b - a);
  double fc = abs_at(series, c), fd = abs_at(series, d);
  for (int it = 0; it < 80 && b - a > 1e-14; ++it) {
    if (fc >= fd) {
      b = d, d = c, fd = fc;
      c = b - g * (b - a), fc = abs_at(series, c);
    } else {
      a = c, c = d, fc = fd;
      d = a + g * (b - a), fd = abs_at(series, d);
    }
  }
  return std::max(fc, fd);
}

}  // namespace

double norm(const FourierSeries& series, double p, const NormOptions& options) {
  validate_norm_index(p);
  std::size_t N = options.grid_points == 0 ? default_grid_points(series.degree())
                                           : options.grid_points;
  GridSignal grid = synthesize(series, N);
  double value = lp_norm(grid, p);
  if (!std::isinf(p) || !options.refine_sup || series.degree() == 0) return value;
  // Each doubled grid contains the previous one, so the sequence is nondecreasing.
  // One quiet doubling can be a coincidence (the maximizing node survives while
  // the true peak sits between nodes), so two in a row are required.
  int quiet = 0;
  while (2 * N <= options.max_grid_points && quiet < 2) {
    N *= 2;
    grid = synthesize(series, N);
    const double refined = lp_norm(grid, p);
    const double change = refined - value;
    value = refined;
    quiet = change <= options.sup_relative_change * value ? quiet + 1 : 0;
  }
  // Polish the few largest grid peaks between their neighbours.
  std::vector<std::pair<double, std::size_t>> peaks;
  for (std::size_t j = 0; j < N; ++j) {
    const double here = std::abs(grid[j]);
    if (here >= std::abs(grid[(j + N - 1) % N]) && here >= std::abs(grid[(j + 1) % N])) {
      peaks.emplace_back(here, j);
    }
  }
  const std::size_t keep = std::min<std::size_t>(peaks.size(), 4);
  std::partial_sort(peaks.begin(), peaks.begin() + static_cast<std::ptrdiff_t>(keep), peaks.end(),
                    [](const auto& a, const auto& b) { return a.first > b.first; });
  const double h = 2.0 * std::numbers::pi / static_cast<double>(N);
  for (std::size_t i = 0; i < keep; ++i) {
    const double x = grid.node(peaks[i].second);
    value = std::max(value, polish_peak(series, x - h, x + h));
  }
  return value;
}

}  // namespace tapmeans
