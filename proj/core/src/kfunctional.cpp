#include "tapmeans/kfunctional.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <vector>

#include "optimize.hpp"
#include "tapmeans/errors.hpp"
#include "tapmeans/operators.hpp"

namespace tapmeans {
namespace {

void require_lemma2_rho(double rho) {
  if (!(rho >= 0.5 && rho < 1.0)) {
    throw PreconditionViolation("Lemma 2 bounds need rho in [1/2, 1)");
  }
}

void require_order(int n) {
  if (n < 1) throw InvalidParameter("K-functional order n must be positive");
}

// Streaming p-norm accumulator over grid samples.
class NormAccumulator {
 public:
  explicit NormAccumulator(double p) : p_(p) {}

  void add(double magnitude) {
    if (std::isinf(p_)) {
      acc_ = std::max(acc_, magnitude);
    } else if (p_ == 1.0) {
      acc_ += magnitude;
    } else if (p_ == 2.0) {
      acc_ += magnitude * magnitude;
    } else {
      acc_ += std::pow(magnitude, p_);
    }
  }

  double result(std::size_t count) const {
    if (std::isinf(p_)) return acc_;
    const double mean = acc_ / static_cast<double>(count);
    if (p_ == 1.0) return mean;
    if (p_ == 2.0) return std::sqrt(mean);
    return std::pow(mean, 1.0 / p_);
  }

 private:
  double p_;
  double acc_ = 0.0;
};

// Objective of h = sum_a s_a (f_a e^{iax} + f_{-a} e^{-iax}) over a fixed grid,
// with O(N) trial updates of a single scaling.
class ScalingObjective {
 public:
  ScalingObjective(const FourierSeries& f, std::vector<int> groups, std::vector<double> weights,
                   double p, std::size_t n_points)
      : f_(f), groups_(std::move(groups)), weights_(std::move(weights)), p_(p),
        roots_(n_points) {
    for (std::size_t j = 0; j < n_points; ++j) {
      roots_[j] = std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(j) /
                                      static_cast<double>(n_points));
    }
  }

  std::size_t size() const noexcept { return groups_.size(); }

  FourierSeries witness(const std::vector<double>& s, int degree) const {
    std::vector<Complex> h(2 * static_cast<std::size_t>(degree) + 1);
    for (std::size_t g = 0; g < groups_.size(); ++g) {
      const int a = groups_[g];
      if (a > degree) continue;
      h[static_cast<std::size_t>(degree + a)] = s[g] * f_[a];
      h[static_cast<std::size_t>(degree - a)] = s[g] * f_[-a];
    }
    return FourierSeries(degree, std::move(h));
  }

  void reset(const std::vector<double>& s) {
    s_ = s;
    const int K = f_.degree();
    std::vector<Complex> residual(f_.coefficients().begin(), f_.coefficients().end());
    std::vector<Complex> derivative(residual.size());
    for (std::size_t g = 0; g < groups_.size(); ++g) {
      for (const int k : {groups_[g], -groups_[g]}) {
        const auto idx = static_cast<std::size_t>(K + k);
        residual[idx] = (1.0 - s[g]) * f_[k];
        derivative[idx] = s[g] * weights_[g] * f_[k];
        if (k == 0) break;
      }
    }
    const auto r = synthesize(FourierSeries(K, std::move(residual)), roots_.size());
    const auto d = synthesize(FourierSeries(K, std::move(derivative)), roots_.size());
    residual_buf_.assign(r.samples().begin(), r.samples().end());
    derivative_buf_.assign(d.samples().begin(), d.samples().end());
  }

  double value() { return trial(0, s_.empty() ? 0.0 : s_[0]); }

  double trial(std::size_t g, double s) {
    const double ds = s_.empty() ? 0.0 : s - s_[g];
    const double w = groups_.empty() ? 0.0 : weights_[g];
    const std::size_t N = roots_.size();
    const auto& mode = ds != 0.0 ? mode_of(g) : mode_;
    NormAccumulator lhs(p_), rhs(p_);
    // sqrt(norm) rather than abs: hypot dominates the trial cost otherwise.
    for (std::size_t j = 0; j < N; ++j) {
      const Complex m = ds != 0.0 ? mode[j] : Complex{};
      lhs.add(std::sqrt(std::norm(residual_buf_[j] - ds * m)));
      rhs.add(std::sqrt(std::norm(derivative_buf_[j] + ds * w * m)));
    }
    return lhs.result(N) + rhs.result(N);
  }

  void commit(std::size_t g, double s) {
    const double ds = s - s_[g];
    if (ds == 0.0) return;
    const auto& mode = mode_of(g);
    for (std::size_t j = 0; j < roots_.size(); ++j) {
      residual_buf_[j] -= ds * mode[j];
      derivative_buf_[j] += ds * weights_[g] * mode[j];
    }
    s_[g] = s;
  }

 private:
  const FourierSeries& f_;
  std::vector<int> groups_;
  std::vector<double> weights_;  // delta^n |k|!/(|k|-n)!
  double p_;
  std::vector<Complex> roots_;
  std::vector<double> s_;
  std::vector<Complex> residual_buf_;
  std::vector<Complex> derivative_buf_;
  std::size_t mode_group_ = static_cast<std::size_t>(-1);
  std::vector<Complex> mode_;

  // Grid values of f_a e^{iax} + f_{-a} e^{-iax} for group g, kept for the
  // group currently being searched.
  const std::vector<Complex>& mode_of(std::size_t g) {
    if (mode_group_ == g) return mode_;
    const int a = groups_[g];
    const Complex plus = f_[a];
    const Complex minus = a == 0 ? Complex{} : f_[-a];
    const std::size_t N = roots_.size();
    mode_.resize(N);
    for (std::size_t j = 0; j < N; ++j) {
      const std::size_t idx = (static_cast<std::size_t>(a) * j) % N;
      mode_[j] = plus * roots_[idx] + minus * std::conj(roots_[idx]);
    }
    mode_group_ = g;
    return mode_;
  }
};

}  // namespace

double k_objective(const FourierSeries& f, const FourierSeries& h, double delta, int n, double p,
                   const NormOptions& options) {
  require_order(n);
  if (!(delta > 0.0)) throw InvalidParameter("K-functional: delta must be positive");
  return norm(f - h, p, options) + std::pow(delta, n) * norm(radial_derivative(h, n), p, options);
}

double k_lower_lemma2(const FourierSeries& f, double rho, int n, double p,
                      const NormOptions& options) {
  require_lemma2_rho(rho);
  require_order(n);
  double n_factorial = 1.0;
  for (int i = 2; i <= n; ++i) n_factorial *= i;
  return std::pow(1.0 - rho, n) * m_p_quantity(f, rho, n, p, options) / (2.0 * n_factorial);
}

double k_upper_lemma2(const FourierSeries& f, double rho, int n, double p,
                      const NormOptions& options) {
  require_lemma2_rho(rho);
  require_order(n);
  const double approximation = norm(approximation_defect(f, SmoothingParams(rho, n)), p, options);
  return approximation + lemma2_upper_constant(n) * std::pow(1.0 - rho, n) *
                             m_p_quantity(f, std::sqrt(rho), n, p, options);
}

KMinimizeResult k_upper_minimize(const FourierSeries& f, double delta, int n, double p,
                                 const MinimizeOptions& options) {
  require_order(n);
  validate_norm_index(p);
  if (!(delta > 0.0)) throw InvalidParameter("k_upper_minimize: delta must be positive");
  const int D = options.candidate_degree < 0 ? f.degree() + 8 : options.candidate_degree;
  const double delta_n = std::pow(delta, n);

  std::vector<int> groups;
  std::vector<double> weights;
  for (int a = 0; a <= std::min(D, f.degree()); ++a) {
    if (f[a] == Complex{} && f[-a] == Complex{}) continue;
    groups.push_back(a);
    weights.push_back(delta_n * falling_factorial(a, n));
  }
  const std::size_t G = groups.size();
  const std::size_t N = options.norm.grid_points == 0
                            ? default_grid_points(std::max(D, f.degree()))
                            : options.norm.grid_points;
  ScalingObjective objective(f, groups, weights, p, N);

  auto evaluate = [&](const std::vector<double>& s) {
    objective.reset(s);
    return objective.value();
  };

  struct Candidate {
    std::string family;
    std::vector<double> s;
    double coarse;
  };
  std::vector<Candidate> candidates;
  auto add_candidate = [&](std::string family, std::vector<double> s) {
    const double v = evaluate(s);
    candidates.push_back({std::move(family), std::move(s), v});
  };

  add_candidate("zero", std::vector<double>(G, 0.0));
  add_candidate("identity", std::vector<double>(G, 1.0));
  if (delta < 1.0) {
    std::vector<double> s(G);
    for (std::size_t g = 0; g < G; ++g) s[g] = lambda_multiplier(groups[g], n, 1.0 - delta);
    add_candidate("lemma2", std::move(s));
  }
  {
    auto tikhonov = [&](double log_gamma) {
      std::vector<double> s(G);
      const double gamma = std::exp(log_gamma);
      for (std::size_t g = 0; g < G; ++g) s[g] = 1.0 / (1.0 + gamma * weights[g] * weights[g]);
      return s;
    };
    const auto best = detail::golden_section(
        [&](double u) { return evaluate(tikhonov(u)); }, -120.0, 120.0, 1e-7);
    add_candidate("tikhonov", tikhonov(best.x));
  }

  auto start = std::min_element(candidates.begin(), candidates.end(),
                                [](const Candidate& a, const Candidate& b) { return a.coarse < b.coarse; });

  KMinimizeResult result;
  const bool descend = p != 2.0 && G > 0 && static_cast<int>(G) <= options.max_coordinates;
  if (descend) {
    std::vector<double> s = start->s;
    objective.reset(s);
    double current = objective.value();
    result.converged = false;
    for (int sweep = 0; sweep < options.max_sweeps; ++sweep) {
      const double before = current;
      for (std::size_t g = 0; g < G; ++g) {
        const auto best = detail::golden_section([&](double v) { return objective.trial(g, v); },
                                                 0.0, 1.0, 1e-10);
        if (best.value < current) {
          objective.commit(g, best.x);
          s[g] = best.x;
          current = best.value;
        }
      }
      objective.reset(s);
      current = objective.value();
      result.sweeps = sweep + 1;
      if (before - current <= options.tolerance * (1.0 + current)) {
        result.converged = true;
        break;
      }
    }
    candidates.push_back({"coordinate", s, current});
    start = std::min_element(candidates.begin(), candidates.end(),
                             [](const Candidate& a, const Candidate& b) { return a.coarse < b.coarse; });
  }

  result.family = start->family;
  result.witness = objective.witness(start->s, D);
  result.value = k_objective(f, result.witness, delta, n, p, options.norm);
  return result;
}

KBracket k_bracket(const FourierSeries& f, double delta, int n, double p,
                   const KBracketOptions& options) {
  require_order(n);
  validate_norm_index(p);
  if (!(delta > 0.0)) throw InvalidParameter("k_bracket: delta must be positive");
  const NormOptions& norm_options = options.minimize_options.norm;

  KBracket b;
  b.delta = delta;
  b.n = n;
  b.p = p;
  b.lower_available = delta <= 0.5;
  if (b.lower_available) {
    const double rho = 1.0 - delta;
    b.lower = k_lower_lemma2(f, rho, n, p, norm_options);
    b.upper_lemma2 = k_upper_lemma2(f, rho, n, p, norm_options);
  }
  b.upper_zero = norm(f, p, norm_options);
  b.upper_identity = std::pow(delta, n) * norm(radial_derivative(f, n), p, norm_options);

  b.upper = b.upper_zero;
  b.upper_witness = "zero";
  b.witness = FourierSeries(f.degree());
  if (b.upper_identity < b.upper) {
    b.upper = b.upper_identity;
    b.upper_witness = "identity";
    b.witness = f;
  }
  if (b.upper_lemma2 < b.upper) {
    b.upper = b.upper_lemma2;
    b.upper_witness = "lemma2";
    b.witness = taylor_abel_poisson(f, SmoothingParams(1.0 - delta, n));
  }
  if (options.minimize) {
    auto m = k_upper_minimize(f, delta, n, p, options.minimize_options);
    b.upper_minimize = m.value;
    b.minimizer_converged = m.converged;
    if (m.value < b.upper) {
      b.upper = m.value;
      b.upper_witness = "minimize:" + m.family;
      b.witness = std::move(m.witness);
    }
  }
  if (b.lower > b.upper) {
    b.lower = b.upper;
    b.lower_clamped = true;
  }
  return b;
}

}  // namespace tapmeans
