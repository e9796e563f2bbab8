#pragma once

#include <concepts>
#include <cstddef>
#include <vector>

namespace tapmeans {

/// Gauss-Legendre rule on [-1, 1]; exact for polynomials of degree 2n-1.
struct GaussRule {
  std::vector<double> nodes;
  std::vector<double> weights;

  std::size_t size() const noexcept { return nodes.size(); }
};

/// n-point rule, computed by Newton iteration on P_n and cached per n.
const GaussRule& gauss_legendre(std::size_t n);

/// Applies `rule` to f on [a, b].
template <class F>
  requires std::invocable<F&, double>
double integrate(const GaussRule& rule, double a, double b, F&& f) {
  const double half = 0.5 * (b - a);
  const double mid = 0.5 * (b + a);
  double sum = 0.0;
  for (std::size_t i = 0; i < rule.size(); ++i) sum += rule.weights[i] * f(mid + half * rule.nodes[i]);
  return half * sum;
}

}  // namespace tapmeans
