#pragma once

#include <span>
#include <utility>

namespace tapmeans {

struct RateFit {
  /// Least-squares slope of ln e against ln h.
  double exponent = 0.0;
  double intercept = 0.0;
  /// Root mean square of the residuals in log space.
  double residual = 0.0;
};

/// Fits e ~ C h^exponent to pairs (h, e). Needs at least 4 pairs with h, e > 0
/// and two distinct h; throws InvalidParameter otherwise.
RateFit fit_rate(std::span<const std::pair<double, double>> pairs);

}  // namespace tapmeans
