#include "tapmeans/rate_fit.hpp"

#include <cmath>

#include "tapmeans/errors.hpp"

namespace tapmeans {

RateFit fit_rate(std::span<const std::pair<double, double>> pairs) {
  if (pairs.size() < 4) throw InvalidParameter("fit_rate: need at least 4 pairs");
  double sx = 0.0, sy = 0.0;
  for (const auto& [h, e] : pairs) {
    if (!(h > 0.0) || !(e > 0.0) || !std::isfinite(h) || !std::isfinite(e)) {
      throw InvalidParameter("fit_rate: all values must be positive and finite");
    }
    sx += std::log(h);
    sy += std::log(e);
  }
  const double n = static_cast<double>(pairs.size());
  const double mx = sx / n, my = sy / n;
  double sxx = 0.0, sxy = 0.0;
  for (const auto& [h, e] : pairs) {
    const double dx = std::log(h) - mx;
    sxx += dx * dx;
    sxy += dx * (std::log(e) - my);
  }
  if (!(sxx > 0.0)) throw InvalidParameter("fit_rate: need at least two distinct h values");

  RateFit fit;
  fit.exponent = sxy / sxx;
  fit.intercept = my - fit.exponent * mx;
  double ss = 0.0;
  for (const auto& [h, e] : pairs) {
    const double r = std::log(e) - (fit.intercept + fit.exponent * std::log(h));
    ss += r * r;
  }
  fit.residual = std::sqrt(ss / n);
  return fit;
}

}  // namespace tapmeans
