#pragma once

#include <cmath>
#include <concepts>
#include <utility>

namespace tapmeans::detail {

struct ScalarMinimum {
  double x;
  double value;
};

/// Golden-section search for a unimodal f on [lo, hi]. Returns the best point
/// evaluated, including the end points.
template <class F>
  requires std::invocable<F&, double>
ScalarMinimum golden_section(F&& f, double lo, double hi, double x_tol, int max_iter = 200) {
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  ScalarMinimum best{lo, f(lo)};
  if (const double v = f(hi); v < best.value) best = {hi, v};
  double a = lo, b = hi;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = f(c), fd = f(d);
  for (int i = 0; i < max_iter && (b - a) > x_tol; ++i) {
    if (fc <= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = f(d);
    }
  }
  if (fc < best.value) best = {c, fc};
  if (fd < best.value) best = {d, fd};
  return best;
}

}  // namespace tapmeans::detail
