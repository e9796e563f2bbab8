#pragma once

// Test functions with known smoothness, addressable by name:
//   "trigpoly:cos3"   "trigpoly:1,0.5*cos1,-0.25*sin2,exp-3"
//   "trigpoly:random,degree=10,seed=7"
//   "geometric:q=0.5"  "geometric:q=0.5,K=60"
//   "weierstrass:alpha=0.5,J=10"
//   "smoothed:m=1,base=<name>"   (base must come last)

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "tapmeans/fourier.hpp"

namespace tapmeans {

struct CatalogEntry {
  std::string name;
  FourierSeries series;
  int truncation_degree = 0;
  /// Declared smoothness class, e.g. "f^{[1]} in Lip 0.5". Metadata only.
  std::string smoothness;
  std::map<std::string, double> parameters;
  /// sum_{|k| > K} |c_k| of the untruncated function.
  double tail_bound = 0.0;
  /// True when the entry is exactly a trigonometric polynomial.
  bool exact = false;
  std::optional<std::uint64_t> seed;

  /// Closed forms of f(x) and f(rho, x), when known.
  std::function<double(double)> exact_f;
  std::function<double(double, double)> exact_poisson;
};

CatalogEntry make_trig_poly(std::string name, FourierSeries series);
/// Real polynomial with coefficients drawn from a seeded mt19937_64.
CatalogEntry make_random_trig_poly(int degree, std::uint64_t seed);
/// c_k = q^|k|, f(x) = (1-q^2)/(1 - 2q cos x + q^2). K < 0 picks the smallest
/// truncation with tail bound below 1e-18.
CatalogEntry make_geometric(double q, int K = -1);
/// sum_{j=0}^J 2^{-alpha j} cos(2^j x), 0 < alpha < 1, 4 <= J <= 12.
CatalogEntry make_weierstrass(double alpha, int J);
/// Right inverse of the radial derivative: c_k -> c_k (|k|-m)!/|k|! for
/// |k| >= max(m,1), 0 for 0 < |k| < m, mean kept. m = 0 returns the entry.
CatalogEntry make_smoothed(const CatalogEntry& entry, int m);

/// Builds an entry from its name. `default_seed` is used by random entries
/// that do not name a seed.
CatalogEntry catalog_entry(std::string_view name, std::uint64_t default_seed = 0);

/// The fixed collection used by the identity checks.
std::vector<CatalogEntry> standard_catalog(std::uint64_t seed = 7);

}  // namespace tapmeans
