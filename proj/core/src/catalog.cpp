#include "tapmeans/catalog.hpp"

#include <charconv>
#include <cmath>
#include <random>
#include <sstream>

#include "tapmeans/errors.hpp"
#include "tapmeans/operators.hpp"

namespace tapmeans {
namespace {

constexpr int kMaxDegree = 4096;

std::string format_number(double x) {
  std::ostringstream os;
  os.precision(17);
  os << x;
  return os.str();
}

double real_sum(const FourierSeries& s, double x) {
  Complex sum = s[0];
  for (int k = 1; k <= s.degree(); ++k) {
    const Complex e = std::polar(1.0, k * x);
    sum += s[k] * e + s[-k] * std::conj(e);
  }
  return sum.real();
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && s.front() == ' ') s.remove_prefix(1);
  while (!s.empty() && s.back() == ' ') s.remove_suffix(1);
  return s;
}

double parse_number(std::string_view text, std::string_view context) {
  text = trim(text);
  if (!text.empty() && text.front() == '+') text.remove_prefix(1);
  double value = 0.0;
  const auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || end != text.data() + text.size() || text.empty()) {
    throw ConfigError("catalog name '" + std::string(context) + "': cannot parse number '" +
                      std::string(text) + "'");
  }
  return value;
}

int parse_int(std::string_view text, std::string_view context) {
  const double v = parse_number(text, context);
  if (v != std::floor(v) || std::abs(v) > 1e9) {
    throw ConfigError("catalog name '" + std::string(context) + "': expected an integer, got '" +
                      std::string(text) + "'");
  }
  return static_cast<int>(v);
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= s.size(); ++i) {
    if (i == s.size() || s[i] == sep) {
      out.push_back(trim(s.substr(start, i - start)));
      start = i + 1;
    }
  }
  return out;
}

// key=value pairs; stops at "base=", whose value is the rest of the string.
std::map<std::string, std::string, std::less<>> parse_keys(std::string_view body,
                                                           std::string_view context) {
  std::map<std::string, std::string, std::less<>> keys;
  while (!body.empty()) {
    const auto eq = body.find('=');
    if (eq == std::string_view::npos) {
      throw ConfigError("catalog name '" + std::string(context) + "': expected key=value");
    }
    const std::string key(trim(body.substr(0, eq)));
    body.remove_prefix(eq + 1);
    std::string_view value = body;
    if (key == "base") {
      body = {};
    } else {
      const auto comma = body.find(',');
      value = body.substr(0, comma);
      body = comma == std::string_view::npos ? std::string_view{} : body.substr(comma + 1);
    }
    if (!keys.emplace(key, std::string(trim(value))).second) {
      throw ConfigError("catalog name '" + std::string(context) + "': duplicate key " + key);
    }
  }
  return keys;
}

std::string_view require_key(const std::map<std::string, std::string, std::less<>>& keys,
                             std::string_view key, std::string_view context) {
  const auto it = keys.find(key);
  if (it == keys.end()) {
    throw ConfigError("catalog name '" + std::string(context) + "': missing " + std::string(key));
  }
  return it->second;
}

void reject_unknown(const std::map<std::string, std::string, std::less<>>& keys,
                    std::initializer_list<std::string_view> allowed, std::string_view context) {
  for (const auto& [key, value] : keys) {
    bool known = false;
    for (const auto a : allowed) known = known || key == a;
    if (!known) throw ConfigError("catalog name '" + std::string(context) + "': unknown key " + key);
  }
}

// One term of a trigpoly list: [coef*]cosK | sinK | expK | number.
FourierSeries parse_term(std::string_view term, std::string_view context) {
  double amplitude = 1.0;
  if (const auto star = term.find('*'); star != std::string_view::npos) {
    amplitude = parse_number(term.substr(0, star), context);
    term = trim(term.substr(star + 1));
  }
  auto mode = [&](std::size_t prefix) { return parse_int(term.substr(prefix), context); };
  if (term.starts_with("cos")) return FourierSeries::cosine(std::abs(mode(3)), amplitude);
  if (term.starts_with("sin")) return FourierSeries::sine(std::abs(mode(3)), amplitude);
  if (term.starts_with("exp")) return FourierSeries::exponential(mode(3), amplitude);
  return FourierSeries::constant(amplitude * parse_number(term, context));
}

CatalogEntry parse_trigpoly(std::string_view body, std::string_view name,
                            std::uint64_t default_seed) {
  if (body.starts_with("random")) {
    body.remove_prefix(6);
    if (body.starts_with(",")) body.remove_prefix(1);
    const auto keys = parse_keys(body, name);
    reject_unknown(keys, {"degree", "seed"}, name);
    const int degree = parse_int(require_key(keys, "degree", name), name);
    std::uint64_t seed = default_seed;
    if (const auto it = keys.find("seed"); it != keys.end()) {
      const double s = parse_number(it->second, name);
      if (s < 0 || s != std::floor(s)) throw ConfigError("catalog seed must be a nonnegative integer");
      seed = static_cast<std::uint64_t>(s);
    }
    return make_random_trig_poly(degree, seed);
  }
  FourierSeries sum(0);
  for (const auto term : split(body, ',')) {
    if (term.empty()) throw ConfigError("catalog name '" + std::string(name) + "': empty term");
    const auto t = parse_term(term, name);
    const int degree = std::max(sum.degree(), t.degree());
    if (degree > kMaxDegree) throw ConfigError("catalog name: degree above 4096");
    sum = sum.resized(degree) + t.resized(degree);
  }
  return make_trig_poly(std::string(name), std::move(sum));
}

}  // namespace

CatalogEntry make_trig_poly(std::string name, FourierSeries series) {
  CatalogEntry e;
  e.name = std::move(name);
  e.truncation_degree = series.degree();
  e.smoothness = "trigonometric polynomial";
  e.parameters["degree"] = series.degree();
  e.exact = true;
  e.exact_f = [s = series](double x) { return real_sum(s, x); };
  e.exact_poisson = [s = series](double rho, double x) { return real_sum(poisson_mean(s, rho), x); };
  e.series = std::move(series);
  return e;
}

CatalogEntry make_random_trig_poly(int degree, std::uint64_t seed) {
  if (degree < 0 || degree > kMaxDegree) throw InvalidParameter("random polynomial: degree out of range");
  std::mt19937_64 engine(seed);
  // Explicit 53-bit mapping keeps the draws identical across standard libraries.
  auto uniform = [&] { return static_cast<double>(engine() >> 11) * 0x1.0p-53 * 2.0 - 1.0; };
  std::vector<Complex> c(2 * static_cast<std::size_t>(degree) + 1);
  c[static_cast<std::size_t>(degree)] = uniform();
  for (int k = 1; k <= degree; ++k) {
    const double re = uniform();
    const double im = uniform();
    c[static_cast<std::size_t>(degree + k)] = Complex(re, im) * 0.5;
    c[static_cast<std::size_t>(degree - k)] = Complex(re, -im) * 0.5;
  }
  auto e = make_trig_poly("trigpoly:random,degree=" + std::to_string(degree) +
                              ",seed=" + std::to_string(seed),
                          FourierSeries(degree, std::move(c)));
  e.seed = seed;
  return e;
}

CatalogEntry make_geometric(double q, int K) {
  if (!(q > 0.0 && q < 1.0)) throw InvalidParameter("geometric: q must lie in (0, 1)");
  auto tail = [q](int k) { return 2.0 * std::pow(q, k + 1) / (1.0 - q); };
  if (K < 0) {
    K = 0;
    while (tail(K) >= 1e-18 && K < kMaxDegree) ++K;
  }
  if (K > kMaxDegree) throw InvalidParameter("geometric: truncation above 4096");
  std::vector<Complex> c(2 * static_cast<std::size_t>(K) + 1);
  for (int k = -K; k <= K; ++k) c[static_cast<std::size_t>(k + K)] = std::pow(q, std::abs(k));

  CatalogEntry e;
  e.name = "geometric:q=" + format_number(q) + ",K=" + std::to_string(K);
  e.series = FourierSeries(K, std::move(c));
  e.truncation_degree = K;
  e.smoothness = "analytic (c_k = q^|k|)";
  e.parameters = {{"q", q}, {"K", K}};
  e.tail_bound = tail(K);
  auto closed = [](double a, double x) { return (1.0 - a * a) / (1.0 - 2.0 * a * std::cos(x) + a * a); };
  e.exact_f = [q, closed](double x) { return closed(q, x); };
  e.exact_poisson = [q, closed](double rho, double x) { return closed(q * rho, x); };
  return e;
}

CatalogEntry make_weierstrass(double alpha, int J) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw InvalidParameter("weierstrass: alpha must lie in (0, 1)");
  if (J < 4) throw InvalidParameter("weierstrass: need J >= 4");
  if (J > 12) throw InvalidParameter("weierstrass: 2^J exceeds the degree budget of 4096");
  const int K = 1 << J;
  std::vector<Complex> c(2 * static_cast<std::size_t>(K) + 1);
  for (int j = 0; j <= J; ++j) {
    const double a = std::exp2(-alpha * j) / 2.0;
    c[static_cast<std::size_t>(K + (1 << j))] = a;
    c[static_cast<std::size_t>(K - (1 << j))] = a;
  }

  CatalogEntry e;
  e.name = "weierstrass:alpha=" + format_number(alpha) + ",J=" + std::to_string(J);
  e.series = FourierSeries(K, std::move(c));
  e.truncation_degree = K;
  e.smoothness = "Lip " + format_number(alpha) + ", K_1(delta, f) ~ delta^alpha";
  e.parameters = {{"alpha", alpha}, {"J", J}};
  e.tail_bound = std::exp2(-alpha * (J + 1)) / (1.0 - std::exp2(-alpha));
  e.exact_poisson = [alpha, J](double rho, double x) {
    double sum = 0.0;
    for (int j = 0; j <= J; ++j) {
      const double k = std::ldexp(1.0, j);
      sum += std::exp2(-alpha * j) * std::pow(rho, k) * std::cos(k * x);
    }
    return sum;
  };
  e.exact_f = [p = e.exact_poisson](double x) { return p(1.0, x); };
  return e;
}

CatalogEntry make_smoothed(const CatalogEntry& entry, int m) {
  if (m < 0) throw InvalidParameter("smoothed: m must be nonnegative");
  if (m == 0) return entry;
  const int floor_k = std::max(m, 1);
  CatalogEntry e;
  e.name = "smoothed:m=" + std::to_string(m) + ",base=" + entry.name;
  e.series = apply_radial_multiplier(entry.series, [&](int a) -> double {
    if (a == 0) return 1.0;
    if (a < floor_k) return 0.0;
    return 1.0 / falling_factorial(a, m);
  });
  e.truncation_degree = entry.truncation_degree;
  e.smoothness = "f^{[" + std::to_string(m) + "]} = " + entry.name + " (" + entry.smoothness + ")";
  e.parameters = entry.parameters;
  e.parameters["m"] = m;
  e.tail_bound = entry.tail_bound / falling_factorial(entry.truncation_degree + 1, m);
  e.exact = entry.exact;
  e.seed = entry.seed;
  return e;
}

CatalogEntry catalog_entry(std::string_view name, std::uint64_t default_seed) {
  name = trim(name);
  const auto colon = name.find(':');
  if (colon == std::string_view::npos) {
    throw ConfigError("catalog name '" + std::string(name) + "' has no family prefix");
  }
  const auto family = name.substr(0, colon);
  const auto body = trim(name.substr(colon + 1));
  try {
    if (family == "trigpoly") return parse_trigpoly(body, name, default_seed);
    if (family == "geometric") {
      const auto keys = parse_keys(body, name);
      reject_unknown(keys, {"q", "K"}, name);
      const double q = parse_number(require_key(keys, "q", name), name);
      const auto k = keys.find("K");
      return make_geometric(q, k == keys.end() ? -1 : parse_int(k->second, name));
    }
    if (family == "weierstrass") {
      const auto keys = parse_keys(body, name);
      reject_unknown(keys, {"alpha", "J"}, name);
      return make_weierstrass(parse_number(require_key(keys, "alpha", name), name),
                              parse_int(require_key(keys, "J", name), name));
    }
    if (family == "smoothed") {
      const auto keys = parse_keys(body, name);
      reject_unknown(keys, {"m", "base"}, name);
      const int m = parse_int(require_key(keys, "m", name), name);
      return make_smoothed(catalog_entry(require_key(keys, "base", name), default_seed), m);
    }
  } catch (const InvalidParameter& err) {
    throw ConfigError("catalog name '" + std::string(name) + "': " + err.what());
  }
  throw ConfigError("unknown catalog family '" + std::string(family) + "'");
}

std::vector<CatalogEntry> standard_catalog(std::uint64_t seed) {
  std::vector<CatalogEntry> out;
  for (const char* name : {"trigpoly:cos1", "trigpoly:cos3", "trigpoly:1,0.5*cos1,-0.25*sin2",
                           "trigpoly:exp-3,0.5*sin7", "geometric:q=0.5", "geometric:q=0.9",
                           "weierstrass:alpha=0.3,J=12", "weierstrass:alpha=0.5,J=10",
                           "weierstrass:alpha=0.7,J=12",
                           "smoothed:m=1,base=weierstrass:alpha=0.5,J=12",
                           "smoothed:m=2,base=weierstrass:alpha=0.7,J=12",
                           "smoothed:m=2,base=geometric:q=0.5"}) {
    out.push_back(catalog_entry(name));
  }
  out.push_back(make_random_trig_poly(10, seed));
  return out;
}

}  // namespace tapmeans
