#include "tapmeans/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "tapmeans/errors.hpp"

namespace tapmeans {
namespace {

using nlohmann::json;

json number_or_string(double x) {
  if (std::isfinite(x)) return x;
  return format_double(x);
}

json checks_json(const std::vector<Check>& checks) {
  json out = json::array();
  for (const auto& c : checks) {
    out.push_back({{"name", c.name},
                   {"measured", number_or_string(c.measured)},
                   {"limit", number_or_string(c.limit)},
                   {"pass", c.pass},
                   {"detail", c.detail}});
  }
  return out;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (const char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string coord(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", x);
  return buf;
}

}  // namespace

std::string format_double(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

Table to_table(const RateReport& report) {
  Table t;
  t.columns = {"rho", "one_minus_rho", "error", "envelope", "ratio"};
  t.columns.insert(t.columns.end(), report.extra_columns.begin(), report.extra_columns.end());
  for (const auto& row : report.rows) {
    std::vector<std::string> cells{format_double(row.rho), format_double(row.one_minus_rho),
                                   format_double(row.error), format_double(row.envelope),
                                   format_double(row.ratio)};
    for (const double x : row.extra) cells.push_back(format_double(x));
    t.rows.push_back(std::move(cells));
  }
  return t;
}

Table to_table(const IdentityReport& report) {
  Table t;
  t.columns = {"check", "max_deviation", "tolerance", "pass"};
  for (const auto& c : report.checks) {
    t.rows.push_back({c.name, format_double(c.measured), format_double(c.limit), c.pass ? "1" : "0"});
  }
  return t;
}

Table to_table(const KfunReport& report) {
  Table t;
  t.columns = {"delta", "lower", "upper", "upper_lemma2", "upper_minimize", "witness", "omega", "ratio"};
  for (const auto& r : report.rows) {
    t.rows.push_back({format_double(r.delta), format_double(r.lower), format_double(r.upper),
                      format_double(r.upper_lemma2), format_double(r.upper_minimize), r.witness,
                      format_double(r.omega), format_double(r.ratio)});
  }
  return t;
}

Table to_table(const ModuliReport& report) {
  Table t;
  t.columns = {"condition", "n", "sup_ratio", "base_sup_ratio", "limit_ratio", "holds"};
  for (const auto& c : report.conditions) {
    t.rows.push_back({c.condition, std::to_string(c.n), format_double(c.sup_ratio),
                      format_double(c.base_sup_ratio), format_double(c.limit_ratio),
                      c.holds ? "1" : "0"});
  }
  return t;
}

void write_csv(std::ostream& out, const Table& table) {
  for (std::size_t i = 0; i < table.columns.size(); ++i) {
    out << (i ? "," : "") << csv_field(table.columns[i]);
  }
  out << '\n';
  for (const auto& row : table.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << csv_field(row[i]);
    out << '\n';
  }
}

json to_json(const FourierSeries& series) {
  json re = json::array(), im = json::array();
  for (const auto& c : series.coefficients()) {
    re.push_back(c.real());
    im.push_back(c.imag());
  }
  return {{"degree", series.degree()}, {"re", re}, {"im", im}};
}

FourierSeries series_from_json(const json& j) {
  try {
    const int degree = j.at("degree").get<int>();
    const auto re = j.at("re").get<std::vector<double>>();
    const auto im = j.at("im").get<std::vector<double>>();
    if (degree < 0 || re.size() != 2 * static_cast<std::size_t>(degree) + 1 || im.size() != re.size()) {
      throw ConfigError("series JSON: re and im need 2*degree+1 entries");
    }
    std::vector<Complex> c(re.size());
    for (std::size_t i = 0; i < c.size(); ++i) c[i] = {re[i], im[i]};
    return FourierSeries(degree, std::move(c));
  } catch (const json::exception& e) {
    throw ConfigError(std::string("series JSON: ") + e.what());
  }
}

json to_json(const ConditionReport& c) {
  return {{"condition", c.condition},     {"n", c.n},
          {"sup_ratio", number_or_string(c.sup_ratio)},
          {"base_sup_ratio", number_or_string(c.base_sup_ratio)},
          {"limit_ratio", number_or_string(c.limit_ratio)},
          {"probe_grid", c.probe_grid},   {"holds", c.holds},
          {"note", c.note}};
}

json to_json(const IdentityReport& report) {
  return {{"function", report.function},
          {"r", report.r},
          {"checks", checks_json(report.checks)},
          {"pass", report.pass()}};
}

json to_json(const RateReport& report) {
  json rows = json::array();
  for (const auto& row : report.rows) {
    json r = {{"rho", row.rho},
              {"one_minus_rho", row.one_minus_rho},
              {"error", row.error},
              {"envelope", number_or_string(row.envelope)},
              {"ratio", number_or_string(row.ratio)}};
    for (std::size_t i = 0; i < row.extra.size(); ++i) {
      r[report.extra_columns[i]] = number_or_string(row.extra[i]);
    }
    rows.push_back(std::move(r));
  }
  json fits = json::array();
  for (const auto& f : report.fits) {
    fits.push_back({{"name", f.name},
                    {"exponent", f.fit.exponent},
                    {"intercept", f.fit.intercept},
                    {"residual", f.fit.residual},
                    {"expected", number_or_string(f.expected)}});
  }
  return {{"experiment", report.experiment},
          {"function", report.function},
          {"p", number_or_string(report.p)},
          {"r", report.r},
          {"n", report.n},
          {"omega", report.omega},
          {"rows", rows},
          {"fits", fits},
          {"ratio_range", {number_or_string(report.ratio_min), number_or_string(report.ratio_max)}},
          {"trivial", report.trivial},
          {"identities", to_json(report.identities)},
          {"verdicts", checks_json(report.verdicts)},
          {"notes", report.notes},
          {"pass", report.pass()}};
}

json to_json(const KfunReport& report) {
  json rows = json::array();
  for (const auto& r : report.rows) {
    rows.push_back({{"delta", r.delta},
                    {"lower", r.lower},
                    {"upper", r.upper},
                    {"upper_lemma2", number_or_string(r.upper_lemma2)},
                    {"upper_minimize", number_or_string(r.upper_minimize)},
                    {"witness", r.witness},
                    {"lower_clamped", r.lower_clamped},
                    {"omega", number_or_string(r.omega)},
                    {"ratio", number_or_string(r.ratio)}});
  }
  return {{"function", report.function}, {"p", number_or_string(report.p)},
          {"n", report.n},               {"omega", report.omega},
          {"rows", rows},                {"verdicts", checks_json(report.verdicts)},
          {"pass", report.pass()}};
}

json to_json(const ModuliReport& report) {
  json conditions = json::array();
  for (const auto& c : report.conditions) conditions.push_back(to_json(c));
  return {{"omega", report.omega}, {"n", report.n}, {"conditions", conditions},
          {"pass", report.pass()}};
}

void write_svg_plot(std::ostream& out, const RateReport& report) {
  constexpr double W = 640, H = 420, L = 70, R = 20, T = 30, B = 50;
  std::vector<std::pair<double, double>> err, env;
  double log_ratio_sum = 0.0;
  int ratio_count = 0;
  for (const auto& row : report.rows) {
    if (row.ratio > 0.0 && std::isfinite(row.ratio)) {
      log_ratio_sum += std::log(row.ratio);
      ++ratio_count;
    }
  }
  const double scale = ratio_count ? std::exp(log_ratio_sum / ratio_count) : 1.0;
  for (const auto& row : report.rows) {
    if (row.one_minus_rho <= 0.0) continue;
    if (row.error > 0.0) err.emplace_back(std::log10(row.one_minus_rho), std::log10(row.error));
    if (row.envelope > 0.0 && std::isfinite(row.envelope)) {
      env.emplace_back(std::log10(row.one_minus_rho), std::log10(row.envelope * scale));
    }
  }
  double x0 = kInfinity, x1 = -kInfinity, y0 = kInfinity, y1 = -kInfinity;
  for (const auto* series : {&err, &env}) {
    for (const auto& [x, y] : *series) {
      x0 = std::min(x0, x);
      x1 = std::max(x1, x);
      y0 = std::min(y0, y);
      y1 = std::max(y1, y);
    }
  }
  if (!std::isfinite(x0)) x0 = y0 = 0.0, x1 = y1 = 1.0;
  if (!(x1 > x0)) x1 = x0 + 1.0;
  if (!(y1 > y0)) y1 = y0 + 1.0;
  auto px = [&](double x) { return L + (x - x0) / (x1 - x0) * (W - L - R); };
  auto py = [&](double y) { return H - B - (y - y0) / (y1 - y0) * (H - T - B); };
  auto polyline = [&](const std::vector<std::pair<double, double>>& pts, const char* style) {
    out << "<polyline fill=\"none\" " << style << " points=\"";
    for (std::size_t i = 0; i < pts.size(); ++i) {
      out << (i ? " " : "") << coord(px(pts[i].first)) << ',' << coord(py(pts[i].second));
    }
    out << "\"/>\n";
  };

  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H
      << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  out << "<text x=\"" << L << "\" y=\"18\">" << report.experiment << ": " << report.function
      << " (r=" << report.r << ", n=" << report.n << ", p=" << format_double(report.p) << ")</text>\n";
  out << "<line x1=\"" << L << "\" y1=\"" << H - B << "\" x2=\"" << W - R << "\" y2=\"" << H - B
      << "\" stroke=\"black\"/>\n";
  out << "<line x1=\"" << L << "\" y1=\"" << T << "\" x2=\"" << L << "\" y2=\"" << H - B
      << "\" stroke=\"black\"/>\n";
  for (int i = 0; i <= 4; ++i) {
    const double x = x0 + (x1 - x0) * i / 4.0;
    const double y = y0 + (y1 - y0) * i / 4.0;
    out << "<text x=\"" << coord(px(x)) << "\" y=\"" << H - B + 16 << "\" text-anchor=\"middle\">"
        << "1e" << coord(x) << "</text>\n";
    out << "<text x=\"" << L - 6 << "\" y=\"" << coord(py(y) + 4) << "\" text-anchor=\"end\">"
        << "1e" << coord(y) << "</text>\n";
  }
  out << "<text x=\"" << (L + W - R) / 2 << "\" y=\"" << H - 12
      << "\" text-anchor=\"middle\">1 - rho</text>\n";
  polyline(err, "stroke=\"#1f77b4\" stroke-width=\"2\"");
  polyline(env, "stroke=\"#d62728\" stroke-dasharray=\"6,4\"");
  for (const auto& [x, y] : err) {
    out << "<circle cx=\"" << coord(px(x)) << "\" cy=\"" << coord(py(y))
        << "\" r=\"3\" fill=\"#1f77b4\"/>\n";
  }
  out << "<text x=\"" << W - R - 150 << "\" y=\"" << T + 14 << "\" fill=\"#1f77b4\">error</text>\n";
  out << "<text x=\"" << W - R - 150 << "\" y=\"" << T + 30
      << "\" fill=\"#d62728\">envelope (rescaled)</text>\n";
  out << "</svg>\n";
}

}  // namespace tapmeans
