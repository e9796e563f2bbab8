#include <gtest/gtest.h>

#include <cmath>
#include <sstream>

#include <nlohmann/json.hpp>

#include "tapmeans/errors.hpp"
#include "tapmeans/experiments.hpp"
#include "tapmeans/report.hpp"

using namespace tapmeans;
using nlohmann::json;

namespace {

std::string csv(const Table& t) {
  std::ostringstream out;
  write_csv(out, t);
  return out.str();
}

}  // namespace

TEST(RhoGrid, GeometricInOneMinusRho) {
  const auto g = default_rho_grid();
  ASSERT_EQ(g.size(), 12u);
  EXPECT_NEAR(g.front(), 0.9, 1e-15);
  EXPECT_NEAR(g.back(), 0.999, 1e-15);
  const double q = (1 - g[1]) / (1 - g[0]);
  for (std::size_t i = 1; i < g.size(); ++i) EXPECT_NEAR((1 - g[i]) / (1 - g[i - 1]), q, 1e-12);
}

TEST(Config, ParsesFullSchema) {
  const auto c = parse_config(json::parse(R"({
    "function": "weierstrass:alpha=0.5,J=8", "p": "inf", "r": 2, "n": 1,
    "omega": {"kind": "power", "alpha": 0.5},
    "rho_grid": {"start": 0.9, "stop": 0.999, "count": 6, "spacing": "geometric"},
    "grid_points": 4096, "output": "out.csv", "seed": 3, "band": 10,
    "exponent_tolerance": 0.2, "jobs": 2})"));
  EXPECT_EQ(c.function, "weierstrass:alpha=0.5,J=8");
  EXPECT_TRUE(std::isinf(c.p));
  EXPECT_EQ(c.r, 2);
  ASSERT_TRUE(c.omega.has_value());
  EXPECT_EQ(c.omega->alpha(), 0.5);
  EXPECT_EQ(c.rho_grid.size(), 6u);
  EXPECT_EQ(c.grid_points, 4096u);
  EXPECT_EQ(c.seed, 3u);
  EXPECT_EQ(c.jobs, 2);
  const auto list = parse_config(json::parse(R"({"p": 2, "rho_grid": [0.5, 0.9]})"));
  EXPECT_EQ(list.p, 2.0);
  EXPECT_EQ(list.rho_grid, (std::vector<double>{0.5, 0.9}));
}

TEST(Config, RejectsInvalid) {
  const char* bad[] = {
      R"({"n": 3, "r": 2})",
      R"({"rho_grid": [0.5, 1.0]})",
      R"({"rho_grid": []})",
      R"({"p": 0.5})",
      R"({"p": "two"})",
      R"({"colour": 1})",
      R"({"omega": {"kind": "cubic"}})",
      R"({"omega": {"kind": "power"}})",
      R"({"grid_points": 2000000})",
      R"({"jobs": 0})",
      R"([1, 2])",
  };
  for (const char* text : bad) {
    EXPECT_THROW(parse_config(json::parse(text)).validate(), ConfigError) << text;
  }
  EXPECT_THROW(load_config("/nonexistent/config.json"), ConfigError);
}

TEST(Config, ModulusRoundTrip) {
  for (const char* text : {R"({"kind":"power","alpha":0.5})", R"({"kind":"powerlog","alpha":1,"beta":1})",
                           R"({"kind":"table","t":[0,0.5,1],"w":[0,0.3,1]})"}) {
    const auto w = parse_modulus(json::parse(text));
    const auto again = parse_modulus(modulus_to_json(w));
    for (double t : {0.0, 0.1, 0.7, 1.0}) EXPECT_EQ(w(t), again(t));
  }
}

TEST(Identities, GeometricDefaultPasses) {
  ExperimentConfig c;
  c.r = 3;
  const auto rep = run_identity_suite(c);
  EXPECT_EQ(rep.checks.size(), 6u);
  for (const auto& chk : rep.checks) {
    EXPECT_TRUE(chk.pass) << chk.name << " " << chk.measured;
    // The Lemma 3 entry is a ratio against its bound, not a deviation.
    if (chk.name != "Lemma 3 bound") EXPECT_LT(chk.measured, 1e-9) << chk.name;
  }
}

TEST(Identities, RandomEntryPasses) {
  ExperimentConfig c;
  c.function = "trigpoly:random,degree=10";
  c.r = 2;
  c.seed = 5;
  EXPECT_TRUE(run_identity_suite(c).pass());
}

TEST(Saturation, CosineIsExact) {
  ExperimentConfig c;
  c.function = "trigpoly:cos3";
  c.r = 3;
  const auto rep = run_saturation_experiment(c);
  for (const auto& row : rep.rows) {
    EXPECT_NEAR(row.error, std::pow(row.one_minus_rho, 3), 1e-12);
  }
  EXPECT_TRUE(rep.pass());
}

TEST(Saturation, GeometricAttainsOrder) {
  for (int r : {1, 2, 3}) {
    ExperimentConfig c;
    c.r = r;
    c.n = 1;
    const auto rep = run_saturation_experiment(c);
    ASSERT_FALSE(rep.fits.empty());
    EXPECT_NEAR(rep.fits.front().fit.exponent, r, 0.1);
    EXPECT_TRUE(rep.pass());
  }
}

TEST(Saturation, WeierstrassBelowOrder) {
  ExperimentConfig c;
  c.function = "weierstrass:alpha=0.5,J=10";
  c.r = 1;
  const auto rep = run_saturation_experiment(c);
  EXPECT_NEAR(rep.fits.front().fit.exponent, 0.5, 0.15);
}

TEST(Direct, TrivialCase) {
  ExperimentConfig c;
  c.function = "trigpoly:1,cos1";
  c.r = 2;
  c.omega = ModulusFunction::power(0.5);
  const auto rep = run_direct_experiment(c);
  EXPECT_TRUE(rep.trivial);
  EXPECT_TRUE(rep.pass());
  for (const auto& row : rep.rows) EXPECT_EQ(row.error, 0.0);
}

TEST(Direct, RowsSortedAndRatiosPositive) {
  ExperimentConfig c;
  c.function = "smoothed:m=1,base=weierstrass:alpha=0.5,J=10";
  c.r = 2;
  c.n = 1;
  c.p = 2.0;
  c.omega = ModulusFunction::power(0.5);
  const auto rep = run_direct_experiment(c);
  ASSERT_EQ(rep.rows.size(), 12u);
  for (std::size_t i = 1; i < rep.rows.size(); ++i) {
    EXPECT_GT(rep.rows[i - 1].one_minus_rho, rep.rows[i].one_minus_rho);
  }
  for (const auto& row : rep.rows) EXPECT_GT(row.ratio, 0.0);
  EXPECT_NEAR(rep.fits.front().fit.exponent, 1.5, 0.15);
  EXPECT_TRUE(rep.pass());
}

TEST(Direct, RefusesWithoutZ) {
  ExperimentConfig c;
  c.omega = ModulusFunction::power_log(0.0, -1.0);
  EXPECT_THROW(run_direct_experiment(c), ExperimentRefused);
  c.omega.reset();
  EXPECT_THROW(run_direct_experiment(c), ConfigError);
}

TEST(Inverse, RefusesWithoutZn) {
  ExperimentConfig c;
  c.r = 1;
  c.n = 1;
  c.omega = ModulusFunction::power(1.0);
  try {
    run_inverse_experiment(c);
    FAIL() << "expected refusal";
  } catch (const ExperimentRefused& e) {
    EXPECT_NE(std::string(e.what()).find("(Z_n) fails"), std::string::npos);
  }
}

TEST(Inverse, CosineBounded) {
  ExperimentConfig c;
  c.function = "trigpoly:cos2";
  c.r = 2;
  c.n = 1;
  c.p = 2.0;
  c.omega = ModulusFunction::power(0.5);
  const auto rep = run_inverse_experiment(c);
  EXPECT_TRUE(rep.pass());
  EXPECT_FALSE(rep.notes.empty());
}

TEST(Compare, GeometricBothFits) {
  ExperimentConfig c;
  c.r = 2;
  c.p = 2.0;
  const auto rep = run_comparison_experiment(c);
  ASSERT_EQ(rep.fits.size(), 2u);
  EXPECT_NEAR(rep.fits[0].fit.exponent, 2.0, 0.15);
  EXPECT_NEAR(rep.fits[1].fit.exponent, 2.0, 0.15);
  EXPECT_TRUE(rep.pass());
}

TEST(Kfun, SingleModeBracket) {
  ExperimentConfig c;
  c.function = "trigpoly:exp4";
  c.n = 1;
  c.p = 2.0;
  c.deltas = {0.25, 0.1, 0.05};
  const auto rep = run_kfun_experiment(c);
  ASSERT_EQ(rep.rows.size(), 3u);
  for (const auto& row : rep.rows) {
    const double exact = std::min(1.0, 4 * row.delta);
    EXPECT_LE(row.lower, exact);
    EXPECT_NEAR(row.upper, exact, 0.05 * exact);
  }
  EXPECT_TRUE(rep.pass());
}

TEST(ModuliCheck, PowerHalf) {
  ExperimentConfig c;
  c.omega = ModulusFunction::power(0.5);
  c.n = 1;
  c.r = 1;
  const auto rep = run_moduli_check(c);
  EXPECT_EQ(rep.conditions.size(), 4u);
  EXPECT_TRUE(rep.pass());
  c.omega = ModulusFunction::power(1.0);
  EXPECT_FALSE(run_moduli_check(c).pass());
}

TEST(Determinism, CsvAndJsonStable) {
  ExperimentConfig c;
  c.function = "trigpoly:random,degree=10";
  c.seed = 42;
  c.r = 2;
  c.p = 2.0;
  c.jobs = 3;
  const auto a = run_saturation_experiment(c);
  c.jobs = 1;
  const auto b = run_saturation_experiment(c);
  EXPECT_EQ(csv(to_table(a)), csv(to_table(b)));
  EXPECT_EQ(to_json(a).dump(), to_json(b).dump());
}

TEST(Report, CsvHeaderAndQuoting) {
  Table t;
  t.columns = {"a", "b,c"};
  t.rows = {{"1", "x\"y"}};
  EXPECT_EQ(csv(t), "a,\"b,c\"\n1,\"x\"\"y\"\n");
  EXPECT_EQ(format_double(kInfinity), "inf");
  EXPECT_EQ(format_double(0.1), "0.10000000000000001");
}

TEST(Report, RateColumns) {
  ExperimentConfig c;
  c.r = 1;
  c.p = 2.0;
  const auto table = to_table(run_saturation_experiment(c));
  ASSERT_GE(table.columns.size(), 5u);
  EXPECT_EQ(table.columns[0], "rho");
  EXPECT_EQ(table.columns[1], "one_minus_rho");
  EXPECT_EQ(table.columns[2], "error");
  EXPECT_EQ(table.columns[3], "envelope");
  EXPECT_EQ(table.columns[4], "ratio");
}

TEST(Report, SeriesJsonRoundTrip) {
  const auto s = FourierSeries::sine(3, 2.0) + FourierSeries::constant(0.5);
  EXPECT_EQ(max_coefficient_difference(series_from_json(to_json(s)), s), 0.0);
  EXPECT_THROW(series_from_json(json::parse(R"({"degree":1,"re":[1],"im":[0]})")), ConfigError);
}

TEST(Report, SvgPlot) {
  ExperimentConfig c;
  c.r = 1;
  const auto rep = run_saturation_experiment(c);
  std::ostringstream out;
  write_svg_plot(out, rep);
  EXPECT_EQ(out.str().rfind("<svg", 0), 0u);
  EXPECT_NE(out.str().find("</svg>"), std::string::npos);
}
