#pragma once

// Serialization of experiment reports. Numbers are written with 17
// significant digits so repeated runs give byte-identical files.

#include <ostream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "tapmeans/experiments.hpp"
#include "tapmeans/fourier.hpp"

namespace tapmeans {

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;
};

/// %.17g, with "inf", "-inf" and "nan" spelled out.
std::string format_double(double x);

/// Rate runs: rho, one_minus_rho, error, envelope, ratio, then extra columns.
Table to_table(const RateReport& report);
Table to_table(const IdentityReport& report);
Table to_table(const KfunReport& report);
Table to_table(const ModuliReport& report);

void write_csv(std::ostream& out, const Table& table);

nlohmann::json to_json(const FourierSeries& series);
FourierSeries series_from_json(const nlohmann::json& j);
nlohmann::json to_json(const ConditionReport& report);
nlohmann::json to_json(const IdentityReport& report);
nlohmann::json to_json(const RateReport& report);
nlohmann::json to_json(const KfunReport& report);
nlohmann::json to_json(const ModuliReport& report);

/// Log-log plot of error against 1 - rho with the envelope rescaled to the
/// geometric mean of the ratios.
void write_svg_plot(std::ostream& out, const RateReport& report);

}  // namespace tapmeans
