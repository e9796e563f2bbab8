#include <cmath>
#include <fstream>
#include <limits>

#include <nlohmann/json.hpp>

#include "tapmeans/errors.hpp"
#include "tapmeans/experiments.hpp"

namespace tapmeans {
namespace {

using nlohmann::json;

double as_number(const json& j, const char* key) {
  if (!j.is_number()) throw ConfigError(std::string("'") + key + "' must be a number");
  return j.get<double>();
}

int as_int(const json& j, const char* key) {
  if (!j.is_number_integer()) throw ConfigError(std::string("'") + key + "' must be an integer");
  const auto v = j.get<std::int64_t>();
  if (v < std::numeric_limits<int>::min() || v > std::numeric_limits<int>::max()) {
    throw ConfigError(std::string("'") + key + "' is out of range");
  }
  return static_cast<int>(v);
}

std::vector<double> as_number_list(const json& j, const char* key) {
  if (!j.is_array()) throw ConfigError(std::string("'") + key + "' must be a list of numbers");
  std::vector<double> out;
  for (const auto& v : j) out.push_back(as_number(v, key));
  return out;
}

double parse_p(const json& j) {
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    if (s == "inf" || s == "infinity" || s == "Infinity") return kInfinity;
    throw ConfigError("'p' must be a number >= 1 or \"inf\"");
  }
  return as_number(j, "p");
}

std::vector<double> parse_rho_grid(const json& j, const char* key) {
  if (j.is_array()) return as_number_list(j, key);
  if (!j.is_object()) throw ConfigError(std::string("'") + key + "' must be a list or an object");
  for (const auto& [k, v] : j.items()) {
    if (k != "start" && k != "stop" && k != "count" && k != "spacing") {
      throw ConfigError(std::string("unknown key '") + k + "' in " + key);
    }
  }
  if (!j.contains("start") || !j.contains("stop") || !j.contains("count")) {
    throw ConfigError(std::string("'") + key + "' needs start, stop and count");
  }
  if (j.contains("spacing") && j.at("spacing") != "geometric") {
    throw ConfigError(std::string("'") + key + "': only geometric spacing in 1-rho is supported");
  }
  return geometric_rho_grid(as_number(j.at("start"), "start"), as_number(j.at("stop"), "stop"),
                            as_int(j.at("count"), "count"));
}

}  // namespace

ModulusFunction parse_modulus(const json& j) {
  if (!j.is_object() || !j.contains("kind") || !j.at("kind").is_string()) {
    throw ConfigError("'omega' must be an object with a string 'kind'");
  }
  const auto kind = j.at("kind").get<std::string>();
  auto allow = [&](std::initializer_list<const char*> keys) {
    for (const auto& [k, v] : j.items()) {
      bool known = k == "kind";
      for (const char* a : keys) known = known || k == a;
      if (!known) throw ConfigError("unknown key '" + k + "' in omega");
    }
  };
  try {
    if (kind == "power") {
      allow({"alpha"});
      return ModulusFunction::power(as_number(j.at("alpha"), "alpha"));
    }
    if (kind == "powerlog") {
      allow({"alpha", "beta"});
      return ModulusFunction::power_log(as_number(j.at("alpha"), "alpha"),
                                        as_number(j.at("beta"), "beta"));
    }
    if (kind == "table") {
      allow({"t", "w"});
      return ModulusFunction::table(as_number_list(j.at("t"), "t"), as_number_list(j.at("w"), "w"));
    }
  } catch (const json::out_of_range& e) {
    throw ConfigError(std::string("omega: missing field (") + e.what() + ")");
  } catch (const InvalidParameter& e) {
    throw ConfigError(std::string("omega: ") + e.what());
  }
  throw ConfigError("unknown omega kind '" + kind + "'");
}

json modulus_to_json(const ModulusFunction& w) {
  switch (w.kind()) {
    case ModulusKind::power:
      return {{"kind", "power"}, {"alpha", w.alpha()}};
    case ModulusKind::power_log:
      return {{"kind", "powerlog"}, {"alpha", w.alpha()}, {"beta", w.beta()}};
    case ModulusKind::table:
      return {{"kind", "table"}, {"t", w.table_t()}, {"w", w.table_w()}};
  }
  return {};
}

ExperimentConfig parse_config(const json& j) {
  if (!j.is_object()) throw ConfigError("config must be a JSON object");
  ExperimentConfig c;
  for (const auto& [key, v] : j.items()) {
    if (key == "function") {
      if (!v.is_string()) throw ConfigError("'function' must be a catalog name string");
      c.function = v.get<std::string>();
    } else if (key == "p") {
      c.p = parse_p(v);
    } else if (key == "r") {
      c.r = as_int(v, "r");
    } else if (key == "n") {
      c.n = as_int(v, "n");
    } else if (key == "omega") {
      c.omega = parse_modulus(v);
    } else if (key == "rho_grid") {
      c.rho_grid = parse_rho_grid(v, "rho_grid");
    } else if (key == "identity_rho_grid") {
      c.identity_rho_grid = parse_rho_grid(v, "identity_rho_grid");
    } else if (key == "grid_points") {
      const int g = as_int(v, "grid_points");
      if (g < 0) throw ConfigError("'grid_points' must be nonnegative");
      c.grid_points = static_cast<std::size_t>(g);
    } else if (key == "output") {
      if (!v.is_string()) throw ConfigError("'output' must be a path string");
      c.output = v.get<std::string>();
    } else if (key == "seed") {
      if (!v.is_number_unsigned()) throw ConfigError("'seed' must be a nonnegative integer");
      c.seed = v.get<std::uint64_t>();
    } else if (key == "band") {
      c.band = as_number(v, "band");
    } else if (key == "exponent_tolerance") {
      c.exponent_tolerance = as_number(v, "exponent_tolerance");
    } else if (key == "deltas") {
      c.deltas = as_number_list(v, "deltas");
    } else if (key == "jobs") {
      c.jobs = as_int(v, "jobs");
    } else {
      throw ConfigError("unknown config key '" + key + "'");
    }
  }
  try {
    c.validate();
  } catch (const InvalidParameter& e) {
    throw ConfigError(e.what());
  }
  return c;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file " + path);
  json j;
  try {
    in >> j;
  } catch (const json::parse_error& e) {
    throw ConfigError("config " + path + " is not valid JSON: " + e.what());
  }
  return parse_config(j);
}

}  // namespace tapmeans
