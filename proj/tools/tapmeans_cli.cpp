// tapmeans: run identity suites and rate experiments from a JSON config.
//
// Exit codes: 0 all verdicts pass, 1 a verdict fails, 2 invalid config or a
// refused experiment.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "tapmeans/errors.hpp"
#include "tapmeans/experiments.hpp"
#include "tapmeans/report.hpp"

namespace {

using namespace tapmeans;

struct Options {
  std::string config;
  std::string out;
  std::string format = "csv";
  std::string plot;
  std::optional<std::uint64_t> seed;
  std::optional<int> jobs;
};

void emit(const Options& opts, const ExperimentConfig& config, const Table& table,
          const nlohmann::json& json) {
  std::ostringstream body;
  if (opts.format == "json") {
    body << json.dump(2) << '\n';
  } else {
    write_csv(body, table);
  }
  const std::string path = !opts.out.empty() ? opts.out : config.output;
  if (path.empty() || path == "-") {
    std::cout << body.str();
    return;
  }
  std::ofstream file(path, std::ios::binary);
  if (!file) throw ConfigError("cannot write " + path);
  file << body.str();
}

void print_checks(const std::string& title, const std::vector<Check>& checks) {
  for (const auto& c : checks) {
    std::cerr << title << (c.pass ? "PASS " : "FAIL ") << c.name << ": " << format_double(c.measured)
              << " (limit " << format_double(c.limit) << ")";
    if (!c.detail.empty()) std::cerr << " " << c.detail;
    std::cerr << '\n';
  }
}

int finish_rate(const Options& opts, const ExperimentConfig& config, const RateReport& report) {
  emit(opts, config, to_table(report), to_json(report));
  if (!opts.plot.empty()) {
    std::ofstream svg(opts.plot, std::ios::binary);
    if (!svg) throw ConfigError("cannot write " + opts.plot);
    write_svg_plot(svg, report);
  }
  print_checks("[identities] ", report.identities.checks);
  for (const auto& f : report.fits) {
    std::cerr << "[fit] " << f.name << ": exponent " << format_double(f.fit.exponent)
              << ", residual " << format_double(f.fit.residual) << '\n';
  }
  print_checks("[verdict] ", report.verdicts);
  for (const auto& note : report.notes) std::cerr << "[note] " << note << '\n';
  return report.pass() ? 0 : 1;
}

int run(const std::string& command, const Options& opts) {
  if (opts.format != "csv" && opts.format != "json") {
    throw ConfigError("--format must be csv or json");
  }
  ExperimentConfig config = opts.config.empty() ? ExperimentConfig{} : load_config(opts.config);
  if (opts.seed) config.seed = *opts.seed;
  if (opts.jobs) config.jobs = *opts.jobs;
  config.validate();

  if (command == "identities") {
    const auto report = run_identity_suite(config);
    emit(opts, config, to_table(report), to_json(report));
    print_checks("[identities] ", report.checks);
    return report.pass() ? 0 : 1;
  }
  if (command == "direct") return finish_rate(opts, config, run_direct_experiment(config));
  if (command == "inverse") return finish_rate(opts, config, run_inverse_experiment(config));
  if (command == "saturation") return finish_rate(opts, config, run_saturation_experiment(config));
  if (command == "compare") return finish_rate(opts, config, run_comparison_experiment(config));
  if (command == "kfun") {
    const auto report = run_kfun_experiment(config);
    emit(opts, config, to_table(report), to_json(report));
    print_checks("[verdict] ", report.verdicts);
    return report.pass() ? 0 : 1;
  }
  if (command == "moduli-check") {
    const auto report = run_moduli_check(config);
    emit(opts, config, to_table(report), to_json(report));
    for (const auto& c : report.conditions) {
      std::cerr << "[condition] " << (c.holds ? "HOLDS " : "FAILS ") << c.condition
                << " sup " << format_double(c.sup_ratio) << ", limit "
                << format_double(c.limit_ratio);
      if (!c.note.empty()) std::cerr << " " << c.note;
      std::cerr << '\n';
    }
    return report.pass() ? 0 : 1;
  }
  throw ConfigError("unknown subcommand " + command);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Taylor-Abel-Poisson means: identity suites and rate experiments"};
  app.require_subcommand(1);
  Options opts;

  const std::pair<const char*, const char*> commands[] = {
      {"identities", "Run the identity suite on the configured function"},
      {"direct", "Approximation error against the predicted envelope"},
      {"inverse", "Numerical consequences of a measured approximation rate"},
      {"saturation", "Fitted exponent against the saturation order"},
      {"compare", "Leis and Butzer-Sunouchi transforms against the Poisson mean"},
      {"kfun", "Two-sided K-functional estimates"},
      {"moduli-check", "Zygmund-type conditions and doubling for the modulus"},
  };
  for (const auto& [name, help] : commands) {
    auto* sub = app.add_subcommand(name, help);
    sub->add_option("--config", opts.config, "Experiment config (JSON)")->check(CLI::ExistingFile);
    sub->add_option("--out", opts.out, "Output path (default: config 'output', else stdout)");
    sub->add_option("--format", opts.format, "Output format")->check(CLI::IsMember({"csv", "json"}));
    sub->add_option("--plot", opts.plot, "Write a log-log SVG plot (rate runs)");
    sub->add_option("--seed", opts.seed, "Seed for randomized catalog entries");
    sub->add_option("--jobs", opts.jobs, "Worker threads for per-rho evaluation")
        ->check(CLI::PositiveNumber);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  const std::string command = app.get_subcommands().front()->get_name();
  try {
    return run(command, opts);
  } catch (const ExperimentRefused& e) {
    std::cerr << "refused: " << e.what() << '\n';
    return 2;
  } catch (const ConfigError& e) {
    std::cerr << "invalid config: " << e.what() << '\n';
    return 2;
  } catch (const InvalidParameter& e) {
    std::cerr << "invalid parameter: " << e.what() << '\n';
    return 2;
  } catch (const PreconditionViolation& e) {
    std::cerr << "precondition violated: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
