// freedim: run one scenario from a JSON config and print or write its report.
//
// Exit codes: 0 success, 1 computation error, 2 configuration error.

#include "freedim/errors.hpp"
#include "freedim/runner.hpp"

#include <CLI11.hpp>

#include <cstdint>
#include <iostream>
#include <optional>
#include <string>

int main(int argc, char** argv) {
  CLI::App app{"Free entropy dimension workbench"};
  std::string scenario, config_path, format = "json", output;
  std::optional<std::uint64_t> seed;
  bool verbose = false;
  app.add_option("scenario", scenario, "delta | dual_system | cutoff | group_finite | group_free | counterexample")
      ->required();
  app.add_option("--config", config_path, "JSON scenario config")->required();
  app.add_option("--format", format, "json | csv | text");
  app.add_option("--seed", seed, "Overrides the seed in the config");
  app.add_option("--output,-o", output, "Write the report here instead of stdout");
  app.add_flag("--verbose,-v", verbose, "Timing and tolerance details on stderr");
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    const freedim::ReportFormat fmt = freedim::parse_format(format);
    const auto config = freedim::ScenarioConfig::from_file(config_path, freedim::parse_scenario(scenario), seed);
    if (verbose)
      std::cerr << "scenario " << freedim::scenario_name(config.scenario) << ", seed " << config.seed
                << ", operator_residual " << config.tolerances.operator_residual << "\n";
    const freedim::RunReport report = freedim::run_scenario(config);
    const std::string bytes = freedim::emit_report(report, fmt);
    if (output.empty())
      std::cout << bytes;
    else
      freedim::write_file_atomic(output, bytes);
    if (verbose) std::cerr << "wall time " << report.wall_time_seconds << " s\n";
    return 0;
  } catch (const freedim::ConfigError& e) {
    std::cerr << e.what() << "\n";
    return 2;
  } catch (const freedim::UnsupportedFormat& e) {
    std::cerr << e.what() << "\n";
    return 2;
  } catch (const freedim::Error& e) {
    std::cerr << "ComputationError: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "ComputationError: " << e.what() << "\n";
    return 1;
  }
}
