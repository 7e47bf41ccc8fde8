#pragma once

#include "freedim/cutoff.hpp"
#include "freedim/tolerances.hpp"

#include <json.hpp>

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace freedim {

inline constexpr std::string_view kToolVersion = "0.1.0";
inline constexpr int kReportSchema = 1;

enum class Scenario { Delta, DualSystem, Cutoff, GroupFinite, GroupFree, Counterexample };
enum class ReportFormat { Json, Csv, Text };

std::string_view scenario_name(Scenario scenario);
/// Throws ConfigError for an unknown name.
Scenario parse_scenario(std::string_view name);
/// Throws UnsupportedFormat.
ReportFormat parse_format(std::string_view name);

/// A validated run description. Keys not used by the scenario are rejected.
struct ScenarioConfig {
  Scenario scenario = Scenario::Delta;
  nlohmann::json body;
  std::uint64_t seed = 1;
  Tolerances tolerances;
  /// Directory that relative file references in the config resolve against.
  std::filesystem::path base_dir;
  /// FNV-1a of the canonical (sorted-key) dump of the config, as hex.
  std::string hash;

  /// `expected` comes from the command line; a "scenario" key in the file
  /// must agree with it. Throws ConfigError.
  static ScenarioConfig parse(const nlohmann::json& config, std::optional<Scenario> expected = {},
                              std::optional<std::uint64_t> seed_override = {});
  static ScenarioConfig from_file(const std::filesystem::path& path, std::optional<Scenario> expected = {},
                                  std::optional<std::uint64_t> seed_override = {});
};

struct RunReport {
  Scenario scenario = Scenario::Delta;
  std::uint64_t seed = 0;
  std::string config_hash;
  /// Scenario results, merged into the top level of the JSON report.
  nlohmann::json results = nlohmann::json::object();
  /// Which values are pinned by theory and which are computed.
  std::vector<std::string> provenance;
  std::optional<std::vector<SweepPoint>> sweep;
  std::string summary;
  double wall_time_seconds = 0.0;  // text output only, so JSON stays byte-identical
};

/// Dispatches to the owning module. Module failures propagate as freedim::Error.
RunReport run_scenario(const ScenarioConfig& config);

/// JSON (sorted keys, "schema": 1), CSV (sweeps only) or a text summary.
/// Throws UnsupportedFormat.
std::string emit_report(const RunReport& report, ReportFormat format);

/// Writes through a temporary file in the same directory and renames it, so
/// a failed run never leaves a partial report behind.
void write_file_atomic(const std::filesystem::path& path, std::string_view bytes);

}  // namespace freedim
