#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "ergodiag/harness.hpp"
#include "ergodiag/processes.hpp"

namespace ergodiag::cli {

enum ExitCode : int {
  kExitOk = 0,
  kExitCheckFailed = 1,
  kExitInvalid = 2,
  kExitIo = 3,
};

/// Bad configuration content. what() starts with the dotted field path.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Unreadable input or unwritable output.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct AnalyzeSettings {
  std::int64_t max_lag = 100;
  double window_c = kDefaultWindowC;
  std::optional<double> target_mean;
};

/// Top-level document: {"process": ..., "experiment": ..., "analyze": ...}.
/// Every section is optional here; commands demand the ones they use.
struct CliConfig {
  std::optional<ProcessConfig> process;
  std::optional<nlohmann::json> experiment_json;
  AnalyzeSettings analyze;

  /// Requires "process" and "experiment"; validates all ranges.
  ExperimentConfig experiment() const;
};

CliConfig parse_config(const nlohmann::json& doc);
CliConfig load_config(const std::filesystem::path& path);

ProcessConfig parse_process(const nlohmann::json& j);

nlohmann::json to_json(const ProcessConfig& config);
nlohmann::json to_json(const ExperimentConfig& config);
nlohmann::json to_json(const GrowthReport& growth);
nlohmann::json to_json(const ConvergenceReport& report, const ExperimentConfig& config);

}  // namespace ergodiag::cli
