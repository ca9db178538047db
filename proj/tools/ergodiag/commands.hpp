#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "config.hpp"

namespace ergodiag::cli {

struct SimulateArgs {
  std::filesystem::path config;
  std::filesystem::path out;
  std::uint64_t seed = 0;
  std::int64_t n = 0;
  std::int64_t replicates = 1;
};

struct AnalyzeArgs {
  std::filesystem::path input;
  std::optional<std::filesystem::path> config;
  std::optional<std::int64_t> max_lag;
  std::optional<double> window_c;
  std::optional<double> target_mean;
  std::optional<std::int64_t> replicate;  // pick one replicate from a t,replicate,x file
};

struct ExperimentArgs {
  std::filesystem::path config;
  std::filesystem::path out_dir;
};

int cmd_simulate(const SimulateArgs& args, std::ostream& err);
int cmd_analyze(const AnalyzeArgs& args, std::ostream& out, std::ostream& err);
int cmd_experiment(const ExperimentArgs& args, const RunOptions& options, std::ostream& out, std::ostream& err);

/// Worker count from ERGODIAG_THREADS; 0 (all cores) when unset.
/// Throws ConfigError on a malformed value.
unsigned threads_from_env();

/// Reads "x", "t,x" or "t,replicate,x" CSV. Throws IoError or ConfigError.
std::vector<double> read_series(const std::filesystem::path& path, std::optional<std::int64_t> replicate);

/// Writes through a sibling temporary file and renames it into place.
void write_atomically(const std::filesystem::path& path, const std::string& contents);

std::string format_double(double x);

}  // namespace ergodiag::cli
