#include "commands.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <map>
#include <ostream>
#include <sstream>
#include <system_error>

#include <unistd.h>

#include "ergodiag/bounds.hpp"
#include "ergodiag/error.hpp"
#include "ergodiag/estimators.hpp"

namespace ergodiag::cli {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

class AtomicFile {
 public:
  explicit AtomicFile(fs::path target)
      : target_(std::move(target)),
        temp_(target_.string() + ".tmp." + std::to_string(::getpid())),
        out_(temp_, std::ios::binary | std::ios::trunc) {
    if (!out_) throw IoError("cannot open " + temp_.string() + " for writing");
  }
  AtomicFile(const AtomicFile&) = delete;
  AtomicFile& operator=(const AtomicFile&) = delete;
  ~AtomicFile() {
    if (!committed_) {
      out_.close();
      std::error_code ec;
      fs::remove(temp_, ec);
    }
  }

  std::ostream& stream() { return out_; }

  void commit() {
    out_.flush();
    if (!out_) throw IoError("write failed for " + temp_.string());
    out_.close();
    std::error_code ec;
    fs::rename(temp_, target_, ec);
    if (ec) throw IoError("cannot move output into " + target_.string() + ": " + ec.message());
    committed_ = true;
  }

 private:
  fs::path target_;
  fs::path temp_;
  std::ofstream out_;
  bool committed_ = false;
};

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.back() == '\r' || s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  return s;
}

std::vector<std::string_view> split(std::string_view line) {
  std::vector<std::string_view> cells;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = line.find(',', start);
    cells.push_back(trim(line.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return cells;
}

template <class T>
bool parse_cell(std::string_view cell, T& value) {
  const char* end = cell.data() + cell.size();
  const auto [ptr, ec] = std::from_chars(cell.data(), end, value);
  return ec == std::errc() && ptr == end;
}

int report_error(std::ostream& err, int code, const std::string& message) {
  err << "error: " << message << '\n';
  return code;
}

}  // namespace

std::string format_double(double x) {
  char buf[32];
  const int len = std::snprintf(buf, sizeof buf, "%.17g", x);
  return std::string(buf, static_cast<std::size_t>(len));
}

void write_atomically(const fs::path& path, const std::string& contents) {
  AtomicFile file(path);
  file.stream() << contents;
  file.commit();
}

unsigned threads_from_env() {
  const char* raw = std::getenv("ERGODIAG_THREADS");
  if (raw == nullptr || *raw == '\0') return 0;
  unsigned value = 0;
  if (!parse_cell(trim(raw), value) || value == 0) {
    throw ConfigError(std::string("ERGODIAG_THREADS: must be a positive integer, got '") + raw + "'");
  }
  return value;
}

std::vector<double> read_series(const fs::path& path, std::optional<std::int64_t> replicate) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read " + path.string());

  enum class Layout { X, TX, TRX } layout = Layout::X;
  std::string line;
  std::size_t line_no = 0;
  bool pending_first = false;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string_view header = trim(line);
    if (header.empty()) continue;
    if (header == "x") layout = Layout::X;
    else if (header == "t,x") layout = Layout::TX;
    else if (header == "t,replicate,x") layout = Layout::TRX;
    else {
      double probe = 0.0;
      if (!parse_cell(header, probe)) {
        throw ConfigError("input: header must be one of x | t,x | t,replicate,x (line " + std::to_string(line_no) + ")");
      }
      pending_first = true;  // headerless single column
    }
    break;
  }
  if (replicate && layout != Layout::TRX) throw ConfigError("replicate: input has no replicate column");

  std::map<std::int64_t, std::vector<double>> by_replicate;
  std::map<std::int64_t, std::int64_t> last_t;
  auto take = [&](std::string_view text) {
    const auto cells = split(text);
    const std::size_t want = layout == Layout::X ? 1 : layout == Layout::TX ? 2 : 3;
    const std::string where = " (line " + std::to_string(line_no) + ")";
    if (cells.size() != want) throw ConfigError("input: expected " + std::to_string(want) + " columns" + where);
    double x = 0.0;
    if (!parse_cell(cells.back(), x) || !std::isfinite(x)) throw ConfigError("input: bad value in column x" + where);
    std::int64_t rep = 0;
    if (layout == Layout::TRX && !parse_cell(cells[1], rep)) throw ConfigError("input: bad replicate" + where);
    if (layout != Layout::X) {
      std::int64_t t = 0;
      if (!parse_cell(cells[0], t)) throw ConfigError("input: bad t" + where);
      auto [it, fresh] = last_t.try_emplace(rep, t);
      if (!fresh) {
        if (t <= it->second) throw ConfigError("input: t must increase within a replicate" + where);
        it->second = t;
      }
    }
    if (!replicate || rep == *replicate) by_replicate[rep].push_back(x);
  };
  if (pending_first) take(trim(line));
  while (std::getline(in, line)) {
    ++line_no;
    const std::string_view text = trim(line);
    if (!text.empty()) take(text);
  }
  if (in.bad()) throw IoError("read failed for " + path.string());

  if (by_replicate.size() > 1) {
    throw ConfigError("replicate: input holds " + std::to_string(by_replicate.size()) +
                      " replicates; choose one with --replicate");
  }
  if (by_replicate.empty()) return {};
  return std::move(by_replicate.begin()->second);
}

int cmd_simulate(const SimulateArgs& args, std::ostream& err) {
  ProcessConfig process = ProcessConfig::remark3();
  try {
    const CliConfig cfg = load_config(args.config);
    if (!cfg.process) throw ConfigError("process: required");
    process = *cfg.process;
    if (args.n < 1) throw ConfigError("n: must be >= 1");
    if (args.replicates < 1) throw ConfigError("replicates: must be >= 1");
  } catch (const ConfigError& e) {
    return report_error(err, kExitInvalid, e.what());
  } catch (const IoError& e) {
    return report_error(err, kExitIo, e.what());
  }

  try {
    AtomicFile file(args.out);
    std::ostream& out = file.stream();
    out << "t,replicate,x\n";
    std::vector<double> path(static_cast<std::size_t>(args.n));
    std::string row;
    for (std::int64_t r = 0; r < args.replicates; ++r) {
      fill_path(process, RngSeed{args.seed, static_cast<std::uint64_t>(r)}, path);
      const std::string prefix_tail = "," + std::to_string(r) + ",";
      for (std::int64_t t = 1; t <= args.n; ++t) {
        row = std::to_string(t);
        row += prefix_tail;
        row += format_double(path[static_cast<std::size_t>(t - 1)]);
        row += '\n';
        out << row;
      }
    }
    file.commit();
  } catch (const IoError& e) {
    return report_error(err, kExitIo, e.what());
  }
  return kExitOk;
}

int cmd_analyze(const AnalyzeArgs& args, std::ostream& out, std::ostream& err) {
  AnalyzeSettings settings;
  std::vector<double> xs;
  try {
    if (args.config) settings = load_config(*args.config).analyze;
    if (args.max_lag) settings.max_lag = *args.max_lag;
    if (args.window_c) settings.window_c = *args.window_c;
    if (args.target_mean) settings.target_mean = args.target_mean;
    if (settings.max_lag < 0) throw ConfigError("max_lag: must be >= 0");
    if (!(settings.window_c > 0.0)) throw ConfigError("window_c: must be > 0");
    xs = read_series(args.input, args.replicate);
  } catch (const ConfigError& e) {
    return report_error(err, kExitInvalid, e.what());
  } catch (const IoError& e) {
    return report_error(err, kExitIo, e.what());
  }

  const auto n = static_cast<std::int64_t>(xs.size());
  if (n < 10) return report_error(err, kExitInvalid, "insufficient data: need at least 10 observations, got " + std::to_string(n));

  const AutocovEstimate acov = sample_autocovariance(xs, std::min(settings.max_lag, n - 1));
  TauEstimate tau;
  try {
    tau = estimate_tau(acov, settings.window_c);
  } catch (const DegenerateError&) {
    return report_error(err, kExitInvalid, "degenerate series: sample variance is zero");
  }

  const double var_an = acov.gamma_hat[0] * tau.tau / static_cast<double>(n);
  json cheb = json::object();
  for (const auto& [key, eps] : {std::pair{"0.1", 0.1}, std::pair{"0.05", 0.05}, std::pair{"0.01", 0.01}}) {
    cheb[key] = chebyshev_bound(var_an, eps);
  }
  json doc = {{"n", n},
              {"mean", acov.mean_used},
              {"gamma_hat", acov.gamma_hat},
              {"tau_hat", tau.tau},
              {"tau_window", tau.window},
              {"window_saturated", tau.window_saturated},
              {"tau_floored", tau.floored},
              {"ess", effective_sample_size(n, tau.tau).value},
              {"var_an_estimate", var_an},
              {"chebyshev", cheb}};
  if (settings.target_mean) doc["gap"] = std::abs(acov.mean_used - *settings.target_mean);
  out << doc.dump(2) << '\n';
  return kExitOk;
}

int cmd_experiment(const ExperimentArgs& args, const RunOptions& options, std::ostream& out, std::ostream& err) {
  ExperimentConfig config{.process = ProcessConfig::remark3()};
  try {
    config = load_config(args.config).experiment();
  } catch (const ConfigError& e) {
    return report_error(err, kExitInvalid, e.what());
  } catch (const IoError& e) {
    return report_error(err, kExitIo, e.what());
  }

  ConvergenceReport report;
  try {
    report = run_experiment(config, options);
  } catch (const std::invalid_argument& e) {
    return report_error(err, kExitInvalid, e.what());
  } catch (const DegenerateError& e) {
    return report_error(err, kExitInvalid, e.what());
  }

  std::string curves = "n,exact_var_an,empirical_mse,mc_se,eps,empirical_tail,chebyshev_bound\n";
  for (const GridRecord& r : report.records) {
    for (const TailRecord& t : r.tails) {
      curves += std::to_string(r.n) + ',' + format_double(r.exact_var_an) + ',' + format_double(r.empirical_mse) +
                ',' + format_double(r.mc_standard_error) + ',' + format_double(t.eps) + ',' +
                format_double(t.empirical_tail) + ',' + format_double(t.chebyshev_bound) + '\n';
    }
  }

  try {
    std::error_code ec;
    fs::create_directories(args.out_dir, ec);
    if (ec) throw IoError("cannot create " + args.out_dir.string() + ": " + ec.message());
    write_atomically(args.out_dir / "report.json", to_json(report, config).dump(2) + "\n");
    write_atomically(args.out_dir / "curves.csv", curves);
  } catch (const IoError& e) {
    return report_error(err, kExitIo, e.what());
  }

  for (const auto& [check, result] : report.verdicts) {
    out << to_string(check) << ' ' << to_string(result.verdict) << ": " << result.message << '\n';
  }
  return report.all_passed_or_skipped() ? kExitOk : kExitCheckFailed;
}

}  // namespace ergodiag::cli
