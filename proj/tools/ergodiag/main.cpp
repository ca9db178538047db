#include <iostream>

#include <CLI11.hpp>

#include "commands.hpp"

using namespace ergodiag::cli;

int main(int argc, char** argv) {
  CLI::App app{"Mean-ergodicity diagnostics for non-stationary processes", "ergodiag"};
  app.require_subcommand(1);

  SimulateArgs sim;
  auto* simulate = app.add_subcommand("simulate", "Sample replicate paths to CSV (t,replicate,x)");
  simulate->add_option("--config", sim.config, "JSON config with a process section")->required();
  simulate->add_option("--out", sim.out, "Output CSV path")->required();
  simulate->add_option("--seed", sim.seed, "Base seed")->required();
  simulate->add_option("--n", sim.n, "Path length")->required();
  simulate->add_option("--replicates", sim.replicates, "Number of replicate paths")->capture_default_str();

  AnalyzeArgs an;
  auto* analyze = app.add_subcommand("analyze", "Autocovariance, correlation time and ESS of one series");
  analyze->add_option("--input", an.input, "CSV with header x, t,x or t,replicate,x")->required();
  analyze->add_option("--config", an.config, "JSON config with an analyze section");
  analyze->add_option("--max-lag", an.max_lag, "Largest lag (default 100, clamped to n-1)");
  analyze->add_option("--window-c", an.window_c, "Window constant (default 6)");
  analyze->add_option("--target-mean", an.target_mean, "Report |mean - target|");
  analyze->add_option("--replicate", an.replicate, "Replicate to analyze in a t,replicate,x file");

  ExperimentArgs ex;
  auto* experiment = app.add_subcommand("experiment", "Run the convergence checks and write report.json, curves.csv");
  experiment->add_option("--config", ex.config, "JSON config with process and experiment sections")->required();
  experiment->add_option("--out-dir", ex.out_dir, "Output directory")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitInvalid;
  }

  try {
    if (simulate->parsed()) return cmd_simulate(sim, std::cerr);
    if (analyze->parsed()) return cmd_analyze(an, std::cout, std::cerr);
    ergodiag::RunOptions options;
    options.threads = threads_from_env();
    return cmd_experiment(ex, options, std::cout, std::cerr);
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInvalid;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitIo;
  }
}
