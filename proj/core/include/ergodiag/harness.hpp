#pragma once

// Monte Carlo experiments that check the convergence statements numerically:
// Var(A_n) = V_n / n^2, L2 / in-probability convergence when V_n grows
// sub-quadratically, non-convergence under a common shock, the tail bounds,
// and the exact fourth-moment algebra of the REMARK3 family.
//
// Replicate r at grid point n draws from RngSeed{derive_seed(base_seed, n), r}.
// Per-replicate results land in indexed slots and are reduced in replicate
// order, so reports do not depend on the worker count.

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "ergodiag/model.hpp"
#include "ergodiag/processes.hpp"

namespace ergodiag {

enum class Check { Lemma1, Theorem1, Wlln, Nonconvergence, Bounds, AppendixC, Vector };
enum class Verdict { Pass, Fail, Skipped };

std::string_view to_string(Check c);
std::string_view to_string(Verdict v);
std::optional<Check> parse_check(std::string_view name);

struct CheckResult {
  Verdict verdict = Verdict::Skipped;
  std::string message;
  std::vector<std::pair<std::string, double>> metrics;

  bool passed() const { return verdict == Verdict::Pass; }
  /// Value of a named metric; throws std::out_of_range if absent.
  double metric(std::string_view name) const;
};

struct RunOptions {
  unsigned threads = 0;  // 0: hardware concurrency
};

inline constexpr double kDefaultZThreshold = 4.0;

struct ExperimentConfig {
  ProcessConfig process;
  std::vector<std::int64_t> n_grid{100, 1000, 10000};
  std::int64_t replicates = 10000;
  std::uint64_t base_seed = 0;
  std::vector<double> epsilons{0.1};
  std::vector<Check> checks{};  // empty: default_checks(process.family())
  double z_threshold = kDefaultZThreshold;

  /// Throws std::invalid_argument naming the offending field.
  void validate() const;
  std::vector<Check> effective_checks() const;
};

std::vector<Check> default_checks(Family family);

struct TailRecord {
  double eps = 0.0;
  double empirical_tail = 0.0;
  double tail_standard_error = 0.0;
  double chebyshev_bound = 0.0;
  /// Paley-Zygmund lower bound on P((A_n - m_n)^2 >= eps^2), when eps^2 <= V_n / n^2.
  std::optional<double> pz_lower;
};

struct GridRecord {
  std::int64_t n = 0;
  double mean_average = 0.0;
  double exact_var_an = 0.0;
  double empirical_mse = 0.0;
  double mc_standard_error = 0.0;
  std::vector<TailRecord> tails;
};

struct ConvergenceReport {
  std::string spec_label;
  std::vector<GridRecord> records;
  GrowthReport growth;
  std::map<Check, CheckResult> verdicts;

  bool all_passed_or_skipped() const;
};

/// Per-replicate time averages A_n^{(r)}, r = 0..replicates-1.
std::vector<double> replicate_averages(const ProcessConfig& process, std::int64_t n,
                                       std::int64_t replicates, std::uint64_t base_seed,
                                       const RunOptions& options = {});

/// Grid on which V_n is classified: the experiment grid plus eight
/// log-spaced points per decade, extended to span at least one decade.
std::vector<std::int64_t> growth_grid(std::span<const std::int64_t> n_grid);

ConvergenceReport run_experiment(const ExperimentConfig& config, const RunOptions& options = {});

/// PASS iff |empirical MSE - exact Var(A_n)| <= z * MC standard error.
/// Requires replicates >= 1000.
CheckResult verify_lemma1(const ExperimentConfig& config, std::int64_t n,
                          double z_threshold = kDefaultZThreshold, const RunOptions& options = {});

/// Same, with the exact side taken from `model` instead of the sampler's own
/// spec (negative controls).
CheckResult verify_lemma1(const ExperimentConfig& config, const ProcessSpec& model, std::int64_t n,
                          double z_threshold = kDefaultZThreshold, const RunOptions& options = {});

/// COMMON_SHOCK only (SKIPPED otherwise); requires eps^2 below the liminf of
/// V_n / n^2. PASS iff the MSE stays >= 0.9 * liminf across the grid and the
/// tail at the largest n is at least the Paley-Zygmund bound from exact
/// moments, within z binomial standard errors.
CheckResult verify_nonconvergence(const ExperimentConfig& config, double eps,
                                  const RunOptions& options = {});

struct AppendixCMonteCarlo {
  std::vector<std::int64_t> n_grid{100, 1000, 10000};
  std::int64_t replicates = 100000;
  std::uint64_t base_seed = 0;
  double eps = 0.1;
};

/// Exhaustive Var(A_n^2) for REMARK3 over the 3^n joint outcomes (n <= 8).
double remark3_enumerated_var_an2(std::int64_t n);

/// PASS iff (a) the closed form matches enumeration for n <= n_max_enum to
/// 1e-12, (b) Var(A_n^2) / (V_n^2 / n^4) increases up to n_max_formula and
/// exceeds 10 at n = 100, and (c) the REMARK3 tail at mc.eps decreases
/// across mc.n_grid (2 standard errors of slack) while Var(A_n) stays at 1/2.
CheckResult verify_appendix_c(std::int64_t n_max_enum, std::int64_t n_max_formula,
                              const AppendixCMonteCarlo& mc, const RunOptions& options = {});

/// d-dimensional process with independent coordinates: PASS iff the mean
/// squared Euclidean gap matches the sum of per-coordinate exact variances
/// within z MC standard errors.
CheckResult verify_vector(std::span<const ProcessConfig> coordinates, std::int64_t n,
                          std::int64_t replicates, std::uint64_t base_seed,
                          double z_threshold = kDefaultZThreshold, const RunOptions& options = {});

}  // namespace ergodiag
