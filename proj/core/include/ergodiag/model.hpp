#pragma once

// Model-side quantities for a (possibly non-stationary) process given by its
// mean function and covariance kernel: the average of the means m_n, the
// covariance sum V_n, Var(A_n) = V_n / n^2, the integrated autocorrelation
// time of a stationary kernel, and a numerical growth classification of V_n.

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace ergodiag {

/// Autocovariance function of a weakly stationary process, indexed by lag.
/// Lags beyond `max_meaningful_lag` (when set) are treated as zero.
struct StationaryCov {
  std::function<double(std::int64_t)> gamma;
  std::optional<std::int64_t> max_meaningful_lag;

  double operator()(std::int64_t lag) const;
};

/// Exact description of a process: t -> mu_t and (t, s) -> Cov(X_t, X_s),
/// with time indices starting at 1. Immutable once built.
class ProcessSpec {
 public:
  using MeanFn = std::function<double(std::int64_t)>;
  using CovFn = std::function<double(std::int64_t, std::int64_t)>;

  /// General kernel. `diagonal` promises Cov(X_t, X_s) = 0 for t != s and
  /// lets V_n be summed along the diagonal only.
  ProcessSpec(std::string label, MeanFn mean, CovFn cov, bool diagonal = false);

  /// Weakly stationary kernel: Cov(X_t, X_s) = gamma(|t - s|).
  ProcessSpec(std::string label, MeanFn mean, StationaryCov stationary);

  double mean(std::int64_t t) const { return mean_(t); }
  double cov(std::int64_t t, std::int64_t s) const { return cov_(t, s); }
  const std::optional<StationaryCov>& stationary() const { return stationary_; }
  bool is_diagonal() const { return diagonal_; }
  const std::string& label() const { return label_; }

 private:
  std::string label_;
  MeanFn mean_;
  CovFn cov_;
  std::optional<StationaryCov> stationary_;
  bool diagonal_ = false;
};

/// m_n = (1/n) * sum_{t=1..n} mu_t, summed in ascending t.
double mean_average(const ProcessSpec& spec, std::int64_t n);

/// V_n = sum_{t,s=1..n} Cov(X_t, X_s). Uses the lag decomposition for
/// stationary specs and the diagonal for diagonal specs, the full double
/// sum otherwise.
double exact_vn(const ProcessSpec& spec, std::int64_t n);

/// The full O(n^2) double sum, rows in ascending t, each row summed pairwise.
double exact_vn_double_sum(const ProcessSpec& spec, std::int64_t n);

/// n*gamma(0) + 2*sum_{h=1..n-1} (n-h)*gamma(h). Requires a stationary spec.
double exact_vn_lag(const ProcessSpec& spec, std::int64_t n);

/// Var(A_n) = exact_vn(spec, n) / n^2.
double exact_var_an(const ProcessSpec& spec, std::int64_t n);

/// Integrated autocorrelation time (two-sided, normalized by gamma(0)), or
/// the marker that the autocovariances are not summable.
struct CorrelationTime {
  double tau = 0.0;
  bool summable = false;

  static CorrelationTime finite(double tau) { return {tau, true}; }
  static CorrelationTime non_summable() { return {0.0, false}; }
};

/// Width of the run of consecutive negligible terms that ends the tail sum.
inline constexpr int kCorrelationTailWindow = 10;

/// tau = (gamma(0) + 2*sum_{h=1..H} gamma(h)) / gamma(0), where H is the first
/// lag closing a run of kCorrelationTailWindow terms with |2 gamma(h)| <
/// abs_tol. Non-summable if no such H <= max_terms. Throws DegenerateError
/// when gamma(0) <= 0.
CorrelationTime correlation_time(const StationaryCov& cov, double abs_tol = 1e-10,
                                 std::int64_t max_terms = 10'000'000);

struct EffectiveSampleSize {
  double value = 0.0;
  bool non_summable = false;
};

/// n / tau; zero and flagged when tau is non-summable.
EffectiveSampleSize effective_sample_size(std::int64_t n, CorrelationTime tau);
EffectiveSampleSize effective_sample_size(std::int64_t n, double tau);

enum class GrowthClass { Subquadratic, Quadratic, Indeterminate };

std::string_view to_string(GrowthClass c);

struct GrowthReport {
  std::vector<std::int64_t> n_grid;
  std::vector<double> vn_values;
  std::vector<double> vn_over_n2;
  double fitted_slope = 0.0;    // log V_n on log n, top decade of the grid
  double liminf_estimate = 0.0; // min of V_n / n^2 over the top decade
  GrowthClass classification = GrowthClass::Indeterminate;
};

inline constexpr double kQuadraticSlopeThreshold = 1.9;

/// Classifies the growth of V_n from its values on an increasing grid that
/// spans at least one decade. Only points with n >= max(n_grid)/10 enter the
/// fit; the raw slope and liminf are reported so callers can re-threshold.
GrowthReport classify_growth(std::span<const std::int64_t> n_grid,
                             std::span<const double> vn_values);

/// exact_vn on each grid point followed by classify_growth.
GrowthReport growth_report(const ProcessSpec& spec, std::span<const std::int64_t> n_grid);

}  // namespace ergodiag
