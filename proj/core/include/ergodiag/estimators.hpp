#pragma once

// Data-side quantities computed from observed sample paths and from
// ensembles of independent replicates.

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace ergodiag {

struct PathOrigin {
  std::string spec_label;
  std::uint64_t seed = 0;
  std::uint64_t replicate = 0;
};

/// One observed trajectory X_1..X_n. Values must be finite; n >= 1.
class Path {
 public:
  explicit Path(std::vector<double> values, std::optional<PathOrigin> origin = std::nullopt);

  std::span<const double> values() const { return values_; }
  std::size_t size() const { return values_.size(); }
  const std::optional<PathOrigin>& origin() const { return origin_; }

 private:
  std::vector<double> values_;
  std::optional<PathOrigin> origin_;
};

/// R independent replicates of equal length; replicate r is paths()[r].
class Ensemble {
 public:
  Ensemble(std::vector<Path> paths, std::string spec_label, std::uint64_t base_seed);

  const std::vector<Path>& paths() const { return paths_; }
  std::size_t replicates() const { return paths_.size(); }
  std::size_t length() const { return paths_.empty() ? 0 : paths_.front().size(); }
  const std::string& spec_label() const { return spec_label_; }
  std::uint64_t base_seed() const { return base_seed_; }

  /// Time average of every replicate, in replicate order.
  std::vector<double> time_averages() const;

 private:
  std::vector<Path> paths_;
  std::string spec_label_;
  std::uint64_t base_seed_ = 0;
};

struct AutocovEstimate {
  std::vector<double> gamma_hat;  // lags 0..M
  std::int64_t n = 0;
  double mean_used = 0.0;

  std::int64_t max_lag() const { return static_cast<std::int64_t>(gamma_hat.size()) - 1; }
};

struct TauEstimate {
  double tau = 1.0;
  std::int64_t window = 0;
  bool window_saturated = false;
  bool floored = false;
};

inline constexpr double kDefaultWindowC = 6.0;
inline constexpr double kTauFloor = 1e-3;

double time_average(std::span<const double> path);
inline double time_average(const Path& path) { return time_average(path.values()); }

/// Prefix means A_1, ..., A_n.
std::vector<double> running_averages(std::span<const double> path);
inline std::vector<double> running_averages(const Path& path) { return running_averages(path.values()); }

/// Biased autocovariance: gamma_hat(h) = (1/n) sum_{t=1..n-h} (x_t - xbar)(x_{t+h} - xbar),
/// with xbar the full-path mean. Requires 0 <= max_lag < n.
AutocovEstimate sample_autocovariance(std::span<const double> path, std::int64_t max_lag);
inline AutocovEstimate sample_autocovariance(const Path& path, std::int64_t max_lag) {
  return sample_autocovariance(path.values(), max_lag);
}

/// Self-consistent window estimate tau_hat(W) = 1 + 2 sum_{h=1..W} rho_hat(h),
/// W the smallest lag with W >= window_c * tau_hat(W) (else W = M, flagged).
/// Floored at kTauFloor. Throws DegenerateError if gamma_hat(0) <= 0.
TauEstimate estimate_tau(const AutocovEstimate& acov, double window_c = kDefaultWindowC);

/// (1/R) sum_r (A^{(r)} - m_n)^2 over per-replicate time averages.
double ensemble_mse(std::span<const double> averages, double m_n);
double ensemble_mse(const Ensemble& ensemble, double m_n);

/// Monte Carlo mean of the squared deviations with its standard error
/// sd((A - m)^2) / sqrt(R); the error is zero when R < 2.
struct MseEstimate {
  double mse = 0.0;
  double standard_error = 0.0;
};
MseEstimate ensemble_mse_with_error(std::span<const double> averages, double m_n);

/// Fraction of replicates with |A^{(r)} - m_n| >= eps.
double empirical_tail(std::span<const double> averages, double m_n, double eps);
double empirical_tail(const Ensemble& ensemble, double m_n, double eps);

/// sqrt(p (1 - p) / R).
double binomial_standard_error(double p, std::size_t replicates);

/// Euclidean norm of averages - means.
double vector_norm_gap(std::span<const double> coordinate_averages,
                       std::span<const double> coordinate_means);

}  // namespace ergodiag
