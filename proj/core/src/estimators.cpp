#include "ergodiag/estimators.hpp"

#include <cmath>
#include <stdexcept>
#include <utility>

#include "ergodiag/error.hpp"

namespace ergodiag {

namespace {

void require_nonempty(std::span<const double> xs, const char* op) {
  if (xs.empty()) throw std::invalid_argument(std::string(op) + ": empty path");
}

}  // namespace

Path::Path(std::vector<double> values, std::optional<PathOrigin> origin)
    : values_(std::move(values)), origin_(std::move(origin)) {
  if (values_.empty()) throw std::invalid_argument("Path: a path needs at least one value");
  for (double v : values_) {
    if (!std::isfinite(v)) throw std::invalid_argument("Path: values must be finite");
  }
}

Ensemble::Ensemble(std::vector<Path> paths, std::string spec_label, std::uint64_t base_seed)
    : paths_(std::move(paths)), spec_label_(std::move(spec_label)), base_seed_(base_seed) {
  for (const Path& p : paths_) {
    if (p.size() != paths_.front().size()) {
      throw std::invalid_argument("Ensemble: all paths must have the same length");
    }
  }
}

std::vector<double> Ensemble::time_averages() const {
  std::vector<double> out;
  out.reserve(paths_.size());
  for (const Path& p : paths_) out.push_back(time_average(p));
  return out;
}

double time_average(std::span<const double> path) {
  require_nonempty(path, "time_average");
  double acc = 0.0;
  for (double x : path) acc += x;
  return acc / static_cast<double>(path.size());
}

std::vector<double> running_averages(std::span<const double> path) {
  require_nonempty(path, "running_averages");
  std::vector<double> out;
  out.reserve(path.size());
  double acc = 0.0;
  for (std::size_t k = 0; k < path.size(); ++k) {
    acc += path[k];
    out.push_back(acc / static_cast<double>(k + 1));
  }
  return out;
}

AutocovEstimate sample_autocovariance(std::span<const double> path, std::int64_t max_lag) {
  require_nonempty(path, "sample_autocovariance");
  const auto n = static_cast<std::int64_t>(path.size());
  if (max_lag < 0 || max_lag >= n) {
    throw std::invalid_argument("sample_autocovariance: max_lag must satisfy 0 <= max_lag < n");
  }
  AutocovEstimate est;
  est.n = n;
  est.mean_used = time_average(path);
  std::vector<double> dev(path.size());
  for (std::size_t t = 0; t < path.size(); ++t) dev[t] = path[t] - est.mean_used;

  est.gamma_hat.resize(static_cast<std::size_t>(max_lag) + 1);
  for (std::int64_t h = 0; h <= max_lag; ++h) {
    double acc = 0.0;
    for (std::int64_t t = 0; t + h < n; ++t) {
      acc += dev[static_cast<std::size_t>(t)] * dev[static_cast<std::size_t>(t + h)];
    }
    est.gamma_hat[static_cast<std::size_t>(h)] = acc / static_cast<double>(n);
  }
  return est;
}

TauEstimate estimate_tau(const AutocovEstimate& acov, double window_c) {
  if (acov.gamma_hat.empty() || !(acov.gamma_hat[0] > 0.0)) {
    throw DegenerateError("estimate_tau: gamma_hat(0) must be > 0 (degenerate data)");
  }
  if (!(window_c > 0.0)) throw std::invalid_argument("estimate_tau: window_c must be > 0");

  const double gamma0 = acov.gamma_hat[0];
  const std::int64_t m = acov.max_lag();
  TauEstimate out;
  out.window = m;
  out.window_saturated = true;

  double tau = 1.0;
  for (std::int64_t w = 1; w <= m; ++w) {
    tau += 2.0 * acov.gamma_hat[static_cast<std::size_t>(w)] / gamma0;
    if (static_cast<double>(w) >= window_c * tau) {
      out.window = w;
      out.window_saturated = false;
      break;
    }
  }
  if (tau < kTauFloor) {
    tau = kTauFloor;
    out.floored = true;
  }
  out.tau = tau;
  return out;
}

double ensemble_mse(std::span<const double> averages, double m_n) {
  if (averages.empty()) throw std::invalid_argument("ensemble_mse: empty ensemble");
  double acc = 0.0;
  for (double a : averages) acc += (a - m_n) * (a - m_n);
  return acc / static_cast<double>(averages.size());
}

double ensemble_mse(const Ensemble& ensemble, double m_n) {
  return ensemble_mse(ensemble.time_averages(), m_n);
}

MseEstimate ensemble_mse_with_error(std::span<const double> averages, double m_n) {
  MseEstimate out;
  out.mse = ensemble_mse(averages, m_n);
  const std::size_t r = averages.size();
  if (r < 2) return out;
  double ss = 0.0;
  for (double a : averages) {
    const double d = (a - m_n) * (a - m_n) - out.mse;
    ss += d * d;
  }
  const double var = ss / static_cast<double>(r - 1);
  out.standard_error = std::sqrt(var / static_cast<double>(r));
  return out;
}

double empirical_tail(std::span<const double> averages, double m_n, double eps) {
  if (!(eps > 0.0)) throw std::invalid_argument("empirical_tail: eps must be > 0");
  if (averages.empty()) throw std::invalid_argument("empirical_tail: empty ensemble");
  std::size_t hits = 0;
  for (double a : averages) {
    if (std::abs(a - m_n) >= eps) ++hits;
  }
  return static_cast<double>(hits) / static_cast<double>(averages.size());
}

double empirical_tail(const Ensemble& ensemble, double m_n, double eps) {
  return empirical_tail(ensemble.time_averages(), m_n, eps);
}

double binomial_standard_error(double p, std::size_t replicates) {
  if (replicates == 0) throw std::invalid_argument("binomial_standard_error: no replicates");
  return std::sqrt(p * (1.0 - p) / static_cast<double>(replicates));
}

double vector_norm_gap(std::span<const double> coordinate_averages,
                       std::span<const double> coordinate_means) {
  if (coordinate_averages.size() != coordinate_means.size()) {
    throw std::invalid_argument("vector_norm_gap: dimension mismatch");
  }
  if (coordinate_averages.empty()) throw std::invalid_argument("vector_norm_gap: d must be >= 1");
  double acc = 0.0;
  for (std::size_t j = 0; j < coordinate_averages.size(); ++j) {
    const double d = coordinate_averages[j] - coordinate_means[j];
    acc += d * d;
  }
  return std::sqrt(acc);
}

}  // namespace ergodiag
