#include "ergodiag/model.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <utility>

#include "ergodiag/detail/summation.hpp"
#include "ergodiag/error.hpp"

namespace ergodiag {

namespace {

void require_positive_n(std::int64_t n, const char* op) {
  if (n <= 0) {
    throw std::invalid_argument(std::string(op) + ": n must be >= 1, got " + std::to_string(n));
  }
}

}  // namespace

double StationaryCov::operator()(std::int64_t lag) const {
  if (lag < 0) lag = -lag;
  if (max_meaningful_lag && lag > *max_meaningful_lag) return 0.0;
  return gamma(lag);
}

ProcessSpec::ProcessSpec(std::string label, MeanFn mean, CovFn cov, bool diagonal)
    : label_(std::move(label)), mean_(std::move(mean)), cov_(std::move(cov)), diagonal_(diagonal) {
  if (!mean_ || !cov_) throw std::invalid_argument("ProcessSpec: mean and cov must be callable");
}

ProcessSpec::ProcessSpec(std::string label, MeanFn mean, StationaryCov stationary)
    : label_(std::move(label)), mean_(std::move(mean)), stationary_(std::move(stationary)) {
  if (!mean_ || !stationary_->gamma) {
    throw std::invalid_argument("ProcessSpec: mean and gamma must be callable");
  }
  cov_ = [g = *stationary_](std::int64_t t, std::int64_t s) { return g(t - s); };
  diagonal_ = stationary_->max_meaningful_lag.has_value() && *stationary_->max_meaningful_lag == 0;
}

double mean_average(const ProcessSpec& spec, std::int64_t n) {
  require_positive_n(n, "mean_average");
  double acc = 0.0;
  for (std::int64_t t = 1; t <= n; ++t) acc += spec.mean(t);
  return acc / static_cast<double>(n);
}

double exact_vn_double_sum(const ProcessSpec& spec, std::int64_t n) {
  require_positive_n(n, "exact_vn");
  std::vector<double> row(static_cast<std::size_t>(n));
  double total = 0.0;
  for (std::int64_t t = 1; t <= n; ++t) {
    for (std::int64_t s = 1; s <= n; ++s) row[static_cast<std::size_t>(s - 1)] = spec.cov(t, s);
    total += detail::pairwise_sum(row);
  }
  return total;
}

double exact_vn_lag(const ProcessSpec& spec, std::int64_t n) {
  require_positive_n(n, "exact_vn");
  if (!spec.stationary()) {
    throw std::invalid_argument("exact_vn_lag: spec '" + spec.label() + "' is not stationary");
  }
  const StationaryCov& gamma = *spec.stationary();
  std::int64_t last = n - 1;
  if (gamma.max_meaningful_lag) last = std::min(last, *gamma.max_meaningful_lag);
  std::vector<double> terms;
  terms.reserve(static_cast<std::size_t>(std::max<std::int64_t>(last, 0)));
  for (std::int64_t h = 1; h <= last; ++h) {
    terms.push_back(static_cast<double>(n - h) * gamma(h));
  }
  return static_cast<double>(n) * gamma(0) + 2.0 * detail::pairwise_sum(terms);
}

double exact_vn(const ProcessSpec& spec, std::int64_t n) {
  require_positive_n(n, "exact_vn");
  if (spec.stationary()) return exact_vn_lag(spec, n);
  if (spec.is_diagonal()) {
    std::vector<double> diag(static_cast<std::size_t>(n));
    for (std::int64_t t = 1; t <= n; ++t) diag[static_cast<std::size_t>(t - 1)] = spec.cov(t, t);
    return detail::pairwise_sum(diag);
  }
  return exact_vn_double_sum(spec, n);
}

double exact_var_an(const ProcessSpec& spec, std::int64_t n) {
  const double vn = exact_vn(spec, n);
  const double nn = static_cast<double>(n);
  return vn / (nn * nn);
}

CorrelationTime correlation_time(const StationaryCov& cov, double abs_tol, std::int64_t max_terms) {
  if (!(abs_tol > 0.0)) throw std::invalid_argument("correlation_time: abs_tol must be > 0");
  if (max_terms < 1) throw std::invalid_argument("correlation_time: max_terms must be >= 1");
  const double gamma0 = cov(0);
  if (!(gamma0 > 0.0)) {
    throw DegenerateError("correlation_time: gamma(0) must be > 0 (degenerate process)");
  }
  double tail = 0.0;
  int run = 0;
  for (std::int64_t h = 1; h <= max_terms; ++h) {
    const double g = cov(h);
    tail += g;
    run = std::abs(2.0 * g) < abs_tol ? run + 1 : 0;
    if (run >= kCorrelationTailWindow) return CorrelationTime::finite((gamma0 + 2.0 * tail) / gamma0);
  }
  return CorrelationTime::non_summable();
}

EffectiveSampleSize effective_sample_size(std::int64_t n, CorrelationTime tau) {
  if (!tau.summable) {
    require_positive_n(n, "effective_sample_size");
    return {0.0, true};
  }
  return effective_sample_size(n, tau.tau);
}

EffectiveSampleSize effective_sample_size(std::int64_t n, double tau) {
  require_positive_n(n, "effective_sample_size");
  if (!(tau > 0.0)) throw std::invalid_argument("effective_sample_size: tau must be > 0");
  return {static_cast<double>(n) / tau, false};
}

std::string_view to_string(GrowthClass c) {
  switch (c) {
    case GrowthClass::Subquadratic: return "SUBQUADRATIC";
    case GrowthClass::Quadratic: return "QUADRATIC";
    case GrowthClass::Indeterminate: return "INDETERMINATE";
  }
  return "INDETERMINATE";
}

GrowthReport classify_growth(std::span<const std::int64_t> n_grid, std::span<const double> vn_values) {
  if (n_grid.size() != vn_values.size()) {
    throw std::invalid_argument("classify_growth: n_grid and vn_values differ in length");
  }
  if (n_grid.size() < 4) throw std::invalid_argument("classify_growth: need at least 4 grid points");
  for (std::size_t i = 0; i < n_grid.size(); ++i) {
    if (n_grid[i] <= 0) throw std::invalid_argument("classify_growth: grid entries must be >= 1");
    if (i > 0 && n_grid[i] <= n_grid[i - 1]) {
      throw std::invalid_argument("classify_growth: n_grid must be strictly increasing");
    }
    if (!(vn_values[i] >= 0.0)) throw std::invalid_argument("classify_growth: V_n must be >= 0");
  }
  const std::int64_t n_max = n_grid.back();
  if (n_max < 10 * n_grid.front()) {
    throw std::invalid_argument("classify_growth: n_grid must span at least one decade");
  }

  GrowthReport report;
  report.n_grid.assign(n_grid.begin(), n_grid.end());
  report.vn_values.assign(vn_values.begin(), vn_values.end());
  for (std::size_t i = 0; i < n_grid.size(); ++i) {
    const double n = static_cast<double>(n_grid[i]);
    report.vn_over_n2.push_back(vn_values[i] / (n * n));
  }

  // Top decade: n >= n_max / 10, widened to two points if the grid is sparse.
  std::size_t first = n_grid.size() - 1;
  while (first > 0 && 10 * n_grid[first - 1] >= n_max) --first;
  if (first == n_grid.size() - 1) --first;

  const std::span<const double> top_ratio =
      std::span<const double>(report.vn_over_n2).subspan(first);
  report.liminf_estimate = *std::min_element(top_ratio.begin(), top_ratio.end());

  const bool any_zero = std::any_of(vn_values.begin() + static_cast<std::ptrdiff_t>(first),
                                    vn_values.end(), [](double v) { return v == 0.0; });
  if (any_zero) {
    const bool all_zero = std::all_of(vn_values.begin() + static_cast<std::ptrdiff_t>(first),
                                      vn_values.end(), [](double v) { return v == 0.0; });
    report.fitted_slope = 0.0;
    report.classification = all_zero ? GrowthClass::Subquadratic : GrowthClass::Indeterminate;
    return report;
  }

  const std::size_t m = n_grid.size() - first;
  double mean_x = 0.0, mean_y = 0.0;
  for (std::size_t i = first; i < n_grid.size(); ++i) {
    mean_x += std::log(static_cast<double>(n_grid[i]));
    mean_y += std::log(vn_values[i]);
  }
  mean_x /= static_cast<double>(m);
  mean_y /= static_cast<double>(m);
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t i = first; i < n_grid.size(); ++i) {
    const double dx = std::log(static_cast<double>(n_grid[i])) - mean_x;
    sxy += dx * (std::log(vn_values[i]) - mean_y);
    sxx += dx * dx;
  }
  report.fitted_slope = sxy / sxx;

  bool decreasing = true;
  for (std::size_t i = 1; i < top_ratio.size(); ++i) {
    if (!(top_ratio[i] < top_ratio[i - 1])) decreasing = false;
  }

  if (report.fitted_slope >= kQuadraticSlopeThreshold && report.liminf_estimate > 0.0) {
    report.classification = GrowthClass::Quadratic;
  } else if (report.fitted_slope <= kQuadraticSlopeThreshold && decreasing) {
    report.classification = GrowthClass::Subquadratic;
  } else {
    report.classification = GrowthClass::Indeterminate;
  }
  return report;
}

GrowthReport growth_report(const ProcessSpec& spec, std::span<const std::int64_t> n_grid) {
  std::vector<double> vn;
  vn.reserve(n_grid.size());
  for (std::int64_t n : n_grid) vn.push_back(exact_vn(spec, n));
  return classify_growth(n_grid, vn);
}

}  // namespace ergodiag
