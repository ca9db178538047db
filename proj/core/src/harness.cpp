#include "ergodiag/harness.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "ergodiag/bounds.hpp"
#include "ergodiag/detail/parallel.hpp"
#include "ergodiag/estimators.hpp"

namespace ergodiag {

namespace {

constexpr double kNonconvergenceMseFraction = 0.9;
constexpr double kTrendSlackSe = 2.0;
constexpr double kEnumerationRelTol = 1e-12;
constexpr double kAppendixCRatioFloor = 10.0;
constexpr std::int64_t kAppendixCRatioAt = 100;
constexpr std::int64_t kMaxEnumeration = 8;
constexpr std::int64_t kLemma1MinReplicates = 1000;
constexpr std::int64_t kMinReplicates = 100;

std::string format(double x) {
  std::ostringstream os;
  os.precision(6);
  os << x;
  return os.str();
}

// Next value does not rise above the previous one by more than the slack.
bool decreases_within(double prev, double prev_se, double next, double next_se, double slack_se) {
  const double slack = slack_se * std::sqrt(prev_se * prev_se + next_se * next_se);
  return next <= prev || next - prev < slack;
}

CheckResult lemma1_from(const ProcessSpec& model, std::int64_t n, std::span<const double> averages,
                        double z) {
  const double m = mean_average(model, n);
  const double exact = exact_var_an(model, n);
  const MseEstimate est = ensemble_mse_with_error(averages, m);
  const double diff = std::abs(est.mse - exact);
  CheckResult r;
  r.metrics = {{"n", static_cast<double>(n)},
               {"exact_var_an", exact},
               {"empirical_mse", est.mse},
               {"mc_standard_error", est.standard_error},
               {"z_score", est.standard_error > 0.0 ? diff / est.standard_error : 0.0}};
  r.verdict = diff <= z * est.standard_error ? Verdict::Pass : Verdict::Fail;
  r.message = "n=" + std::to_string(n) + ": empirical MSE " + format(est.mse) + " vs exact " +
              format(exact) + " (" + format(z) + " SE = " + format(z * est.standard_error) + ")";
  return r;
}

struct Sampled {
  std::int64_t n;
  std::vector<double> averages;
};

CheckResult nonconvergence_from(const ExperimentConfig& config, const GrowthReport& growth,
                                const std::vector<Sampled>& samples, double eps) {
  CheckResult r;
  if (config.process.family() != Family::CommonShock) {
    r.verdict = Verdict::Skipped;
    r.message = "non-convergence check applies to COMMON_SHOCK only";
    return r;
  }
  const double v = growth.liminf_estimate;
  if (!(eps > 0.0) || !(eps * eps < v)) {
    throw std::invalid_argument("verify_nonconvergence: eps^2 must lie below liminf V_n/n^2 = " +
                                format(v));
  }
  const ProcessSpec spec = build_spec(config.process);
  bool mse_ok = true;
  double min_mse = 0.0;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const double m = mean_average(spec, samples[i].n);
    const double mse = ensemble_mse(samples[i].averages, m);
    min_mse = i == 0 ? mse : std::min(min_mse, mse);
    if (mse < kNonconvergenceMseFraction * v) mse_ok = false;
  }

  const Sampled& last = samples.back();
  const double m = mean_average(spec, last.n);
  const double mean_z = exact_var_an(spec, last.n);
  const double var_z = exact_var_squared_deviation(config.process, last.n);
  const double pz = paley_zygmund_lower(mean_z, var_z, eps * eps);
  const double tail = empirical_tail(last.averages, m, eps);
  const double se = binomial_standard_error(tail, last.averages.size());
  const bool tail_ok = tail + config.z_threshold * se >= pz;

  r.metrics = {{"liminf_estimate", v},     {"min_empirical_mse", min_mse},
               {"n", static_cast<double>(last.n)}, {"empirical_tail", tail},
               {"tail_standard_error", se}, {"pz_lower", pz}};
  r.verdict = mse_ok && tail_ok ? Verdict::Pass : Verdict::Fail;
  r.message = "min MSE " + format(min_mse) + " vs 0.9*liminf " + format(kNonconvergenceMseFraction * v) +
              "; tail(eps=" + format(eps) + ") " + format(tail) + " vs Paley-Zygmund " + format(pz);
  return r;
}

CheckResult theorem1_from(const std::vector<GridRecord>& records, const GrowthReport& growth, double z) {
  CheckResult r;
  const bool subquadratic = growth.classification == GrowthClass::Subquadratic;
  bool mse_trend = true;
  bool exact_trend = true;
  for (std::size_t i = 1; i < records.size(); ++i) {
    const GridRecord& a = records[i - 1];
    const GridRecord& b = records[i];
    if (!decreases_within(a.empirical_mse, a.mc_standard_error, b.empirical_mse, b.mc_standard_error, z)) {
      mse_trend = false;
    }
    if (!(b.exact_var_an < a.exact_var_an)) exact_trend = false;
  }
  r.metrics = {{"fitted_slope", growth.fitted_slope},
               {"liminf_estimate", growth.liminf_estimate},
               {"final_exact_var_an", records.back().exact_var_an},
               {"final_empirical_mse", records.back().empirical_mse}};
  r.verdict = subquadratic && mse_trend && exact_trend ? Verdict::Pass : Verdict::Fail;
  r.message = "V_n growth " + std::string(to_string(growth.classification)) + " (slope " +
              format(growth.fitted_slope) + "); MSE " + (mse_trend ? "decreasing" : "not decreasing") +
              " across the grid";
  return r;
}

CheckResult wlln_from(const std::vector<GridRecord>& records) {
  CheckResult r;
  bool ok = true;
  for (std::size_t e = 0; e < records.front().tails.size(); ++e) {
    for (std::size_t i = 1; i < records.size(); ++i) {
      const TailRecord& a = records[i - 1].tails[e];
      const TailRecord& b = records[i].tails[e];
      if (!decreases_within(a.empirical_tail, a.tail_standard_error, b.empirical_tail,
                            b.tail_standard_error, kTrendSlackSe)) {
        ok = false;
      }
    }
    r.metrics.emplace_back("final_tail_eps_" + format(records.front().tails[e].eps),
                           records.back().tails[e].empirical_tail);
  }
  r.verdict = ok ? Verdict::Pass : Verdict::Fail;
  r.message = ok ? "tail probabilities decrease across the grid for every eps"
                 : "a tail probability increased beyond 2 standard errors";
  return r;
}

CheckResult bounds_from(const std::vector<GridRecord>& records, double z) {
  CheckResult r;
  std::size_t violations = 0;
  std::size_t checked = 0;
  double worst = -1.0;
  for (const GridRecord& rec : records) {
    for (const TailRecord& t : rec.tails) {
      ++checked;
      const double slack = z * t.tail_standard_error;
      worst = std::max(worst, t.empirical_tail - t.chebyshev_bound);
      if (t.empirical_tail > t.chebyshev_bound + slack) ++violations;
      if (t.pz_lower && *t.pz_lower > t.empirical_tail + slack) ++violations;
    }
  }
  r.metrics = {{"pairs_checked", static_cast<double>(checked)},
               {"violations", static_cast<double>(violations)},
               {"max_tail_minus_chebyshev", worst}};
  r.verdict = violations == 0 ? Verdict::Pass : Verdict::Fail;
  r.message = std::to_string(violations) + " bound violations over " + std::to_string(checked) +
              " (n, eps) pairs";
  return r;
}

struct TailPoint {
  std::int64_t n;
  double tail;
  double se;
};

CheckResult appendix_c_from(std::int64_t n_max_enum, std::int64_t n_max_formula,
                            const std::vector<TailPoint>& tails, double eps) {
  if (n_max_enum < 1 || n_max_enum > kMaxEnumeration) {
    throw std::invalid_argument("verify_appendix_c: n_max_enum must lie in [1, 8]");
  }
  if (n_max_formula < kAppendixCRatioAt || n_max_formula > 1'000'000) {
    throw std::invalid_argument("verify_appendix_c: n_max_formula must lie in [100, 10^6]");
  }
  CheckResult r;

  double worst_rel = 0.0;
  for (std::int64_t n = 1; n <= n_max_enum; ++n) {
    const double formula = exact_var_an2_remark3(n);
    const double brute = remark3_enumerated_var_an2(n);
    worst_rel = std::max(worst_rel, std::abs(formula - brute) / std::max(1.0, std::abs(brute)));
  }
  const bool enum_ok = worst_rel <= kEnumerationRelTol;

  auto ratio = [](std::int64_t n) {
    const auto nn = static_cast<double>(n);
    const double vn = nn * (nn + 1.0) / 2.0;
    return exact_var_an2_remark3(n) / (vn * vn / (nn * nn * nn * nn));
  };
  std::vector<std::int64_t> points;
  for (std::int64_t n = 1; n <= std::min<std::int64_t>(n_max_formula, 20); ++n) points.push_back(n);
  for (double x = 20.0; x < static_cast<double>(n_max_formula);) {
    x *= 1.25;
    points.push_back(std::min(n_max_formula, static_cast<std::int64_t>(std::llround(x))));
  }
  points.push_back(kAppendixCRatioAt);
  std::sort(points.begin(), points.end());
  points.erase(std::unique(points.begin(), points.end()), points.end());
  bool increasing = true;
  double prev = -1.0;
  for (std::int64_t n : points) {
    const double q = ratio(n);
    if (!(q > prev)) increasing = false;
    prev = q;
  }
  const double ratio_at_100 = ratio(kAppendixCRatioAt);
  const bool ratio_ok = increasing && ratio_at_100 > kAppendixCRatioFloor;

  bool tail_ok = true;
  bool var_ok = true;
  double prev_var = 0.0;
  for (std::size_t i = 0; i < tails.size(); ++i) {
    const auto nn = static_cast<double>(tails[i].n);
    const double var = (nn + 1.0) / (2.0 * nn);
    if (var < 0.5 || (i > 0 && !(var < prev_var))) var_ok = false;
    prev_var = var;
    if (i > 0 && !decreases_within(tails[i - 1].tail, tails[i - 1].se, tails[i].tail, tails[i].se,
                                   kTrendSlackSe)) {
      tail_ok = false;
    }
  }

  r.metrics = {{"max_enumeration_rel_error", worst_rel},
               {"ratio_at_100", ratio_at_100},
               {"ratio_at_n_max_formula", prev}};
  for (const TailPoint& t : tails) {
    r.metrics.emplace_back("tail_n_" + std::to_string(t.n), t.tail);
  }
  r.verdict = enum_ok && ratio_ok && tail_ok && var_ok ? Verdict::Pass : Verdict::Fail;
  std::ostringstream msg;
  msg << "enumeration " << (enum_ok ? "matches" : "MISMATCH") << " (max rel " << worst_rel
      << "); Var(A_n^2)/(V_n^2/n^4) at n=100 is " << format(ratio_at_100)
      << (increasing ? ", increasing" : ", NOT increasing") << "; tail(eps=" << eps << ") "
      << (tail_ok ? "decreasing" : "NOT decreasing") << " across the grid";
  r.message = msg.str();
  return r;
}

std::vector<Sampled> sample_grid(const ExperimentConfig& config, const RunOptions& options) {
  std::vector<Sampled> out;
  out.reserve(config.n_grid.size());
  for (std::int64_t n : config.n_grid) {
    out.push_back({n, replicate_averages(config.process, n, config.replicates, config.base_seed, options)});
  }
  return out;
}

}  // namespace

std::string_view to_string(Check c) {
  switch (c) {
    case Check::Lemma1: return "LEMMA1";
    case Check::Theorem1: return "THEOREM1";
    case Check::Wlln: return "WLLN";
    case Check::Nonconvergence: return "NONCONVERGENCE";
    case Check::Bounds: return "BOUNDS";
    case Check::AppendixC: return "APPENDIX_C";
    case Check::Vector: return "VECTOR";
  }
  return "LEMMA1";
}

std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::Pass: return "PASS";
    case Verdict::Fail: return "FAIL";
    case Verdict::Skipped: return "SKIPPED";
  }
  return "SKIPPED";
}

std::optional<Check> parse_check(std::string_view name) {
  for (Check c : {Check::Lemma1, Check::Theorem1, Check::Wlln, Check::Nonconvergence, Check::Bounds,
                  Check::AppendixC, Check::Vector}) {
    if (to_string(c) == name) return c;
  }
  return std::nullopt;
}

double CheckResult::metric(std::string_view name) const {
  for (const auto& [key, value] : metrics) {
    if (key == name) return value;
  }
  throw std::out_of_range("CheckResult: no metric named " + std::string(name));
}

std::vector<Check> default_checks(Family family) {
  switch (family) {
    case Family::Ar1: return {Check::Lemma1, Check::Theorem1, Check::Wlln, Check::Bounds};
    case Family::Remark3: return {Check::Lemma1, Check::AppendixC};
    case Family::CommonShock: return {Check::Lemma1, Check::Nonconvergence, Check::Bounds};
    case Family::DriftingMean: return {Check::Lemma1, Check::Theorem1, Check::Wlln, Check::Bounds};
  }
  return {};
}

void ExperimentConfig::validate() const {
  if (n_grid.empty()) throw std::invalid_argument("n_grid: must be nonempty");
  for (std::size_t i = 0; i < n_grid.size(); ++i) {
    if (n_grid[i] < 1) throw std::invalid_argument("n_grid: entries must be >= 1");
    if (i > 0 && n_grid[i] <= n_grid[i - 1]) {
      throw std::invalid_argument("n_grid: must be strictly increasing");
    }
  }
  if (replicates < kMinReplicates) throw std::invalid_argument("replicates: must be >= 100");
  if (epsilons.empty()) throw std::invalid_argument("epsilons: must be nonempty");
  for (double e : epsilons) {
    if (!(e > 0.0) || !std::isfinite(e)) throw std::invalid_argument("epsilons: entries must be > 0");
  }
  if (!(z_threshold > 0.0)) throw std::invalid_argument("z_threshold: must be > 0");
}

std::vector<Check> ExperimentConfig::effective_checks() const {
  return checks.empty() ? default_checks(process.family()) : checks;
}

bool ConvergenceReport::all_passed_or_skipped() const {
  return std::none_of(verdicts.begin(), verdicts.end(),
                      [](const auto& kv) { return kv.second.verdict == Verdict::Fail; });
}

std::vector<double> replicate_averages(const ProcessConfig& process, std::int64_t n,
                                       std::int64_t replicates, std::uint64_t base_seed,
                                       const RunOptions& options) {
  if (n < 1) throw std::invalid_argument("replicate_averages: n must be >= 1");
  if (replicates < 1) throw std::invalid_argument("replicate_averages: replicates must be >= 1");
  const std::uint64_t grid_seed = derive_seed(base_seed, static_cast<std::uint64_t>(n));
  std::vector<double> averages(static_cast<std::size_t>(replicates));
  detail::parallel_for(averages.size(), options.threads, [&](std::size_t begin, std::size_t end) {
    std::vector<double> buffer(static_cast<std::size_t>(n));
    for (std::size_t r = begin; r < end; ++r) {
      fill_path(process, RngSeed{grid_seed, r}, buffer);
      averages[r] = time_average(buffer);
    }
  });
  return averages;
}

std::vector<std::int64_t> growth_grid(std::span<const std::int64_t> n_grid) {
  if (n_grid.empty()) throw std::invalid_argument("growth_grid: empty grid");
  std::int64_t hi = n_grid.back();
  const std::int64_t lo = std::max<std::int64_t>(1, std::min(n_grid.front(), hi / 10));
  hi = std::max(hi, 10 * lo);
  std::vector<std::int64_t> grid(n_grid.begin(), n_grid.end());
  const double decades = std::log10(static_cast<double>(hi) / static_cast<double>(lo));
  const int steps = static_cast<int>(std::ceil(decades * 8.0));
  for (int k = 0; k <= steps; ++k) {
    const double x = static_cast<double>(lo) * std::pow(10.0, static_cast<double>(k) / 8.0);
    grid.push_back(std::min(hi, static_cast<std::int64_t>(std::llround(x))));
  }
  grid.push_back(hi);
  std::sort(grid.begin(), grid.end());
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
  return grid;
}

ConvergenceReport run_experiment(const ExperimentConfig& config, const RunOptions& options) {
  config.validate();
  const ProcessSpec spec = build_spec(config.process);
  ConvergenceReport report;
  report.spec_label = spec.label();
  report.growth = growth_report(spec, growth_grid(config.n_grid));

  const std::vector<Sampled> samples = sample_grid(config, options);
  const auto replicates = static_cast<std::size_t>(config.replicates);
  for (const Sampled& s : samples) {
    GridRecord rec;
    rec.n = s.n;
    rec.mean_average = mean_average(spec, s.n);
    rec.exact_var_an = exact_var_an(spec, s.n);
    const MseEstimate est = ensemble_mse_with_error(s.averages, rec.mean_average);
    rec.empirical_mse = est.mse;
    rec.mc_standard_error = est.standard_error;
    const double var_z = exact_var_squared_deviation(config.process, s.n);
    for (double eps : config.epsilons) {
      TailRecord t;
      t.eps = eps;
      t.empirical_tail = empirical_tail(s.averages, rec.mean_average, eps);
      t.tail_standard_error = binomial_standard_error(t.empirical_tail, replicates);
      t.chebyshev_bound = chebyshev_bound(rec.exact_var_an, eps);
      if (eps * eps <= rec.exact_var_an) {
        t.pz_lower = paley_zygmund_lower(rec.exact_var_an, var_z, eps * eps);
      }
      rec.tails.push_back(t);
    }
    report.records.push_back(std::move(rec));
  }

  for (Check check : config.effective_checks()) {
    CheckResult result;
    switch (check) {
      case Check::Lemma1: {
        if (config.replicates < kLemma1MinReplicates) {
          result.verdict = Verdict::Skipped;
          result.message = "LEMMA1 needs at least 1000 replicates";
          break;
        }
        result.verdict = Verdict::Pass;
        std::string failures;
        for (const Sampled& s : samples) {
          CheckResult one = lemma1_from(spec, s.n, s.averages, config.z_threshold);
          for (auto& [k, v] : one.metrics) {
            result.metrics.emplace_back(k + "_n" + std::to_string(s.n), v);
          }
          if (!one.passed()) {
            result.verdict = Verdict::Fail;
            failures += (failures.empty() ? "" : "; ") + one.message;
          }
        }
        result.message = failures.empty() ? "empirical MSE matches V_n/n^2 at every grid point" : failures;
        break;
      }
      case Check::Theorem1:
        result = theorem1_from(report.records, report.growth, config.z_threshold);
        break;
      case Check::Wlln:
        result = wlln_from(report.records);
        break;
      case Check::Nonconvergence: {
        if (config.process.family() != Family::CommonShock) {
          result = nonconvergence_from(config, report.growth, samples, 0.0);
          break;
        }
        // Largest configured eps whose square sits below the liminf.
        std::optional<double> eps;
        for (double e : config.epsilons) {
          if (e * e < report.growth.liminf_estimate && (!eps || e > *eps)) eps = e;
        }
        if (!eps) {
          result.verdict = Verdict::Skipped;
          result.message = "no configured eps has eps^2 below liminf V_n/n^2";
          break;
        }
        result = nonconvergence_from(config, report.growth, samples, *eps);
        break;
      }
      case Check::Bounds:
        result = bounds_from(report.records, config.z_threshold);
        break;
      case Check::AppendixC: {
        if (config.process.family() != Family::Remark3) {
          result.verdict = Verdict::Skipped;
          result.message = "APPENDIX_C applies to REMARK3 only";
          break;
        }
        constexpr double eps = 0.1;
        std::vector<TailPoint> tails;
        for (const Sampled& s : samples) {
          const double tail = empirical_tail(s.averages, 0.0, eps);
          tails.push_back({s.n, tail, binomial_standard_error(tail, replicates)});
        }
        const std::int64_t n_max_formula =
            std::clamp<std::int64_t>(config.n_grid.back(), kAppendixCRatioAt, 1'000'000);
        result = appendix_c_from(6, n_max_formula, tails, eps);
        break;
      }
      case Check::Vector: {
        const std::vector<ProcessConfig> coords(3, config.process);
        result = verify_vector(coords, config.n_grid.back(), config.replicates, config.base_seed,
                               config.z_threshold, options);
        break;
      }
    }
    report.verdicts.insert_or_assign(check, std::move(result));
  }
  return report;
}

CheckResult verify_lemma1(const ExperimentConfig& config, std::int64_t n, double z_threshold,
                          const RunOptions& options) {
  return verify_lemma1(config, build_spec(config.process), n, z_threshold, options);
}

CheckResult verify_lemma1(const ExperimentConfig& config, const ProcessSpec& model, std::int64_t n,
                          double z_threshold, const RunOptions& options) {
  if (config.replicates < kLemma1MinReplicates) {
    throw std::invalid_argument("verify_lemma1: replicates must be >= 1000");
  }
  const std::vector<double> averages =
      replicate_averages(config.process, n, config.replicates, config.base_seed, options);
  return lemma1_from(model, n, averages, z_threshold);
}

CheckResult verify_nonconvergence(const ExperimentConfig& config, double eps, const RunOptions& options) {
  config.validate();
  if (config.process.family() != Family::CommonShock) {
    return nonconvergence_from(config, GrowthReport{}, {}, eps);
  }
  const ProcessSpec spec = build_spec(config.process);
  const GrowthReport growth = growth_report(spec, growth_grid(config.n_grid));
  if (!(eps > 0.0) || !(eps * eps < growth.liminf_estimate)) {
    throw std::invalid_argument("verify_nonconvergence: eps^2 must lie below liminf V_n/n^2");
  }
  return nonconvergence_from(config, growth, sample_grid(config, options), eps);
}

double remark3_enumerated_var_an2(std::int64_t n) {
  if (n < 1 || n > kMaxEnumeration) {
    throw std::invalid_argument("remark3_enumerated_var_an2: n must lie in [1, 8]");
  }
  // Outcome digit 0 -> 0, 1 -> +t^{3/2}, 2 -> -t^{3/2}.
  std::vector<int> digit(static_cast<std::size_t>(n), 0);
  long double m2 = 0.0L;
  long double m4 = 0.0L;
  while (true) {
    long double prob = 1.0L;
    long double sum = 0.0L;
    for (std::int64_t i = 0; i < n; ++i) {
      const auto t = static_cast<long double>(i + 1);
      const long double p_nonzero = 1.0L / (t * t);
      const int d = digit[static_cast<std::size_t>(i)];
      if (d == 0) {
        prob *= 1.0L - p_nonzero;
      } else {
        prob *= 0.5L * p_nonzero;
        const long double mag = t * std::sqrt(t);
        sum += d == 1 ? mag : -mag;
      }
    }
    const long double s2 = sum * sum;
    m2 += prob * s2;
    m4 += prob * s2 * s2;

    std::size_t k = 0;
    while (k < digit.size() && digit[k] == 2) digit[k++] = 0;
    if (k == digit.size()) break;
    ++digit[k];
  }
  const auto nn = static_cast<long double>(n);
  const long double n4 = nn * nn * nn * nn;
  return static_cast<double>((m4 - m2 * m2) / n4);
}

CheckResult verify_appendix_c(std::int64_t n_max_enum, std::int64_t n_max_formula,
                              const AppendixCMonteCarlo& mc, const RunOptions& options) {
  if (mc.n_grid.empty()) throw std::invalid_argument("verify_appendix_c: empty n_grid");
  if (mc.replicates < kMinReplicates) throw std::invalid_argument("verify_appendix_c: replicates must be >= 100");
  if (!(mc.eps > 0.0)) throw std::invalid_argument("verify_appendix_c: eps must be > 0");
  const ProcessConfig remark3 = ProcessConfig::remark3();
  std::vector<TailPoint> tails;
  for (std::int64_t n : mc.n_grid) {
    const std::vector<double> averages = replicate_averages(remark3, n, mc.replicates, mc.base_seed, options);
    const double tail = empirical_tail(averages, 0.0, mc.eps);
    tails.push_back({n, tail, binomial_standard_error(tail, averages.size())});
  }
  return appendix_c_from(n_max_enum, n_max_formula, tails, mc.eps);
}

CheckResult verify_vector(std::span<const ProcessConfig> coordinates, std::int64_t n,
                          std::int64_t replicates, std::uint64_t base_seed, double z_threshold,
                          const RunOptions& options) {
  if (coordinates.empty()) throw std::invalid_argument("verify_vector: need at least one coordinate");
  if (n < 1) throw std::invalid_argument("verify_vector: n must be >= 1");
  if (replicates < 2) throw std::invalid_argument("verify_vector: replicates must be >= 2");

  const std::size_t d = coordinates.size();
  std::vector<double> means;
  double exact = 0.0;
  for (const ProcessConfig& c : coordinates) {
    const ProcessSpec spec = build_spec(c);
    means.push_back(mean_average(spec, n));
    exact += exact_var_an(spec, n);
  }

  const std::uint64_t grid_seed = derive_seed(base_seed, static_cast<std::uint64_t>(n));
  std::vector<std::uint64_t> coord_seeds;
  for (std::size_t j = 0; j < d; ++j) coord_seeds.push_back(derive_seed(grid_seed, j));

  std::vector<double> gaps(static_cast<std::size_t>(replicates));
  detail::parallel_for(gaps.size(), options.threads, [&](std::size_t begin, std::size_t end) {
    std::vector<double> buffer(static_cast<std::size_t>(n));
    std::vector<double> averages(d);
    for (std::size_t r = begin; r < end; ++r) {
      for (std::size_t j = 0; j < d; ++j) {
        fill_path(coordinates[j], RngSeed{coord_seeds[j], r}, buffer);
        averages[j] = time_average(buffer);
      }
      gaps[r] = vector_norm_gap(averages, means);
    }
  });

  // Squared gaps play the role of squared deviations about a zero target.
  const MseEstimate est = ensemble_mse_with_error(gaps, 0.0);
  const double diff = std::abs(est.mse - exact);
  CheckResult r;
  r.metrics = {{"dimension", static_cast<double>(d)},
               {"n", static_cast<double>(n)},
               {"exact_sum_var_an", exact},
               {"empirical_mean_sq_gap", est.mse},
               {"mc_standard_error", est.standard_error}};
  r.verdict = diff <= z_threshold * est.standard_error ? Verdict::Pass : Verdict::Fail;
  r.message = "mean squared norm gap " + format(est.mse) + " vs sum of exact variances " + format(exact);
  return r;
}

}  // namespace ergodiag
