// Acceptance suite: one [PASS]/[FAIL] line per criterion, nonzero exit on any failure.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "ergodiag/bounds.hpp"
#include "ergodiag/estimators.hpp"
#include "ergodiag/harness.hpp"
#include "ergodiag/model.hpp"
#include "ergodiag/processes.hpp"
#include "ergodiag/rng.hpp"
#include "support/oracles.hpp"

#include <sys/wait.h>
#include <unistd.h>

#ifndef ERGODIAG_CLI_PATH
#error "ERGODIAG_CLI_PATH must name the ergodiag executable"
#endif

using namespace ergodiag;
namespace fs = std::filesystem;

namespace {

constexpr double kZ = 4.0;
constexpr double kTailSlackSe = 2.0;
constexpr double kExactRelTol = 1e-12;
constexpr double kBoundTol = 1e-12;
constexpr double kTauExactTol = 1e-6;
constexpr double kTauHatRelTol = 0.10;
constexpr double kNVarRelTol = 0.02;
constexpr double kLemma1BudgetSeconds = 60.0;
constexpr double kShockMseFloor = 0.9;
constexpr double kShockTail = 0.617;
constexpr double kShockTailTol = 0.02;
constexpr double kRatioFloor = 10.0;

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail << " !" << what;
    }
  }
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

void remark3_exact_values(Outcome& o) {
  const ProcessSpec spec = build_spec(ProcessConfig::remark3());
  int mismatches = 0;
  for (int k = 0; k < 20; ++k) {
    const auto n = static_cast<std::int64_t>(std::llround(std::pow(10.0, 4.0 * k / 19.0)));
    mismatches += exact_vn(spec, n) != static_cast<double>(n * (n + 1) / 2);
  }
  const double var = exact_var_an(spec, 10000);
  const double ratio = exact_vn(spec, 10000) / 1e8;
  o.detail << "vn mismatches=" << mismatches << "/20 var_an(1e4)=" << var << " vn/n^2=" << ratio;
  o.require(mismatches == 0, "vn != n(n+1)/2");
  o.require(var == 0.50005, "var_an(1e4) != 0.50005");
  o.require(std::abs(ratio - 0.5) < 1e-3, "vn/n^2 not within 1e-3 of 0.5");
}

void lemma1_monte_carlo(Outcome& o) {
  const auto t0 = std::chrono::steady_clock::now();
  const ProcessConfig families[] = {ProcessConfig::ar1(0.5, 1.0), ProcessConfig::remark3(),
                                    ProcessConfig::common_shock(1.0, 1.0),
                                    ProcessConfig::drifting_mean(LinearTrend{1.0, 0.05}, 1.0)};
  for (const ProcessConfig& cfg : families) {
    ExperimentConfig e{.process = cfg, .n_grid = {1000}, .replicates = 100000, .base_seed = 101};
    const CheckResult r = verify_lemma1(e, 1000, kZ);
    o.detail << to_string(cfg.family()) << " z=" << r.metric("z_score") << "; ";
    o.require(r.passed(), std::string(to_string(cfg.family())) + " outside 4 SE");
  }
  const double elapsed = seconds_since(t0);
  o.detail << "runtime=" << elapsed << "s";
  o.require(elapsed <= kLemma1BudgetSeconds, "runtime over 60 s");
}

void correlation_time_checks(Outcome& o) {
  const ProcessConfig ar = ProcessConfig::ar1(0.5, 1.0);
  const ProcessSpec spec = build_spec(ar);
  const CorrelationTime tau = correlation_time(*spec.stationary());
  const Path path = sample_path(ar, 100000, RngSeed{303, 0});
  const TauEstimate hat = estimate_tau(sample_autocovariance(path, 100));
  const double n_var = 1e4 * exact_var_an(spec, 10000);
  o.detail << "tau=" << tau.tau << " tau_hat=" << hat.tau << " (W=" << hat.window << ") n*Var(1e4)=" << n_var;
  o.require(tau.summable && std::abs(tau.tau - 3.0) <= kTauExactTol, "exact tau");
  o.require(std::abs(hat.tau - 3.0) <= kTauHatRelTol * 3.0, "tau_hat");
  o.require(std::abs(n_var - 3.0) <= kNVarRelTol * 3.0, "n*Var");
}

void wlln_trend(Outcome& o) {
  const std::int64_t grid[] = {100, 1000, 10000};
  constexpr std::int64_t kReps = 100000;
  double prev_tail = 0.0, prev_se = 0.0;
  for (std::size_t i = 0; i < 3; ++i) {
    const std::vector<double> a = replicate_averages(ProcessConfig::remark3(), grid[i], kReps, 404);
    const double tail = empirical_tail(a, 0.0, 0.1);
    const double se = binomial_standard_error(tail, kReps);
    o.detail << "tail(" << grid[i] << ")=" << tail << " ";
    if (i > 0) o.require(tail < prev_tail + kTailSlackSe * std::hypot(se, prev_se), "tail not decreasing");
    prev_tail = tail, prev_se = se;
  }
}

void nonconvergence(Outcome& o) {
  ExperimentConfig e{.process = ProcessConfig::common_shock(1.0, 1.0),
                     .n_grid = {100, 1000, 10000},
                     .replicates = 10000,
                     .base_seed = 505};
  const CheckResult r = verify_nonconvergence(e, 0.5);
  const double mse = r.metric("min_empirical_mse");
  const double tail = r.metric("empirical_tail");
  const double pz = r.metric("pz_lower");
  o.detail << "min_mse=" << mse << " tail(0.5,1e4)=" << tail << " pz=" << pz << " verdict=" << to_string(r.verdict);
  o.require(mse >= kShockMseFloor, "MSE below 0.9");
  o.require(std::abs(tail - kShockTail) <= kShockTailTol, "tail not 0.617 +- 0.02");
  o.require(tail > pz, "tail not above Paley-Zygmund");
  o.require(r.passed(), "harness verdict");
}

void fourth_moment_oracle(Outcome& o) {
  double worst = 0.0;
  for (int n = 1; n <= 6; ++n) {
    const double closed = exact_var_an2_remark3(n);
    const double enumerated = remark3_enumerated_var_an2(n);
    const double convolved = oracle::remark3_var_an2_by_convolution(n);
    const double scale = std::max(std::abs(enumerated), 1e-300);
    worst = std::max({worst, std::abs(closed - enumerated) / scale, std::abs(closed - convolved) / scale});
  }
  const double v100 = exact_vn(build_spec(ProcessConfig::remark3()), 100);
  const double ratio = exact_var_an2_remark3(100) / (v100 * v100 / 1e8);
  o.detail << "max rel err=" << worst << " n2=" << exact_var_an2_remark3(2) << " ratio(100)=" << ratio;
  o.require(worst <= kExactRelTol, "closed form vs enumeration");
  o.require(exact_var_an2_remark3(2) == 1.25, "n=2 value");
  o.require(ratio > kRatioFloor, "ratio at 100");
}

void inequality_suite(Outcome& o) {
  double cheb_gap = 0.0, theta_gap = 0.0;
  for (int i = 0; i < 100; ++i) {
    const double v = 0.03 * (i + 1), eps = 0.05 + 0.021 * i;
    cheb_gap = std::max(cheb_gap, std::abs(chebyshev_bound(v, eps) - markov_bound(v, eps * eps)));
    const double m = 0.1 + 0.05 * i, theta = 0.005 + 0.0099 * i;
    theta_gap = std::max(theta_gap, std::abs(paley_zygmund_theta(m, v, theta) - paley_zygmund_lower(m, v, theta * m)));
  }
  o.detail << "cheb-markov=" << cheb_gap << " theta-form=" << theta_gap;
  o.require(cheb_gap <= kBoundTol, "chebyshev vs markov");
  o.require(theta_gap <= kBoundTol, "theta form");

  constexpr int kReps = 100000;
  struct Law {
    const char* name;
    double mean, var;
    std::function<double(Stream&)> draw;
    std::vector<double> eps;
  };
  const Law laws[] = {
      {"Bernoulli(0.3)", 0.3, 0.21, [](Stream& s) { return s.uniform() < 0.3 ? 1.0 : 0.0; }, {0.05, 0.1, 0.2, 0.3, 0.5, 1.0}},
      {"Exponential(1)", 1.0, 1.0, [](Stream& s) { return -std::log1p(-s.uniform()); }, {0.1, 0.25, 0.5, 0.9, 1.0, 2.0, 3.0}},
  };
  int violations = 0;
  for (const Law& law : laws) {
    Stream stream(RngSeed{707, 0});
    std::vector<double> z(kReps);
    for (double& x : z) x = law.draw(stream);
    for (double eps : law.eps) {
      double hits = 0;
      for (double x : z) hits += x >= eps;
      const double tail = hits / kReps;
      const double se = binomial_standard_error(tail, kReps);
      const double slack = kZ * std::max(se, 1.0 / kReps);
      if (tail > markov_bound(law.mean, eps) + slack) ++violations;
      if (eps <= law.mean && paley_zygmund_lower(law.mean, law.var, eps) > tail + slack) ++violations;
    }
  }
  o.detail << " sandwich violations=" << violations;
  o.require(violations == 0, "sandwich");
}

void vector_averages(Outcome& o) {
  const ProcessConfig coords[] = {ProcessConfig::ar1(0.5, 1.0), ProcessConfig::ar1(-0.3, 2.0),
                                  ProcessConfig::ar1(0.8, 0.5)};
  const CheckResult r = verify_vector(coords, 1000, 100000, 808, kZ);
  o.detail << "gap mse=" << r.metric("empirical_mean_sq_gap") << " exact=" << r.metric("exact_sum_var_an")
           << " se=" << r.metric("mc_standard_error");
  o.require(r.passed(), "outside 4 SE");
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

int run_cli(const std::string& threads, const std::string& args) {
  const std::string cmd = "ERGODIAG_THREADS=" + threads + " \"" + std::string(ERGODIAG_CLI_PATH) + "\" " + args +
                          " > /dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

void reproducibility(Outcome& o) {
  const fs::path dir = fs::temp_directory_path() / ("ergodiag_acceptance_" + std::to_string(::getpid()));
  fs::create_directories(dir);
  const fs::path cfg = dir / "config.json";
  std::ofstream(cfg) << R"({"process":{"family":"AR1","params":{"phi":0.5,"gamma0":1.0}},
  "experiment":{"n_grid":[100,1000,10000],"replicates":2000,"base_seed":909,"epsilons":[0.1,0.05],
                "checks":["LEMMA1","THEOREM1","WLLN","BOUNDS","VECTOR"]}})";

  struct Run {
    const char* tag;
    const char* threads;
  };
  const Run runs[] = {{"a", "1"}, {"b", "1"}, {"c", "4"}};
  std::vector<std::string> csvs, reports, curves;
  for (const Run& run : runs) {
    const fs::path csv = dir / (std::string("sim_") + run.tag + ".csv");
    const fs::path out = dir / (std::string("exp_") + run.tag);
    const int sim = run_cli(run.threads, "simulate --config \"" + cfg.string() + "\" --out \"" + csv.string() +
                                             "\" --seed 42 --n 2000 --replicates 25");
    const int exp = run_cli(run.threads, "experiment --config \"" + cfg.string() + "\" --out-dir \"" + out.string() + "\"");
    o.require(sim == 0, std::string("simulate exit ") + std::to_string(sim));
    o.require(exp == 0, std::string("experiment exit ") + std::to_string(exp));
    csvs.push_back(slurp(csv));
    reports.push_back(slurp(out / "report.json"));
    curves.push_back(slurp(out / "curves.csv"));
  }
  const auto same = [](const std::vector<std::string>& v) { return !v[0].empty() && v[0] == v[1] && v[0] == v[2]; };
  o.detail << "simulate bytes=" << csvs[0].size() << " report bytes=" << reports[0].size()
           << " curves bytes=" << curves[0].size();
  o.require(same(csvs), "simulate outputs differ");
  o.require(same(reports), "report.json differs");
  o.require(same(curves), "curves.csv differs");
  std::error_code ec;
  fs::remove_all(dir, ec);
}

}  // namespace

int main() {
  struct Criterion {
    const char* id;
    const char* title;
    void (*run)(Outcome&);
  };
  const Criterion criteria[] = {
      {"AC1", "REMARK3 exact covariance sums", remark3_exact_values},
      {"AC2", "Var(A_n) = V_n/n^2 by Monte Carlo, all families", lemma1_monte_carlo},
      {"AC3", "AR1 correlation time", correlation_time_checks},
      {"AC4", "REMARK3 tail probabilities decrease", wlln_trend},
      {"AC5", "COMMON_SHOCK does not converge", nonconvergence},
      {"AC6", "REMARK3 fourth-moment closed form", fourth_moment_oracle},
      {"AC7", "Markov, Chebyshev and Paley-Zygmund bounds", inequality_suite},
      {"AC8", "vector-valued averages", vector_averages},
      {"AC9", "CLI outputs are byte-reproducible", reproducibility},
  };
  int failures = 0;
  for (const Criterion& c : criteria) {
    Outcome o;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      c.run(o);
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail << " exception: " << e.what();
    }
    failures += !o.pass;
    std::printf("[%s] %s %s (%.1fs): %s\n", o.pass ? "PASS" : "FAIL", c.id, c.title, seconds_since(t0),
                o.detail.str().c_str());
    std::fflush(stdout);
  }
  std::printf("%d/9 criteria passed\n", 9 - failures);
  return failures == 0 ? 0 : 1;
}
