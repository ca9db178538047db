#pragma once

// The four sampled process families, their exact specs, and the exact
// moment algebra of the heavy-tailed independent family (REMARK3).
//
//   AR1           X_1 ~ N(0, gamma0), X_t = phi X_{t-1} + N(0, gamma0 (1 - phi^2))
//   REMARK3       independent, X_t = +-t^{3/2} w.p. t^{-2}/2 each, else 0
//   COMMON_SHOCK  X_t = Z + e_t, Z ~ N(0, sigma_z^2), e_t ~ N(0, sigma_eps^2)
//   DRIFTING_MEAN X_t = trend(t) + N(0, noise_sd^2)

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <variant>

#include "ergodiag/estimators.hpp"
#include "ergodiag/model.hpp"
#include "ergodiag/rng.hpp"

namespace ergodiag {

enum class Family { Ar1, Remark3, CommonShock, DriftingMean };

std::string_view to_string(Family f);

struct Ar1Params {
  double phi = 0.0;
  double gamma0 = 1.0;
};

struct Remark3Params {};

struct CommonShockParams {
  double sigma_z = 1.0;
  double sigma_eps = 1.0;
};

/// mu_t = a + b t
struct LinearTrend {
  double a = 0.0;
  double b = 0.0;
};

/// mu_t = amplitude * sin(2 pi t / period)
struct SinusoidTrend {
  double amplitude = 0.0;
  double period = 1.0;
};

struct DriftingMeanParams {
  std::variant<LinearTrend, SinusoidTrend> trend = LinearTrend{};
  double noise_sd = 1.0;
};

using ProcessParams = std::variant<Ar1Params, Remark3Params, CommonShockParams, DriftingMeanParams>;

class ProcessConfig {
 public:
  /// Throws std::invalid_argument whose message starts with the offending
  /// parameter name.
  explicit ProcessConfig(ProcessParams params);

  static ProcessConfig ar1(double phi, double gamma0) { return ProcessConfig(Ar1Params{phi, gamma0}); }
  static ProcessConfig remark3() { return ProcessConfig(Remark3Params{}); }
  static ProcessConfig common_shock(double sigma_z, double sigma_eps) {
    return ProcessConfig(CommonShockParams{sigma_z, sigma_eps});
  }
  static ProcessConfig drifting_mean(std::variant<LinearTrend, SinusoidTrend> trend, double noise_sd) {
    return ProcessConfig(DriftingMeanParams{trend, noise_sd});
  }

  Family family() const;
  const ProcessParams& params() const { return params_; }
  std::string label() const;

 private:
  ProcessParams params_;
};

/// Exact mean and covariance functions of the family.
ProcessSpec build_spec(const ProcessConfig& config);

/// Writes X_1..X_n (n = out.size()) drawn from the stream of `seed`.
void fill_path(const ProcessConfig& config, RngSeed seed, std::span<double> out);

/// Deterministic in (config, n, seed).
Path sample_path(const ProcessConfig& config, std::int64_t n, RngSeed seed);

struct Remark3Moments {
  double var_xt = 0.0;       // Var(X_t) = t
  double var_xt2 = 0.0;      // Var(X_t^2) = t^4 - t^2
  double var_xtxs = 0.0;     // Var(X_t X_s) = t s
  double cov_xt2_xs2 = 0.0;  // Cov(X_t^2, X_s^2) = 0 by independence
};

/// Requires t, s >= 1 and s != t.
Remark3Moments remark3_exact_moments(std::int64_t t, std::int64_t s);

/// Var(A_n^2) = n^{-4} [ sum_t (t^4 - t^2) + 4 sum_{t<s} t s ] for 1 <= n <= 10^6.
double exact_var_an2_remark3(std::int64_t n);

/// Var((A_n - m_n)^2) from the family's exact distribution: 2 Var(A_n)^2 for
/// the Gaussian families, exact_var_an2_remark3 for REMARK3.
double exact_var_squared_deviation(const ProcessConfig& config, std::int64_t n);

}  // namespace ergodiag
