#include "ergodiag/processes.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace ergodiag {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

[[noreturn]] void reject(const std::string& field, const std::string& why, double value) {
  std::ostringstream os;
  os << field << ": " << why << ", got " << value;
  throw std::invalid_argument(os.str());
}

void validate(const Ar1Params& p) {
  if (!(p.phi > -1.0 && p.phi < 1.0)) reject("phi", "must lie in (-1, 1)", p.phi);
  if (!(p.gamma0 > 0.0) || !std::isfinite(p.gamma0)) reject("gamma0", "must be > 0", p.gamma0);
}
void validate(const Remark3Params&) {}
void validate(const CommonShockParams& p) {
  if (!(p.sigma_z > 0.0) || !std::isfinite(p.sigma_z)) reject("sigma_z", "must be > 0", p.sigma_z);
  if (!(p.sigma_eps >= 0.0) || !std::isfinite(p.sigma_eps)) {
    reject("sigma_eps", "must be >= 0", p.sigma_eps);
  }
}
void validate(const DriftingMeanParams& p) {
  std::visit(Overloaded{
                 [](const LinearTrend& t) {
                   if (!std::isfinite(t.a)) reject("a", "must be finite", t.a);
                   if (!std::isfinite(t.b)) reject("b", "must be finite", t.b);
                 },
                 [](const SinusoidTrend& t) {
                   if (!std::isfinite(t.amplitude)) reject("amplitude", "must be finite", t.amplitude);
                   if (!(t.period > 0.0) || !std::isfinite(t.period)) {
                     reject("period", "must be > 0", t.period);
                   }
                 },
             },
             p.trend);
  if (!(p.noise_sd > 0.0) || !std::isfinite(p.noise_sd)) reject("noise_sd", "must be > 0", p.noise_sd);
}

double trend_at(const std::variant<LinearTrend, SinusoidTrend>& trend, std::int64_t t) {
  const auto tt = static_cast<double>(t);
  return std::visit(Overloaded{
                        [tt](const LinearTrend& l) { return l.a + l.b * tt; },
                        [tt](const SinusoidTrend& s) {
                          return s.amplitude * std::sin(2.0 * std::numbers::pi * tt / s.period);
                        },
                    },
                    trend);
}

double zero_mean(std::int64_t) { return 0.0; }

}  // namespace

std::string_view to_string(Family f) {
  switch (f) {
    case Family::Ar1: return "AR1";
    case Family::Remark3: return "REMARK3";
    case Family::CommonShock: return "COMMON_SHOCK";
    case Family::DriftingMean: return "DRIFTING_MEAN";
  }
  return "AR1";
}

ProcessConfig::ProcessConfig(ProcessParams params) : params_(std::move(params)) {
  std::visit([](const auto& p) { validate(p); }, params_);
}

Family ProcessConfig::family() const {
  return std::visit(Overloaded{
                        [](const Ar1Params&) { return Family::Ar1; },
                        [](const Remark3Params&) { return Family::Remark3; },
                        [](const CommonShockParams&) { return Family::CommonShock; },
                        [](const DriftingMeanParams&) { return Family::DriftingMean; },
                    },
                    params_);
}

std::string ProcessConfig::label() const {
  std::ostringstream os;
  os << to_string(family());
  std::visit(Overloaded{
                 [&](const Ar1Params& p) { os << "(phi=" << p.phi << ",gamma0=" << p.gamma0 << ")"; },
                 [](const Remark3Params&) {},
                 [&](const CommonShockParams& p) {
                   os << "(sigma_z=" << p.sigma_z << ",sigma_eps=" << p.sigma_eps << ")";
                 },
                 [&](const DriftingMeanParams& p) {
                   std::visit(Overloaded{
                                  [&](const LinearTrend& l) { os << "(LINEAR(" << l.a << "," << l.b << ")"; },
                                  [&](const SinusoidTrend& s) {
                                    os << "(SINUSOID(" << s.amplitude << "," << s.period << ")";
                                  },
                              },
                              p.trend);
                   os << ",noise_sd=" << p.noise_sd << ")";
                 },
             },
             params_);
  return os.str();
}

ProcessSpec build_spec(const ProcessConfig& config) {
  const std::string label = config.label();
  return std::visit(
      Overloaded{
          [&](const Ar1Params& p) {
            return ProcessSpec(label, zero_mean,
                               StationaryCov{[p](std::int64_t h) {
                                               return p.gamma0 * std::pow(p.phi, static_cast<double>(h));
                                             },
                                             std::nullopt});
          },
          [&](const Remark3Params&) {
            return ProcessSpec(
                label, zero_mean,
                [](std::int64_t t, std::int64_t s) { return t == s ? static_cast<double>(t) : 0.0; },
                /*diagonal=*/true);
          },
          [&](const CommonShockParams& p) {
            const double shared = p.sigma_z * p.sigma_z;
            const double own = p.sigma_eps * p.sigma_eps;
            return ProcessSpec(label, zero_mean,
                               StationaryCov{[shared, own](std::int64_t h) {
                                               return h == 0 ? shared + own : shared;
                                             },
                                             std::nullopt});
          },
          [&](const DriftingMeanParams& p) {
            const double var = p.noise_sd * p.noise_sd;
            return ProcessSpec(label, [trend = p.trend](std::int64_t t) { return trend_at(trend, t); },
                               StationaryCov{[var](std::int64_t h) { return h == 0 ? var : 0.0; }, 0});
          },
      },
      config.params());
}

void fill_path(const ProcessConfig& config, RngSeed seed, std::span<double> out) {
  Stream rng(seed);
  std::visit(Overloaded{
                 [&](const Ar1Params& p) {
                   const double innovation_sd = std::sqrt(p.gamma0 * (1.0 - p.phi * p.phi));
                   double x = std::sqrt(p.gamma0) * rng.normal();
                   for (std::size_t i = 0; i < out.size(); ++i) {
                     if (i > 0) x = p.phi * x + innovation_sd * rng.normal();
                     out[i] = x;
                   }
                 },
                 [&](const Remark3Params&) {
                   for (std::size_t i = 0; i < out.size(); ++i) {
                     const double t = static_cast<double>(i + 1);
                     const double p_nonzero = 1.0 / (t * t);
                     const double u = rng.uniform();
                     if (u < 0.5 * p_nonzero) {
                       out[i] = std::pow(t, 1.5);
                     } else if (u < p_nonzero) {
                       out[i] = -std::pow(t, 1.5);
                     } else {
                       out[i] = 0.0;
                     }
                   }
                 },
                 [&](const CommonShockParams& p) {
                   const double z = p.sigma_z * rng.normal();
                   for (double& x : out) x = p.sigma_eps > 0.0 ? z + p.sigma_eps * rng.normal() : z;
                 },
                 [&](const DriftingMeanParams& p) {
                   for (std::size_t i = 0; i < out.size(); ++i) {
                     out[i] = trend_at(p.trend, static_cast<std::int64_t>(i + 1)) + p.noise_sd * rng.normal();
                   }
                 },
             },
             config.params());
}

Path sample_path(const ProcessConfig& config, std::int64_t n, RngSeed seed) {
  if (n <= 0) throw std::invalid_argument("sample_path: n must be >= 1, got " + std::to_string(n));
  std::vector<double> values(static_cast<std::size_t>(n));
  fill_path(config, seed, values);
  return Path(std::move(values), PathOrigin{config.label(), seed.base_seed, seed.replicate});
}

Remark3Moments remark3_exact_moments(std::int64_t t, std::int64_t s) {
  if (t <= 0 || s <= 0) throw std::invalid_argument("remark3_exact_moments: t and s must be >= 1");
  if (t == s) throw std::invalid_argument("remark3_exact_moments: pairwise entries need s != t");
  const auto tt = static_cast<double>(t);
  const auto ss = static_cast<double>(s);
  return {tt, tt * tt * tt * tt - tt * tt, tt * ss, 0.0};
}

double exact_var_an2_remark3(std::int64_t n) {
  if (n <= 0) throw std::invalid_argument("exact_var_an2_remark3: n must be >= 1");
  if (n > 1'000'000) throw std::invalid_argument("exact_var_an2_remark3: n must be <= 10^6");
  long double diagonal = 0.0L;  // sum of Var(X_t^2)
  long double cross = 0.0L;     // sum_{t<s} t s
  long double prefix = 0.0L;    // sum_{t<s} t
  for (std::int64_t s = 1; s <= n; ++s) {
    const auto x = static_cast<long double>(s);
    diagonal += x * x * x * x - x * x;
    cross += x * prefix;
    prefix += x;
  }
  const auto nn = static_cast<long double>(n);
  return static_cast<double>((diagonal + 4.0L * cross) / (nn * nn * nn * nn));
}

double exact_var_squared_deviation(const ProcessConfig& config, std::int64_t n) {
  if (config.family() == Family::Remark3) return exact_var_an2_remark3(n);
  const double var = exact_var_an(build_spec(config), n);
  return 2.0 * var * var;
}

}  // namespace ergodiag
