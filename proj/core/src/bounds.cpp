#include "ergodiag/bounds.hpp"

#include <algorithm>
#include <stdexcept>

namespace ergodiag {

double markov_bound(double mean, double eps) {
  if (!(mean >= 0.0)) throw std::invalid_argument("markov_bound: mean must be >= 0");
  if (!(eps > 0.0)) throw std::invalid_argument("markov_bound: eps must be > 0");
  return std::min(1.0, mean / eps);
}

double chebyshev_bound(double variance, double eps) {
  if (!(variance >= 0.0)) throw std::invalid_argument("chebyshev_bound: variance must be >= 0");
  if (!(eps > 0.0)) throw std::invalid_argument("chebyshev_bound: eps must be > 0");
  return std::min(1.0, variance / (eps * eps));
}

double paley_zygmund_lower(double mean, double variance, double eps) {
  if (!(mean >= 0.0)) throw std::invalid_argument("paley_zygmund_lower: mean must be >= 0");
  if (!(variance >= 0.0)) throw std::invalid_argument("paley_zygmund_lower: variance must be >= 0");
  if (!(eps >= 0.0)) throw std::invalid_argument("paley_zygmund_lower: eps must be >= 0");
  if (eps > mean) throw std::invalid_argument("paley_zygmund_lower: eps must not exceed the mean");
  const double denom = variance + mean * mean;
  if (denom == 0.0) return 0.0;
  const double gap = mean - eps;
  return std::clamp(gap * gap / denom, 0.0, 1.0);
}

double paley_zygmund_theta(double mean, double variance, double theta) {
  if (!(theta > 0.0 && theta < 1.0)) {
    throw std::invalid_argument("paley_zygmund_theta: theta must lie in (0, 1)");
  }
  if (!(mean >= 0.0)) throw std::invalid_argument("paley_zygmund_theta: mean must be >= 0");
  if (!(variance >= 0.0)) throw std::invalid_argument("paley_zygmund_theta: variance must be >= 0");
  const double m2 = mean * mean;
  const double denom = variance + m2;
  if (denom == 0.0) return 0.0;
  return std::clamp((1.0 - theta) * (1.0 - theta) * m2 / denom, 0.0, 1.0);
}

BoundReport bound_report(double mean, double variance, double eps) {
  BoundReport r;
  r.eps = eps;
  r.moments_used = {mean, variance, variance + mean * mean};
  if (mean >= 0.0) r.markov = markov_bound(mean, eps);
  r.chebyshev = chebyshev_bound(variance, eps);
  if (mean >= 0.0 && eps <= mean) r.pz_lower = paley_zygmund_lower(mean, variance, eps);
  return r;
}

}  // namespace ergodiag
