#pragma once

// Markov, Chebyshev and Paley-Zygmund tail bounds as total functions with
// values in [0, 1].

#include <optional>

namespace ergodiag {

/// P(Z >= eps) <= E[Z] / eps for Z >= 0, clamped to 1.
double markov_bound(double mean, double eps);

/// P(|Z - E[Z]| >= eps) <= Var(Z) / eps^2, clamped to 1.
double chebyshev_bound(double variance, double eps);

/// P(Z >= eps) >= (E[Z] - eps)^2 / (Var(Z) + E[Z]^2) for Z >= 0 and
/// 0 <= eps <= E[Z]. The all-zero case (mean = variance = eps = 0) gives 0.
double paley_zygmund_lower(double mean, double variance, double eps);

/// P(Z >= theta E[Z]) >= (1 - theta)^2 E[Z]^2 / (Var(Z) + E[Z]^2), theta in (0, 1).
double paley_zygmund_theta(double mean, double variance, double theta);

struct BoundMoments {
  double mean = 0.0;
  double variance = 0.0;
  double second_moment = 0.0;
};

struct BoundReport {
  std::optional<double> markov;    // absent when the mean is negative
  double chebyshev = 0.0;
  std::optional<double> pz_lower;  // present only when eps <= mean
  double eps = 0.0;
  BoundMoments moments_used;
};

/// All three bounds for one threshold, from the first two moments of Z.
BoundReport bound_report(double mean, double variance, double eps);

}  // namespace ergodiag
