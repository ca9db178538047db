#pragma once

// Test-only reference computations. Nothing here calls into the library's
// numeric paths; each oracle is a direct, slow evaluation of a definition.

#include <cmath>
#include <cstdint>
#include <functional>
#include <map>
#include <random>
#include <vector>

namespace oracle {

// Brute-force sum over the full n x n covariance matrix, plain row-major.
inline double double_sum(const std::function<double(std::int64_t, std::int64_t)>& cov, std::int64_t n) {
  double total = 0.0;
  for (std::int64_t t = 1; t <= n; ++t)
    for (std::int64_t s = 1; s <= n; ++s) total += cov(t, s);
  return total;
}

inline double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); }

// Var(A_n^2) for the heavy-tailed independent family via the exact
// distribution of S_n = sum X_t, built by convolving one coordinate at a time.
inline double remark3_var_an2_by_convolution(int n) {
  std::map<long double, long double> dist{{0.0L, 1.0L}};
  for (int t = 1; t <= n; ++t) {
    const long double tt = t;
    const long double p = 1.0L / (tt * tt);
    const long double mag = std::pow(tt, 1.5L);
    std::map<long double, long double> next;
    for (const auto& [value, prob] : dist) {
      if (1.0L - p > 0.0L) next[value] += prob * (1.0L - p);
      next[value + mag] += prob * p / 2.0L;
      next[value - mag] += prob * p / 2.0L;
    }
    dist = std::move(next);
  }
  long double m2 = 0.0L, m4 = 0.0L;
  for (const auto& [value, prob] : dist) {
    m2 += prob * value * value;
    m4 += prob * value * value * value * value;
  }
  const long double n4 = static_cast<long double>(n) * n * n * n;
  return static_cast<double>((m4 - m2 * m2) / n4);
}

// Symmetric eigenvalues by cyclic Jacobi rotation, small matrices only.
inline std::vector<double> symmetric_eigenvalues(std::vector<std::vector<double>> a) {
  const std::size_t n = a.size();
  for (int sweep = 0; sweep < 100; ++sweep) {
    double off = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) off += a[i][j] * a[i][j];
    if (off < 1e-30) break;
    for (std::size_t p = 0; p < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        if (std::abs(a[p][q]) < 1e-300) continue;
        const double theta = (a[q][q] - a[p][p]) / (2.0 * a[p][q]);
        const double t = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0), s = t * c;
        for (std::size_t k = 0; k < n; ++k) {
          const double akp = a[k][p], akq = a[k][q];
          a[k][p] = c * akp - s * akq;
          a[k][q] = s * akp + c * akq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double apk = a[p][k], aqk = a[q][k];
          a[p][k] = c * apk - s * aqk;
          a[q][k] = s * apk + c * aqk;
        }
      }
    }
  }
  std::vector<double> ev(n);
  for (std::size_t i = 0; i < n; ++i) ev[i] = a[i][i];
  return ev;
}

}  // namespace oracle
