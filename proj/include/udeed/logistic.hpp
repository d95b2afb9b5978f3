#pragma once

// Logistic base learner: g(x) = 1/(1+exp(-w.x)), f(x) = 2g(x) - 1, and the
// binomial log-likelihood with its gradient in w.

#include <algorithm>
#include <cmath>
#include <vector>

#include "udeed/core.hpp"

namespace udeed {

inline constexpr double kProbabilityFloor = 1e-15;

/// ln(1 + e^z) without overflow.
inline double softplus(double z) noexcept { return std::max(z, 0.0) + std::log1p(std::exp(-std::abs(z))); }

inline double sigmoid(double z) noexcept {
  double g;
  if (z >= 0.0) {
    g = 1.0 / (1.0 + std::exp(-z));
  } else {
    const double e = std::exp(z);
    g = e / (1.0 + e);
  }
  return std::clamp(g, kProbabilityFloor, 1.0 - kProbabilityFloor);
}

/// Confidence in (-1, 1) for a given score w.x.
inline double output_from_score(double score) noexcept { return 2.0 * sigmoid(score) - 1.0; }

/// BLH for a given score; always <= 0.
inline double blh_from_score(double score, Label y) noexcept {
  const double yr = as_real(y);
  return -0.5 * (1.0 + yr) * softplus(-score) - 0.5 * (1.0 - yr) * softplus(score);
}

/// Scalar c with dBLH/dw = c * x.
inline double blh_gradient_coefficient(double score, Label y) noexcept {
  const double f = output_from_score(score);
  const double yr = as_real(y);
  return (1.0 + yr) * (1.0 - f) / 4.0 - (1.0 - yr) * (1.0 + f) / 4.0;
}

inline double logistic_g(const DenseVector& w, const DenseVector& x) { return sigmoid(dot(w, x)); }

inline double base_output_f(const DenseVector& w, const DenseVector& x) {
  return 2.0 * logistic_g(w, x) - 1.0;
}

inline double blh(const DenseVector& w, const DenseVector& x, Label y) { return blh_from_score(dot(w, x), y); }

inline DenseVector blh_gradient(const DenseVector& w, const DenseVector& x, Label y) {
  const double c = blh_gradient_coefficient(dot(w, x), y);
  std::vector<double> g(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) g[i] = c * x[i];
  return DenseVector(std::move(g));
}

}  // namespace udeed
