#pragma once

#include <cmath>
#include <span>
#include <string>
#include <vector>

#include <boost/math/special_functions/beta.hpp>

#include "udeed/core.hpp"

namespace udeed {

enum class Outcome { Win, Tie, Loss };

inline const char* to_string(Outcome o) {
  switch (o) {
    case Outcome::Win: return "win";
    case Outcome::Tie: return "tie";
    case Outcome::Loss: return "loss";
  }
  return "?";
}

struct ComparisonVerdict {
  Outcome outcome = Outcome::Tie;
  double t_statistic = 0.0;
  double p_value = 1.0;
  double mean_difference = 0.0;
};

/// Two-tailed p-value of Student's t with `df` degrees of freedom:
/// I_{df/(df+t^2)}(df/2, 1/2).
inline double t_distribution_p(double t, unsigned df) {
  if (df < 1) throw Error(ErrorKind::InvalidArgument, "t distribution needs df >= 1");
  if (std::isnan(t)) throw Error(ErrorKind::Numeric, "t statistic is NaN");
  if (std::isinf(t)) return 0.0;
  const double nu = static_cast<double>(df);
  const double x = nu / (nu + t * t);
  if (x >= 1.0) return 1.0;
  return boost::math::ibeta(nu / 2.0, 0.5, x);
}

struct SampleSummary {
  double mean = 0.0;
  /// n - 1 denominator; 0 for a single value.
  double stddev = 0.0;
};

inline SampleSummary summarize(std::span<const double> xs) {
  if (xs.empty()) throw Error(ErrorKind::EmptyInput, "cannot summarize an empty sample");
  double s = 0.0;
  for (double x : xs) s += x;
  const double mean = s / static_cast<double>(xs.size());
  if (xs.size() < 2) return {mean, 0.0};
  double ss = 0.0;
  for (double x : xs) ss += (x - mean) * (x - mean);
  return {mean, std::sqrt(ss / static_cast<double>(xs.size() - 1))};
}

/// Paired two-tailed t-test of a against b. Win means a is significantly larger.
/// A zero-variance difference decides by the sign of its mean.
inline ComparisonVerdict paired_t_test(std::span<const double> a, std::span<const double> b, double alpha = 0.05) {
  if (a.size() != b.size()) {
    throw Error(ErrorKind::DimensionMismatch, "paired t-test needs equal-length samples");
  }
  if (a.size() < 2) throw Error(ErrorKind::InvalidArgument, "paired t-test needs at least two pairs");

  std::vector<double> d(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) d[i] = a[i] - b[i];
  const auto [mean, sd] = summarize(d);
  const double n = static_cast<double>(d.size());

  ComparisonVerdict v;
  v.mean_difference = mean;
  if (sd == 0.0) {
    if (mean == 0.0) return v;
    v.t_statistic = mean > 0.0 ? INFINITY : -INFINITY;
    v.p_value = 0.0;
    v.outcome = mean > 0.0 ? Outcome::Win : Outcome::Loss;
    return v;
  }
  v.t_statistic = mean / (sd / std::sqrt(n));
  v.p_value = t_distribution_p(v.t_statistic, static_cast<unsigned>(d.size() - 1));
  if (v.p_value <= alpha) v.outcome = mean > 0.0 ? Outcome::Win : Outcome::Loss;
  return v;
}

}  // namespace udeed
