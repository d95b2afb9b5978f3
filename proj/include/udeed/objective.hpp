#pragma once

// The ensemble objective V = V_emp + gamma * V_div and its gradient with
// respect to every weight vector.
//
//   V_emp = 1/(mL) sum_k sum_i -BLH(f_k(x_i), y_i)
//   V_div = 2/(m(m-1)) sum_{p<q} d(f_p, f_q, D),   d = mean_{x in D} f_p(x) f_q(x)
//
// V_div is identically zero when D is the empty selector.

#include <span>
#include <string>
#include <vector>

#include "udeed/core.hpp"
#include "udeed/logistic.hpp"

namespace udeed {

enum class DiversitySelector { Empty, LabeledFeatures, Unlabeled };

/// The data set D over which pairwise prediction differences are measured.
class DiversitySet {
 public:
  static DiversitySet empty() { return DiversitySet(DiversitySelector::Empty, {}); }

  static DiversitySet of(std::vector<DenseVector> points, DiversitySelector selector = DiversitySelector::Unlabeled) {
    if (selector == DiversitySelector::Empty) return empty();
    if (points.empty()) throw Error(ErrorKind::EmptyInput, "diversity set D is empty");
    return DiversitySet(selector, std::move(points));
  }

  static DiversitySet select(DiversitySelector selector, const TrainingData& data) {
    switch (selector) {
      case DiversitySelector::Empty: return empty();
      case DiversitySelector::LabeledFeatures: return of(data.labeled_features(), selector);
      case DiversitySelector::Unlabeled:
        if (data.unlabeled().empty()) throw Error(ErrorKind::EmptyInput, "unlabeled set U is empty");
        return of(data.unlabeled(), selector);
    }
    return empty();
  }

  DiversitySelector selector() const noexcept { return selector_; }
  bool is_empty() const noexcept { return selector_ == DiversitySelector::Empty; }
  const std::vector<DenseVector>& points() const noexcept { return points_; }

 private:
  DiversitySet(DiversitySelector selector, std::vector<DenseVector> points)
      : selector_(selector), points_(std::move(points)) {}

  DiversitySelector selector_;
  std::vector<DenseVector> points_;
};

struct LossBreakdown {
  double v_total = 0.0;
  double v_emp = 0.0;
  double v_div = 0.0;
};

struct GradientSet {
  std::vector<DenseVector> per_classifier;
};

namespace detail {

inline void require_labeled(std::span<const LabeledExample> labeled) {
  if (labeled.empty()) throw Error(ErrorKind::EmptyInput, "labeled set L is empty");
}

inline void require_weights(std::span<const DenseVector> weights) {
  if (weights.empty()) throw Error(ErrorKind::EmptyInput, "no classifiers");
}

/// outputs[k][j] = f_k(points[j]).
inline std::vector<std::vector<double>> outputs(std::span<const DenseVector> weights,
                                                std::span<const DenseVector> points) {
  std::vector<std::vector<double>> out(weights.size(), std::vector<double>(points.size()));
  for (std::size_t k = 0; k < weights.size(); ++k) {
    for (std::size_t j = 0; j < points.size(); ++j) out[k][j] = output_from_score(dot(weights[k], points[j]));
  }
  return out;
}

inline double mean_product(const std::vector<double>& fp, const std::vector<double>& fq) {
  double s = 0.0;
  for (std::size_t j = 0; j < fp.size(); ++j) s += fp[j] * fq[j];
  return s / static_cast<double>(fp.size());
}

}  // namespace detail

inline double empirical_loss(std::span<const DenseVector> weights, std::span<const LabeledExample> labeled) {
  detail::require_weights(weights);
  detail::require_labeled(labeled);
  double s = 0.0;
  for (const auto& w : weights) {
    for (const auto& ex : labeled) s -= blh(w, ex.features, ex.label);
  }
  return s / (static_cast<double>(weights.size()) * static_cast<double>(labeled.size()));
}

inline double empirical_loss(const EnsembleModel& model, std::span<const LabeledExample> labeled) {
  return empirical_loss(model.weights(), labeled);
}

/// d(f_p, f_q, D): mean product of confidences over D. Larger means more agreement.
inline double pair_diversity(const DenseVector& wp, const DenseVector& wq, std::span<const DenseVector> points) {
  if (points.empty()) throw Error(ErrorKind::EmptyInput, "diversity set D is empty");
  double s = 0.0;
  for (const auto& x : points) s += base_output_f(wp, x) * base_output_f(wq, x);
  return s / static_cast<double>(points.size());
}

inline double diversity_loss(std::span<const DenseVector> weights, const DiversitySet& set) {
  const std::size_t m = weights.size();
  if (m < 2) throw Error(ErrorKind::InvalidArgument, "diversity needs at least two classifiers");
  if (set.is_empty()) return 0.0;
  const auto f = detail::outputs(weights, set.points());
  double s = 0.0;
  for (std::size_t p = 0; p + 1 < m; ++p) {
    for (std::size_t q = p + 1; q < m; ++q) s += detail::mean_product(f[p], f[q]);
  }
  return 2.0 / (static_cast<double>(m) * static_cast<double>(m - 1)) * s;
}

inline double diversity_loss(const EnsembleModel& model, const DiversitySet& set) {
  return diversity_loss(model.weights(), set);
}

inline LossBreakdown total_loss(std::span<const DenseVector> weights, std::span<const LabeledExample> labeled,
                                const DiversitySet& set, double gamma) {
  LossBreakdown out;
  out.v_emp = empirical_loss(weights, labeled);
  out.v_div = diversity_loss(weights, set);
  out.v_total = out.v_emp + gamma * out.v_div;
  return out;
}

inline LossBreakdown total_loss(const EnsembleModel& model, std::span<const LabeledExample> labeled,
                                const DiversitySet& set, double gamma) {
  return total_loss(model.weights(), labeled, set, gamma);
}

/// dV/dw_k for every k.
///
/// Empirical part: -1/(mL) sum_i dBLH/dw_k.
/// Diversity part: 2 gamma/(m(m-1)) sum_{k' != k} 1/(2|D|) sum_x f_k'(x) (1 - f_k(x)^2) x,
/// evaluated with the column sum S(x) = sum_k' f_k'(x) so the inner sum is S(x) - f_k(x).
inline GradientSet loss_gradient(std::span<const DenseVector> weights, std::span<const LabeledExample> labeled,
                                 const DiversitySet& set, double gamma) {
  detail::require_weights(weights);
  detail::require_labeled(labeled);
  const std::size_t m = weights.size();
  const std::size_t dim = weights.front().size();
  const double emp_scale = 1.0 / (static_cast<double>(m) * static_cast<double>(labeled.size()));

  std::vector<std::vector<double>> grads(m, std::vector<double>(dim, 0.0));
  for (std::size_t k = 0; k < m; ++k) {
    for (const auto& ex : labeled) {
      const double c = blh_gradient_coefficient(dot(weights[k], ex.features), ex.label);
      for (std::size_t i = 0; i < dim; ++i) grads[k][i] -= emp_scale * c * ex.features[i];
    }
  }

  if (!set.is_empty() && gamma != 0.0) {
    if (m < 2) throw Error(ErrorKind::InvalidArgument, "diversity needs at least two classifiers");
    const auto& points = set.points();
    const auto f = detail::outputs(weights, points);
    std::vector<double> column_sum(points.size(), 0.0);
    for (std::size_t k = 0; k < m; ++k) {
      for (std::size_t j = 0; j < points.size(); ++j) column_sum[j] += f[k][j];
    }
    const double div_scale = 2.0 * gamma / (static_cast<double>(m) * static_cast<double>(m - 1)) /
                             (2.0 * static_cast<double>(points.size()));
    for (std::size_t k = 0; k < m; ++k) {
      for (std::size_t j = 0; j < points.size(); ++j) {
        const double fk = f[k][j];
        const double c = div_scale * (column_sum[j] - fk) * (1.0 - fk * fk);
        const auto& x = points[j];
        for (std::size_t i = 0; i < dim; ++i) grads[k][i] += c * x[i];
      }
    }
  }

  GradientSet out;
  out.per_classifier.reserve(m);
  for (auto& g : grads) out.per_classifier.emplace_back(std::move(g));
  return out;
}

inline GradientSet loss_gradient(const EnsembleModel& model, std::span<const LabeledExample> labeled,
                                 const DiversitySet& set, double gamma) {
  return loss_gradient(model.weights(), labeled, set, gamma);
}

}  // namespace udeed
