#pragma once

#include <span>

#include "udeed/core.hpp"
#include "udeed/logistic.hpp"

namespace udeed {

struct Prediction {
  Label label = Label::Positive;
  /// Sum of base confidences; |margin| <= m.
  double margin = 0.0;
};

/// sign with sign(0) = +1.
inline Label sign_label(double v) noexcept { return v >= 0.0 ? Label::Positive : Label::Negative; }

inline void require_dimension(const EnsembleModel& model, const DenseVector& z) {
  if (z.size() != model.dimension()) {
    throw Error(ErrorKind::DimensionMismatch, "input has " + std::to_string(z.size()) + " values, model expects " +
                                                  std::to_string(model.dimension()));
  }
}

/// Weighted vote: the sign of sum_k f_k(z).
inline Prediction predict(const EnsembleModel& model, const DenseVector& z) {
  require_dimension(model, z);
  double margin = 0.0;
  for (const auto& w : model.weights()) margin += base_output_f(w, z);
  return Prediction{sign_label(margin), margin};
}

/// Unweighted majority vote over sign(f_k(z)). Diagnostic only; evaluation uses `predict`.
inline Prediction predict_majority(const EnsembleModel& model, const DenseVector& z) {
  require_dimension(model, z);
  double votes = 0.0;
  for (const auto& w : model.weights()) votes += as_real(sign_label(base_output_f(w, z)));
  return Prediction{sign_label(votes), votes};
}

inline double accuracy(const EnsembleModel& model, std::span<const LabeledExample> test) {
  if (test.empty()) throw Error(ErrorKind::EmptyInput, "test set is empty");
  std::size_t correct = 0;
  for (const auto& ex : test) {
    if (predict(model, ex.features).label == ex.label) ++correct;
  }
  return static_cast<double>(correct) / static_cast<double>(test.size());
}

inline double error_rate(const EnsembleModel& model, std::span<const LabeledExample> test) {
  if (test.empty()) throw Error(ErrorKind::EmptyInput, "test set is empty");
  std::size_t wrong = 0;
  for (const auto& ex : test) {
    if (predict(model, ex.features).label != ex.label) ++wrong;
  }
  return static_cast<double>(wrong) / static_cast<double>(test.size());
}

}  // namespace udeed
