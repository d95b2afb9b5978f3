#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace udeed {

/// Category of a failure raised by the library. Every error the library
/// throws is an `Error` carrying one of these.
enum class ErrorKind {
  DimensionMismatch,
  NonFinite,
  EmptyInput,
  InvalidArgument,
  Parse,
  Numeric,
  Io,
};

inline const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::DimensionMismatch: return "dimension mismatch";
    case ErrorKind::NonFinite: return "non-finite value";
    case ErrorKind::EmptyInput: return "empty input";
    case ErrorKind::InvalidArgument: return "invalid argument";
    case ErrorKind::Parse: return "parse error";
    case ErrorKind::Numeric: return "numeric error";
    case ErrorKind::Io: return "i/o error";
  }
  return "error";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind), message_(what) {}

  ErrorKind kind() const noexcept { return kind_; }
  /// The message without the kind prefix.
  const std::string& message() const noexcept { return message_; }

 private:
  ErrorKind kind_;
  std::string message_;
};

/// Fixed-length vector of finite doubles. Used for both weight vectors and
/// bias-augmented feature vectors.
class DenseVector {
 public:
  DenseVector() = default;

  explicit DenseVector(std::vector<double> values) : values_(std::move(values)) {
    for (double v : values_) {
      if (!std::isfinite(v)) throw Error(ErrorKind::NonFinite, "DenseVector element is not finite");
    }
  }

  DenseVector(std::initializer_list<double> values) : DenseVector(std::vector<double>(values)) {}

  static DenseVector zeros(std::size_t n) { return DenseVector(std::vector<double>(n, 0.0)); }

  std::size_t size() const noexcept { return values_.size(); }
  double operator[](std::size_t i) const noexcept { return values_[i]; }
  std::span<const double> values() const noexcept { return values_; }

  auto begin() const noexcept { return values_.begin(); }
  auto end() const noexcept { return values_.end(); }

  friend bool operator==(const DenseVector&, const DenseVector&) = default;

 private:
  std::vector<double> values_;
};

enum class Label : int { Negative = -1, Positive = +1 };

inline double as_real(Label y) noexcept { return static_cast<double>(static_cast<int>(y)); }

inline Label label_from_int(int v) {
  if (v == 1) return Label::Positive;
  if (v == -1) return Label::Negative;
  throw Error(ErrorKind::InvalidArgument, "label must be -1 or +1, got " + std::to_string(v));
}

/// A bias-augmented feature vector with its class.
struct LabeledExample {
  DenseVector features;
  Label label = Label::Positive;

  friend bool operator==(const LabeledExample&, const LabeledExample&) = default;
};

inline double dot(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) {
    throw Error(ErrorKind::DimensionMismatch,
                "dot of lengths " + std::to_string(a.size()) + " and " + std::to_string(b.size()));
  }
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

inline double dot(const DenseVector& a, const DenseVector& b) { return dot(a.values(), b.values()); }

/// Appends the constant 1 that absorbs the bias term into the weight vector.
inline DenseVector augment_bias(std::span<const double> raw) {
  std::vector<double> out(raw.begin(), raw.end());
  out.push_back(1.0);
  for (double v : out) {
    if (!std::isfinite(v)) throw Error(ErrorKind::NonFinite, "feature value is not finite");
  }
  return DenseVector(std::move(out));
}

/// Labeled set L plus unlabeled set U. All vectors are bias-augmented and share
/// `dimension()`. The label-stripped view of L is produced on demand.
class TrainingData {
 public:
  TrainingData(std::vector<LabeledExample> labeled, std::vector<DenseVector> unlabeled)
      : labeled_(std::move(labeled)), unlabeled_(std::move(unlabeled)) {
    if (!labeled_.empty()) {
      dimension_ = labeled_.front().features.size();
    } else if (!unlabeled_.empty()) {
      dimension_ = unlabeled_.front().size();
    }
    for (const auto& ex : labeled_) check_dim(ex.features);
    for (const auto& x : unlabeled_) check_dim(x);
  }

  const std::vector<LabeledExample>& labeled() const noexcept { return labeled_; }
  const std::vector<DenseVector>& unlabeled() const noexcept { return unlabeled_; }
  std::size_t dimension() const noexcept { return dimension_; }

  std::vector<DenseVector> labeled_features() const {
    std::vector<DenseVector> out;
    out.reserve(labeled_.size());
    for (const auto& ex : labeled_) out.push_back(ex.features);
    return out;
  }

 private:
  void check_dim(const DenseVector& v) const {
    if (v.size() != dimension_) {
      throw Error(ErrorKind::DimensionMismatch, "training vectors must share one dimension");
    }
  }

  std::vector<LabeledExample> labeled_;
  std::vector<DenseVector> unlabeled_;
  std::size_t dimension_ = 0;
};

/// m >= 2 logistic base classifiers, one weight vector each.
class EnsembleModel {
 public:
  explicit EnsembleModel(std::vector<DenseVector> weights) : weights_(std::move(weights)) {
    if (weights_.size() < 2) {
      throw Error(ErrorKind::InvalidArgument, "an ensemble needs at least two classifiers");
    }
    for (const auto& w : weights_) {
      if (w.size() != weights_.front().size()) {
        throw Error(ErrorKind::DimensionMismatch, "ensemble weight vectors differ in length");
      }
    }
  }

  std::size_t size() const noexcept { return weights_.size(); }
  std::size_t dimension() const noexcept { return weights_.front().size(); }
  const std::vector<DenseVector>& weights() const noexcept { return weights_; }
  const DenseVector& operator[](std::size_t k) const noexcept { return weights_[k]; }

  friend bool operator==(const EnsembleModel&, const EnsembleModel&) = default;

 private:
  std::vector<DenseVector> weights_;
};

enum class Variant { LC, LCD, LCUD };

inline const char* to_string(Variant v) {
  switch (v) {
    case Variant::LC: return "LC";
    case Variant::LCD: return "LCD";
    case Variant::LCUD: return "LCUD";
  }
  return "?";
}

struct TrainConfig {
  std::size_t m = 20;
  double gamma = 1.0;
  double lambda = 1.0;
  double learning_rate = 0.25;
  std::size_t max_steps = 25;
  std::size_t init_max_steps = 100;
  Variant variant = Variant::LCUD;
  std::uint64_t seed = 0;

  void validate() const {
    if (m < 2) throw Error(ErrorKind::InvalidArgument, "m must be at least 2");
    if (!(gamma >= 0.0) || !std::isfinite(gamma)) {
      throw Error(ErrorKind::InvalidArgument, "gamma must be finite and non-negative");
    }
    if (!(lambda >= 0.0) || !std::isfinite(lambda)) {
      throw Error(ErrorKind::InvalidArgument, "lambda must be finite and non-negative");
    }
    if (!(learning_rate > 0.0) || !std::isfinite(learning_rate)) {
      throw Error(ErrorKind::InvalidArgument, "learning rate must be finite and positive");
    }
    if (init_max_steps == 0) throw Error(ErrorKind::InvalidArgument, "init_max_steps must be positive");
  }
};

}  // namespace udeed
