#pragma once

// Ensemble construction: bootstrap initialization, fixed-rate gradient descent
// on the ensemble objective, and the LC / LCD / LCUD training schedules.

#include <array>
#include <cmath>
#include <span>
#include <string>
#include <vector>

#include "udeed/core.hpp"
#include "udeed/data.hpp"
#include "udeed/logistic.hpp"
#include "udeed/objective.hpp"
#include "udeed/random.hpp"

namespace udeed {

struct Initialization {
  EnsembleModel model;
  /// Set when L holds a single class; the classifiers then drift toward a constant output.
  bool single_class = false;
};

namespace detail {

inline bool has_both_classes(std::span<const LabeledExample> labeled) {
  bool pos = false, neg = false;
  for (const auto& ex : labeled) (ex.label == Label::Positive ? pos : neg) = true;
  return pos && neg;
}

/// 1/2 ||w||^2 + lambda * sum_i -BLH(f(x_i), y_i)
inline double regularized_nll(std::span<const double> w, std::span<const LabeledExample> sample, double lambda) {
  double reg = 0.0;
  for (double v : w) reg += v * v;
  double nll = 0.0;
  for (const auto& ex : sample) nll -= blh_from_score(dot(w, ex.features.values()), ex.label);
  return 0.5 * reg + lambda * nll;
}

/// Batch gradient descent on the regularized likelihood, starting from zero.
/// The step starts at `learning_rate` and is halved whenever a step fails to
/// lower the objective; descent ends after `max_steps` accepted steps, when the
/// accepted improvement drops below 1e-8, or when the step underflows.
inline DenseVector fit_regularized_logistic(std::span<const LabeledExample> sample, std::size_t dim, double lambda,
                                            double learning_rate, std::size_t max_steps) {
  constexpr double kMinImprovement = 1e-8;
  constexpr int kMaxHalvings = 60;

  std::vector<double> w(dim, 0.0);
  std::vector<double> grad(dim), trial(dim);
  double objective = regularized_nll(w, sample, lambda);
  double rate = learning_rate;

  for (std::size_t step = 0; step < max_steps; ++step) {
    for (std::size_t i = 0; i < dim; ++i) grad[i] = w[i];
    for (const auto& ex : sample) {
      const double c = blh_gradient_coefficient(dot(w, ex.features.values()), ex.label);
      for (std::size_t i = 0; i < dim; ++i) grad[i] -= lambda * c * ex.features[i];
    }

    bool accepted = false;
    double next = objective;
    for (int h = 0; h <= kMaxHalvings; ++h) {
      for (std::size_t i = 0; i < dim; ++i) trial[i] = w[i] - rate * grad[i];
      next = regularized_nll(trial, sample, lambda);
      if (std::isfinite(next) && next < objective) {
        accepted = true;
        break;
      }
      rate *= 0.5;
    }
    if (!accepted) break;

    w.swap(trial);
    const double improvement = objective - next;
    objective = next;
    if (improvement < kMinImprovement) break;
  }
  return DenseVector(std::move(w));
}

}  // namespace detail

/// Trains each of the m classifiers on its own bootstrap sample of L.
inline Initialization init_ensemble(std::span<const LabeledExample> labeled, const TrainConfig& config, Rng& rng) {
  config.validate();
  if (labeled.empty()) throw Error(ErrorKind::EmptyInput, "labeled set L is empty");
  const std::size_t dim = labeled.front().features.size();

  std::vector<DenseVector> weights;
  weights.reserve(config.m);
  for (std::size_t k = 0; k < config.m; ++k) {
    const auto sample = bootstrap_sample(labeled, rng);
    weights.push_back(detail::fit_regularized_logistic(sample, dim, config.lambda, config.learning_rate,
                                                       config.init_max_steps));
  }
  return Initialization{EnsembleModel(std::move(weights)), !detail::has_both_classes(labeled)};
}

struct DescentOptions {
  double gamma = 1.0;
  double learning_rate = 0.25;
  std::size_t max_steps = 25;

  static DescentOptions from(const TrainConfig& c) { return {c.gamma, c.learning_rate, c.max_steps}; }
};

struct DescentResult {
  EnsembleModel model;
  /// Updates that were kept.
  std::size_t accepted_steps = 0;
  /// Updates that were computed, including a final rolled-back one.
  std::size_t attempted_steps = 0;
  /// Loss of the starting model followed by the loss after each accepted step.
  std::vector<LossBreakdown> trace;
};

/// Simultaneous fixed-rate gradient descent on all weight vectors.
///
/// Stops at the first update after which V does not strictly decrease, or,
/// while the diversity term is active (non-empty D and gamma > 0), after which
/// V_div does not strictly decrease. That last update is discarded.
inline DescentResult descend(const EnsembleModel& start, std::span<const LabeledExample> labeled,
                             const DiversitySet& set, const DescentOptions& options) {
  const bool diversity_active = !set.is_empty() && options.gamma > 0.0;
  std::vector<DenseVector> current = start.weights();
  LossBreakdown loss = total_loss(current, labeled, set, options.gamma);
  if (!std::isfinite(loss.v_total)) throw Error(ErrorKind::Numeric, "non-finite loss at step 0");

  DescentResult result{start, 0, 0, {loss}};
  for (std::size_t step = 1; step <= options.max_steps; ++step) {
    result.attempted_steps = step;
    const GradientSet grad = loss_gradient(current, labeled, set, options.gamma);

    std::vector<DenseVector> next;
    next.reserve(current.size());
    for (std::size_t k = 0; k < current.size(); ++k) {
      std::vector<double> w(current[k].begin(), current[k].end());
      const auto& g = grad.per_classifier[k];
      for (std::size_t i = 0; i < w.size(); ++i) {
        w[i] -= options.learning_rate * g[i];
        if (!std::isfinite(w[i])) {
          throw Error(ErrorKind::Numeric, "non-finite weight at step " + std::to_string(step));
        }
      }
      next.emplace_back(std::move(w));
    }

    const LossBreakdown candidate = total_loss(next, labeled, set, options.gamma);
    if (!std::isfinite(candidate.v_total) || !std::isfinite(candidate.v_div)) {
      throw Error(ErrorKind::Numeric, "non-finite loss at step " + std::to_string(step));
    }
    const bool total_improved = loss.v_total - candidate.v_total > 0.0;
    const bool div_improved = loss.v_div - candidate.v_div > 0.0;
    if (!total_improved || (diversity_active && !div_improved)) break;

    current = std::move(next);
    loss = candidate;
    result.trace.push_back(loss);
    result.accepted_steps = step;
  }
  result.model = EnsembleModel(std::move(current));
  return result;
}

struct StageReport {
  DiversitySelector selector = DiversitySelector::Empty;
  std::size_t accepted_steps = 0;
  std::size_t attempted_steps = 0;
  std::vector<LossBreakdown> trace;
};

struct TrainResult {
  EnsembleModel initial;
  EnsembleModel model;
  std::array<StageReport, 2> stages;
  bool single_class = false;
};

/// Diversity sets of the two descent stages: LC (empty, empty),
/// LCD (L-features, L-features), LCUD (L-features, U).
inline std::array<DiversitySelector, 2> stage_selectors(Variant variant) {
  switch (variant) {
    case Variant::LC: return {DiversitySelector::Empty, DiversitySelector::Empty};
    case Variant::LCD: return {DiversitySelector::LabeledFeatures, DiversitySelector::LabeledFeatures};
    case Variant::LCUD: return {DiversitySelector::LabeledFeatures, DiversitySelector::Unlabeled};
  }
  return {DiversitySelector::Empty, DiversitySelector::Empty};
}

/// Runs the variant's descent schedule from an already initialized ensemble.
inline TrainResult refine(const EnsembleModel& initial, const TrainingData& data, const TrainConfig& config) {
  config.validate();
  if (data.labeled().empty()) throw Error(ErrorKind::EmptyInput, "labeled set L is empty");
  if (initial.dimension() != data.dimension()) {
    throw Error(ErrorKind::DimensionMismatch, "initial ensemble does not match the data dimension");
  }
  if (config.variant == Variant::LCUD && data.unlabeled().empty()) {
    throw Error(ErrorKind::EmptyInput, "LCUD requires a non-empty unlabeled set U");
  }

  TrainResult result{initial, initial, {}, !detail::has_both_classes(data.labeled())};
  const auto selectors = stage_selectors(config.variant);
  const auto options = DescentOptions::from(config);
  for (std::size_t s = 0; s < selectors.size(); ++s) {
    const DiversitySet set = DiversitySet::select(selectors[s], data);
    DescentResult stage = descend(result.model, data.labeled(), set, options);
    result.stages[s] = StageReport{selectors[s], stage.accepted_steps, stage.attempted_steps, std::move(stage.trace)};
    result.model = std::move(stage.model);
  }
  return result;
}

/// Bootstrap initialization seeded by `config.seed`, then the variant's descent schedule.
inline TrainResult train(const TrainingData& data, const TrainConfig& config) {
  config.validate();
  if (data.labeled().empty()) throw Error(ErrorKind::EmptyInput, "labeled set L is empty");
  if (config.variant == Variant::LCUD && data.unlabeled().empty()) {
    throw Error(ErrorKind::EmptyInput, "LCUD requires a non-empty unlabeled set U");
  }
  Rng rng(config.seed);
  const Initialization init = init_ensemble(data.labeled(), config, rng);
  return refine(init.model, data, config);
}

/// Bagging baseline: the bootstrap-initialized ensemble with no further descent.
inline EnsembleModel bagging_train(std::span<const LabeledExample> labeled, const TrainConfig& config, Rng& rng) {
  return init_ensemble(labeled, config, rng).model;
}

}  // namespace udeed
