#pragma once

// Repeated-split experiment: for each run, split the data, build one bootstrap
// initialization, refine it with every requested variant, and score all
// methods on the shared test set.
//
// Seeds: run r (1-based) uses run_seed = derive_seed(master, r); the split
// uses derive_seed(run_seed, 0) and ensemble initialization uses
// derive_seed(run_seed, 1).

#include <algorithm>
#include <cctype>
#include <array>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "udeed/core.hpp"
#include "udeed/data.hpp"
#include "udeed/diversity.hpp"
#include "udeed/predict.hpp"
#include "udeed/random.hpp"
#include "udeed/stats.hpp"
#include "udeed/train.hpp"

namespace udeed {

enum class Method { LC, LCD, LCUD, Bagging };

inline constexpr std::array<Method, 4> kAllMethods = {Method::LC, Method::LCD, Method::LCUD, Method::Bagging};

inline const char* to_string(Method m) {
  switch (m) {
    case Method::LC: return "LC";
    case Method::LCD: return "LCD";
    case Method::LCUD: return "LCUD";
    case Method::Bagging: return "Bagging";
  }
  return "?";
}

inline Method method_from_string(const std::string& s) {
  std::string lower;
  for (char c : s) lower.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
  if (lower == "lc") return Method::LC;
  if (lower == "lcd") return Method::LCD;
  if (lower == "lcud" || lower == "udeed") return Method::LCUD;
  if (lower == "bagging") return Method::Bagging;
  throw Error(ErrorKind::InvalidArgument, "unknown method '" + s + "'");
}

enum class Measure { DIS, DFComplement, ENT, CFD };

inline constexpr std::array<Measure, 4> kAllMeasures = {Measure::DIS, Measure::DFComplement, Measure::ENT, Measure::CFD};

inline const char* to_string(Measure m) {
  switch (m) {
    case Measure::DIS: return "DIS";
    case Measure::DFComplement: return "1-DF";
    case Measure::ENT: return "ENT";
    case Measure::CFD: return "CFD";
  }
  return "?";
}

inline double get(const DiversityScores& s, Measure m) {
  switch (m) {
    case Measure::DIS: return s.dis;
    case Measure::DFComplement: return s.df_complement;
    case Measure::ENT: return s.ent;
    case Measure::CFD: return s.cfd;
  }
  return 0.0;
}

struct ExperimentOptions {
  TrainConfig config;
  std::size_t runs = 50;
  std::vector<Method> methods{kAllMethods.begin(), kAllMethods.end()};
  double test_fraction = 0.5;
  double labeled_fraction = 0.25;
  double alpha = 0.05;
  bool scale = false;
};

struct RunResult {
  std::size_t run = 0;
  std::uint64_t seed = 0;
  std::map<Method, double> accuracy;
  /// Present when LCUD is among the methods: scores on T after initialization and after descent.
  std::optional<DiversityScores> initial_diversity;
  std::optional<DiversityScores> final_diversity;
};

struct MethodSummary {
  Method method;
  SampleSummary accuracy;
};

struct MethodComparison {
  Method method;
  Method baseline;
  ComparisonVerdict verdict;
};

struct DiversityComparison {
  Measure measure;
  SampleSummary initial;
  SampleSummary final;
  ComparisonVerdict verdict;
};

struct ExperimentReport {
  std::string dataset;
  std::size_t rows = 0;
  std::size_t features = 0;
  ExperimentOptions options;
  std::vector<RunResult> runs;
  std::vector<MethodSummary> summaries;
  std::vector<MethodComparison> comparisons;
  std::vector<DiversityComparison> diversity;

  std::vector<double> accuracies(Method m) const {
    std::vector<double> out;
    out.reserve(runs.size());
    for (const auto& r : runs) out.push_back(r.accuracy.at(m));
    return out;
  }

  std::vector<double> diversity_values(Measure measure, bool final_snapshot) const {
    std::vector<double> out;
    for (const auto& r : runs) {
      const auto& s = final_snapshot ? r.final_diversity : r.initial_diversity;
      if (s) out.push_back(get(*s, measure));
    }
    return out;
  }

  const MethodSummary* summary(Method m) const {
    for (const auto& s : summaries) {
      if (s.method == m) return &s;
    }
    return nullptr;
  }

  const MethodComparison* comparison(Method baseline) const {
    for (const auto& c : comparisons) {
      if (c.baseline == baseline) return &c;
    }
    return nullptr;
  }
};

inline RunResult run_once(const RawDataset& data, const ExperimentOptions& options, std::size_t run) {
  const auto has = [&](Method m) {
    return std::find(options.methods.begin(), options.methods.end(), m) != options.methods.end();
  };
  RunResult result;
  result.run = run;
  result.seed = derive_seed(options.config.seed, run);

  const Split split =
      split_lut(data, SplitSpec{options.test_fraction, options.labeled_fraction, derive_seed(result.seed, 0)});
  const TrainingData training = split.training_data();

  TrainConfig config = options.config;
  config.seed = derive_seed(result.seed, 1);
  Rng rng(config.seed);
  const Initialization init = init_ensemble(split.labeled, config, rng);

  for (Method m : kAllMethods) {
    if (!has(m)) continue;
    if (m == Method::Bagging) {
      result.accuracy[m] = accuracy(init.model, split.test);
      continue;
    }
    config.variant = m == Method::LC ? Variant::LC : (m == Method::LCD ? Variant::LCD : Variant::LCUD);
    const TrainResult trained = refine(init.model, training, config);
    result.accuracy[m] = accuracy(trained.model, split.test);
    if (m == Method::LCUD) {
      result.initial_diversity = diversity_scores(init.model, split.test);
      result.final_diversity = diversity_scores(trained.model, split.test);
    }
  }
  return result;
}

inline ExperimentReport run_experiment(const RawDataset& dataset, const ExperimentOptions& options) {
  options.config.validate();
  if (options.runs < 2) throw Error(ErrorKind::InvalidArgument, "an experiment needs at least 2 runs");
  if (options.methods.empty()) throw Error(ErrorKind::InvalidArgument, "no methods selected");

  ExperimentReport report;
  report.dataset = dataset.name;
  report.rows = dataset.rows.size();
  report.features = dataset.dimension();
  report.options = options;
  std::sort(report.options.methods.begin(), report.options.methods.end());
  report.options.methods.erase(std::unique(report.options.methods.begin(), report.options.methods.end()),
                               report.options.methods.end());

  const RawDataset scaled = options.scale ? min_max_scale(dataset) : RawDataset{};
  const RawDataset& data = options.scale ? scaled : dataset;

  report.runs.reserve(options.runs);
  for (std::size_t r = 1; r <= options.runs; ++r) {
    try {
      report.runs.push_back(run_once(data, report.options, r));
    } catch (const Error& e) {
      throw Error(e.kind(), "run " + std::to_string(r) + ": " + e.message());
    }
  }

  for (Method m : report.options.methods) report.summaries.push_back({m, summarize(report.accuracies(m))});

  const bool has_lcud =
      std::find(report.options.methods.begin(), report.options.methods.end(), Method::LCUD) != report.options.methods.end();
  if (has_lcud) {
    const auto lcud = report.accuracies(Method::LCUD);
    for (Method m : report.options.methods) {
      if (m == Method::LCUD) continue;
      report.comparisons.push_back({Method::LCUD, m, paired_t_test(lcud, report.accuracies(m), options.alpha)});
    }
    for (Measure measure : kAllMeasures) {
      const auto initial = report.diversity_values(measure, false);
      const auto final = report.diversity_values(measure, true);
      report.diversity.push_back(
          {measure, summarize(initial), summarize(final), paired_t_test(final, initial, options.alpha)});
    }
  }
  return report;
}

}  // namespace udeed
