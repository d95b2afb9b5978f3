#include <gtest/gtest.h>

#include <sstream>

#include "support/synthetic.hpp"
#include "udeed/eval.hpp"
#include "udeed/io.hpp"

namespace udeed {
namespace {

ExperimentOptions small_options() {
  ExperimentOptions o;
  o.config.m = 4;
  o.config.seed = 3;
  o.runs = 3;
  return o;
}

TEST(RunExperiment, TwoRunsOneMethod) {
  const auto data = testing::two_gaussians(60, 3, 0.5, 1);
  auto o = small_options();
  o.runs = 2;
  o.methods = {Method::LC};
  const auto r = run_experiment(data, o);
  ASSERT_EQ(r.runs.size(), 2u);
  ASSERT_EQ(r.summaries.size(), 1u);
  const auto acc = r.accuracies(Method::LC);
  EXPECT_DOUBLE_EQ(r.summaries[0].accuracy.mean, (acc[0] + acc[1]) / 2.0);
  EXPECT_TRUE(r.comparisons.empty());
  EXPECT_TRUE(r.diversity.empty());
}

TEST(RunExperiment, SummariesRecomputeFromRuns) {
  const auto data = testing::two_gaussians(80, 4, 0.5, 2);
  const auto r = run_experiment(data, small_options());
  for (const auto& s : r.summaries) {
    const auto again = summarize(r.accuracies(s.method));
    EXPECT_EQ(again.mean, s.accuracy.mean);
    EXPECT_EQ(again.stddev, s.accuracy.stddev);
    for (double a : r.accuracies(s.method)) {
      EXPECT_GE(a, 0.0);
      EXPECT_LE(a, 1.0);
    }
  }
  EXPECT_EQ(r.comparisons.size(), 3u);
  ASSERT_EQ(r.diversity.size(), 4u);
  for (const auto& run : r.runs) {
    ASSERT_TRUE(run.initial_diversity && run.final_diversity);
    for (Measure m : kAllMeasures) {
      EXPECT_GE(get(*run.initial_diversity, m), 0.0);
      EXPECT_LE(get(*run.final_diversity, m), 1.0);
    }
  }
}

TEST(RunExperiment, GammaZeroTiesLcudWithLc) {
  const auto data = testing::two_gaussians(80, 4, 0.5, 3);
  auto o = small_options();
  o.config.gamma = 0.0;
  o.methods = {Method::LC, Method::LCUD};
  const auto r = run_experiment(data, o);
  EXPECT_EQ(r.accuracies(Method::LC), r.accuracies(Method::LCUD));
  ASSERT_NE(r.comparison(Method::LC), nullptr);
  EXPECT_EQ(r.comparison(Method::LC)->verdict.outcome, Outcome::Tie);
}

TEST(RunExperiment, BaggingScoresTheInitialEnsemble) {
  const auto data = testing::two_gaussians(80, 4, 0.5, 4);
  auto o = small_options();
  o.methods = {Method::Bagging};
  const auto r = run_experiment(data, o);

  const auto seed = derive_seed(o.config.seed, 1);
  const auto split = split_lut(data, SplitSpec{0.5, 0.25, derive_seed(seed, 0)});
  TrainConfig c = o.config;
  Rng rng(derive_seed(seed, 1));
  EXPECT_EQ(r.runs[0].accuracy.at(Method::Bagging), accuracy(bagging_train(split.labeled, c, rng), split.test));
}

TEST(RunExperiment, RejectsBadArguments) {
  const auto data = testing::two_gaussians(40, 2, 0.5, 5);
  auto o = small_options();
  o.runs = 1;
  EXPECT_THROW(run_experiment(data, o), Error);
  o = small_options();
  o.methods.clear();
  EXPECT_THROW(run_experiment(data, o), Error);
  o = small_options();
  o.labeled_fraction = 1.0;
  try {
    run_experiment(data, o);
    FAIL() << "expected an error for LCUD without U";
  } catch (const Error& e) {
    EXPECT_NE(std::string(e.what()).find("run 1"), std::string::npos);
  }
}

TEST(RunExperiment, ReportsAreByteIdentical) {
  const auto data = testing::two_gaussians(60, 3, 0.5, 6);
  const auto o = small_options();
  std::ostringstream a, b, ra, rb;
  const auto r1 = run_experiment(data, o);
  const auto r2 = run_experiment(data, o);
  write_report_text(a, r1);
  write_report_text(b, r2);
  write_report_records(ra, r1);
  write_report_records(rb, r2);
  EXPECT_EQ(a.str(), b.str());
  EXPECT_EQ(ra.str(), rb.str());
  EXPECT_NE(a.str().find("LCUD vs LC"), std::string::npos);
  EXPECT_NE(ra.str().find("\"initial_diversity\""), std::string::npos);
}

TEST(MethodNames, ParseCaseInsensitively) {
  EXPECT_EQ(method_from_string("LCUD"), Method::LCUD);
  EXPECT_EQ(method_from_string("bagging"), Method::Bagging);
  EXPECT_THROW(method_from_string("adaboost"), Error);
}

}  // namespace
}  // namespace udeed
