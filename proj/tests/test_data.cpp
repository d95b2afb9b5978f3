#include <gtest/gtest.h>

#include <algorithm>
#include <functional>
#include <sstream>

#include "support/synthetic.hpp"
#include "udeed/data.hpp"

namespace udeed {
namespace {

RawDataset csv(const std::string& text) {
  std::istringstream in(text);
  return parse_csv(in);
}

RawDataset sparse(const std::string& text) {
  std::istringstream in(text);
  return parse_sparse(in);
}

std::string error_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.what();
  }
  return {};
}

TEST(ParseCsv, BasicRows) {
  const auto d = csv("+1,0.5,1.2\n-1,0.1,0.0");
  ASSERT_EQ(d.rows.size(), 2u);
  EXPECT_EQ(d.dimension(), 2u);
  EXPECT_EQ(d.rows[0].label, Label::Positive);
  EXPECT_EQ(d.rows[1].label, Label::Negative);
  EXPECT_EQ(d.rows[0].features, (std::vector<double>{0.5, 1.2}));
}

TEST(ParseCsv, ZeroOneLabels) {
  const auto d = csv("0,1.0\n1,2.0\n");
  EXPECT_EQ(d.rows[0].label, Label::Negative);
  EXPECT_EQ(d.rows[1].label, Label::Positive);
}

TEST(ParseCsv, CommentsAndBlankLinesSkipped) {
  const auto d = csv("# header\n\n+1, 1.0 ,2\r\n  # note\n-1,3,4\n");
  ASSERT_EQ(d.rows.size(), 2u);
  EXPECT_EQ(d.rows[0].features, (std::vector<double>{1.0, 2.0}));
}

TEST(ParseCsv, RaggedRowReportsLine) {
  const auto msg = error_of([] { csv("+1,1.0\n+1,1.0,2.0"); });
  EXPECT_NE(msg.find("line 2"), std::string::npos) << msg;
}

TEST(ParseCsv, RejectsBadFields) {
  EXPECT_NE(error_of([] { csv("+1,abc"); }).find("line 1"), std::string::npos);
  EXPECT_NE(error_of([] { csv("2,1.0"); }).find("label"), std::string::npos);
  EXPECT_NE(error_of([] { csv("+1,1.0\n-1,nan"); }).find("line 2"), std::string::npos);
  EXPECT_FALSE(error_of([] { csv("+1,1.0,"); }).empty());
}

TEST(ParseSparse, Densifies) {
  const auto d = sparse("+1 1:0.5 3:2.0");
  ASSERT_EQ(d.rows.size(), 1u);
  EXPECT_EQ(d.rows[0].features, (std::vector<double>{0.5, 0.0, 2.0}));
}

TEST(ParseSparse, EmptyFeatureLineAndCommonDimension) {
  const auto d = sparse("-1\n+1 2:1\n");
  ASSERT_EQ(d.rows.size(), 2u);
  EXPECT_EQ(d.rows[0].features, (std::vector<double>{0.0, 0.0}));
  EXPECT_EQ(d.rows[0].label, Label::Negative);
}

TEST(ParseSparse, RejectsDuplicateAndDescendingIndices) {
  EXPECT_NE(error_of([] { sparse("+1 2:1 2:3"); }).find("duplicate"), std::string::npos);
  EXPECT_NE(error_of([] { sparse("+1 1:1\n+1 3:1 2:3"); }).find("line 2"), std::string::npos);
  EXPECT_NE(error_of([] { sparse("+1 0:1"); }).find("index"), std::string::npos);
  EXPECT_FALSE(error_of([] { sparse("+1 1"); }).empty());
}

TEST(LoadDataset, MissingFileNamesPath) {
  EXPECT_NE(error_of([] { load_dataset("/nonexistent/data.csv", DataFormat::Csv); }).find("/nonexistent/data.csv"),
            std::string::npos);
}

TEST(MinMaxScale, MapsToUnitInterval) {
  auto d = min_max_scale(csv("+1,2,5\n-1,4,5\n+1,3,5"));
  EXPECT_EQ(d.rows[0].features, (std::vector<double>{0.0, 0.0}));
  EXPECT_EQ(d.rows[1].features, (std::vector<double>{1.0, 0.0}));
  EXPECT_EQ(d.rows[2].features, (std::vector<double>{0.5, 0.0}));
}

RawDataset indexed(std::size_t n) {
  // Feature 0 is the row index, so rows can be traced through the split.
  RawDataset d{"indexed", {}};
  for (std::size_t i = 0; i < n; ++i) d.rows.push_back({i % 2 ? Label::Positive : Label::Negative, {double(i)}});
  return d;
}

TEST(SplitLut, SizesForOneHundredRows) {
  const auto s = split_lut(indexed(100), SplitSpec{});
  EXPECT_EQ(s.test.size(), 50u);
  EXPECT_EQ(s.labeled.size(), 13u);
  EXPECT_EQ(s.unlabeled.size(), 37u);
}

TEST(SplitLut, PartitionsRowsAndAugments) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto s = split_lut(indexed(57), SplitSpec{0.5, 0.25, seed});
    std::vector<int> seen;
    for (const auto& e : s.test) seen.push_back(int(e.features[0]));
    for (const auto& e : s.labeled) seen.push_back(int(e.features[0]));
    for (const auto& x : s.unlabeled) seen.push_back(int(x[0]));
    std::sort(seen.begin(), seen.end());
    ASSERT_EQ(seen.size(), 57u);
    for (int i = 0; i < 57; ++i) EXPECT_EQ(seen[i], i);
    for (const auto& e : s.test) EXPECT_EQ(e.features[1], 1.0);
    for (const auto& e : s.labeled) EXPECT_EQ(e.features[1], 1.0);
    for (const auto& x : s.unlabeled) EXPECT_EQ(x[1], 1.0);
    bool pos = false, neg = false;
    for (const auto& e : s.labeled) (e.label == Label::Positive ? pos : neg) = true;
    EXPECT_TRUE(pos && neg);
  }
}

TEST(SplitLut, Deterministic) {
  const auto data = testing::two_gaussians(60, 3, 0.5, 1);
  const auto a = split_lut(data, SplitSpec{0.5, 0.25, 42});
  const auto b = split_lut(data, SplitSpec{0.5, 0.25, 42});
  EXPECT_EQ(a.labeled, b.labeled);
  EXPECT_EQ(a.unlabeled, b.unlabeled);
  EXPECT_EQ(a.test, b.test);
  const auto c = split_lut(data, SplitSpec{0.5, 0.25, 43});
  EXPECT_NE(a.test, c.test);
}

TEST(SplitLut, RedrawsLabeledSetUntilBothClassesPresent) {
  // 2 positives among 40 rows: a 2-row L rarely holds both classes on the first draw.
  RawDataset d{"skewed", {}};
  for (int i = 0; i < 40; ++i) d.rows.push_back({i < 2 ? Label::Positive : Label::Negative, {double(i)}});
  int drawn = 0;
  for (std::uint64_t seed = 0; seed < 200 && drawn < 5; ++seed) {
    try {
      const auto s = split_lut(d, SplitSpec{0.05, 0.05, seed});
      ++drawn;
      bool pos = false, neg = false;
      for (const auto& e : s.labeled) (e.label == Label::Positive ? pos : neg) = true;
      EXPECT_TRUE(pos && neg);
    } catch (const Error&) {
      // Both positives landed in T; no L can be drawn.
    }
  }
  EXPECT_EQ(drawn, 5);
}

TEST(SplitLut, RejectsTooSmallLabeledSet) {
  EXPECT_THROW(split_lut(indexed(4), SplitSpec{0.5, 0.5, 0}), Error);
  EXPECT_THROW(split_lut(indexed(3), SplitSpec{}), Error);
  RawDataset one_class{"x", {}};
  for (int i = 0; i < 10; ++i) one_class.rows.push_back({Label::Positive, {double(i)}});
  EXPECT_THROW(split_lut(one_class, SplitSpec{}), Error);
  EXPECT_THROW(split_lut(indexed(10), SplitSpec{1.0, 0.25, 0}), Error);
}

TEST(SplitLut, FullLabeledFractionLeavesUEmpty) {
  const auto s = split_lut(indexed(20), SplitSpec{0.5, 1.0, 0});
  EXPECT_EQ(s.labeled.size(), 10u);
  EXPECT_TRUE(s.unlabeled.empty());
}

TEST(BootstrapSample, SizeAndDeterminism) {
  const std::vector<LabeledExample> one{{DenseVector{1, 1}, Label::Positive}};
  Rng r0(1);
  EXPECT_EQ(bootstrap_sample(one, r0), one);

  std::vector<LabeledExample> l;
  for (int i = 0; i < 17; ++i) l.push_back({DenseVector{double(i), 1}, Label::Positive});
  Rng a(5), b(5);
  const auto sa = bootstrap_sample(l, a);
  EXPECT_EQ(sa.size(), l.size());
  EXPECT_EQ(sa, bootstrap_sample(l, b));
  for (const auto& e : sa) EXPECT_NE(std::find(l.begin(), l.end(), e), l.end());

  Rng r(1);
  EXPECT_THROW(bootstrap_sample(std::vector<LabeledExample>{}, r), Error);
}

}  // namespace
}  // namespace udeed
