#include <gtest/gtest.h>

#include <sys/wait.h>

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "support/synthetic.hpp"

#ifndef UDEED_CLI_PATH
#error "UDEED_CLI_PATH must name the udeed executable"
#endif

namespace udeed {
namespace {

namespace fs = std::filesystem;

struct Outcome {
  int status = -1;
  std::string out;  // stdout and stderr, interleaved
};

Outcome run(const std::string& args) {
  const std::string cmd = std::string(UDEED_CLI_PATH) + " " + args + " 2>&1";
  Outcome o;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return o;
  char buf[4096];
  std::size_t n;
  while ((n = fread(buf, 1, sizeof(buf), pipe)) > 0) o.out.append(buf, n);
  const int raw = pclose(pipe);
  o.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  return o;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("udeed_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::create_directories(dir_);
    const auto data = testing::two_gaussians(80, 3, 0.7, 11);
    std::ofstream out(csv());
    for (const auto& r : data.rows) {
      out << (r.label == Label::Positive ? "1" : "-1");
      for (double v : r.features) out << ',' << v;
      out << '\n';
    }
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string csv() const { return (dir_ / "data.csv").string(); }
  std::string path(const char* name) const { return (dir_ / name).string(); }

  fs::path dir_;
};

TEST_F(Cli, TrainWritesModelAndTrace) {
  const auto r = run("train --data " + csv() + " --m 4 --steps 5 --seed 2 --out " + path("model.txt"));
  ASSERT_EQ(r.status, 0) << r.out;
  EXPECT_NE(r.out.find("stage 2 D=U"), std::string::npos) << r.out;
  EXPECT_NE(r.out.find("test_accuracy"), std::string::npos);
  EXPECT_EQ(slurp(path("model.txt")).rfind("udeed-model 1\nm 4\nd 4\n", 0), 0u);

  const auto p = run("predict --data " + csv() + " --model " + path("model.txt"));
  ASSERT_EQ(p.status, 0) << p.out;
  EXPECT_EQ(std::count(p.out.begin(), p.out.end(), '\n'), 80);

  const auto d = run("diversity --data " + csv() + " --model " + path("model.txt"));
  ASSERT_EQ(d.status, 0) << d.out;
  for (const char* key : {"DIS ", "1-DF ", "ENT ", "CFD ", "accuracy "}) EXPECT_NE(d.out.find(key), std::string::npos);
}

TEST_F(Cli, LcudWithoutUnlabeledDataFails) {
  const auto r = run("train --data " + csv() + " --m 3 --labeled-frac 1.0 --out " + path("m.txt"));
  EXPECT_NE(r.status, 0);
  EXPECT_NE(r.out.find("udeed:"), std::string::npos) << r.out;
  EXPECT_FALSE(fs::exists(path("m.txt")));
  EXPECT_EQ(run("train --data " + csv() + " --m 3 --variant lcd --labeled-frac 1.0 --out " + path("m.txt")).status, 0);
}

TEST_F(Cli, RejectsOutOfRangeOptions) {
  EXPECT_NE(run("train --data " + csv() + " --m 1 --out " + path("m.txt")).status, 0);
  EXPECT_NE(run("train --data " + csv() + " --variant boost --out " + path("m.txt")).status, 0);
  EXPECT_NE(run("evaluate --data " + csv() + " --runs 1").status, 0);
  EXPECT_NE(run("evaluate --data " + csv() + " --methods lc,svm").status, 0);
  EXPECT_NE(run("").status, 0);
}

TEST_F(Cli, EvaluateWritesReportAndRecords) {
  const auto r =
      run("evaluate --data " + csv() + " --runs 2 --m 3 --steps 3 --methods lc --report " + path("report.txt"));
  ASSERT_EQ(r.status, 0) << r.out;
  const auto report = slurp(path("report.txt"));
  EXPECT_EQ(report, r.out);
  EXPECT_NE(report.find("methods LC\n"), std::string::npos);
  const auto records = slurp(path("report.txt.jsonl"));
  EXPECT_EQ(std::count(records.begin(), records.end(), '\n'), 2);
}

TEST_F(Cli, ZeroModelPredictsPositiveWithZeroMargin) {
  {
    std::ofstream m(path("zero.txt"));
    m << "udeed-model 1\nm 2\nd 4\n0 0 0 0\n0 0 0 0\n";
  }
  const auto p = run("predict --data " + csv() + " --model " + path("zero.txt"));
  ASSERT_EQ(p.status, 0) << p.out;
  EXPECT_EQ(p.out.substr(0, 7), "+1 0.0\n");
  const auto d = run("diversity --data " + csv() + " --model " + path("zero.txt"));
  ASSERT_EQ(d.status, 0) << d.out;
  EXPECT_NE(d.out.find("DIS 0.0\n"), std::string::npos) << d.out;
}

TEST_F(Cli, MissingFilesAreNamed) {
  const auto p = run("predict --data " + csv() + " --model " + path("absent.txt"));
  EXPECT_EQ(p.status, 1);
  EXPECT_NE(p.out.find(path("absent.txt")), std::string::npos) << p.out;
  const auto q = run("train --data " + path("absent.csv") + " --out " + path("m.txt"));
  EXPECT_EQ(q.status, 1);
  EXPECT_NE(q.out.find(path("absent.csv")), std::string::npos) << q.out;
}

TEST_F(Cli, DimensionMismatchIsReported) {
  {
    std::ofstream m(path("wide.txt"));
    m << "udeed-model 1\nm 2\nd 6\n0 0 0 0 0 0\n0 0 0 0 0 0\n";
  }
  const auto p = run("predict --data " + csv() + " --model " + path("wide.txt"));
  EXPECT_EQ(p.status, 1);
  EXPECT_NE(p.out.find("dimension"), std::string::npos) << p.out;
}

}  // namespace
}  // namespace udeed
