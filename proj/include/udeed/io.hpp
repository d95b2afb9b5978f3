#pragma once

// Text formats: the model file and the experiment report.
//
// Model file (version 1):
//
//   udeed-model 1
//   m <classifiers>
//   d <weight length, including the bias slot>
//   <w_1 as d space-separated values>
//   ...
//   <w_m>
//
// Values are written in shortest round-trip form, so reading a written model
// reproduces it bit for bit.

#include <charconv>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "udeed/core.hpp"
#include "udeed/eval.hpp"

namespace udeed {

inline constexpr const char* kModelMagic = "udeed-model";
inline constexpr int kModelVersion = 1;
inline constexpr int kReportVersion = 1;

/// Shortest decimal that round-trips; integral values keep a trailing ".0".
inline std::string format_real(double v) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  std::string s(buf, ptr);
  if (s.find_first_of(".eEn") == std::string::npos) s += ".0";
  return s;
}

/// Fixed-point with `digits` decimals, for report tables.
inline std::string format_fixed(double v, int digits = 6) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*f", digits, v);
  return buf;
}

inline void write_model(std::ostream& out, const EnsembleModel& model) {
  out << kModelMagic << ' ' << kModelVersion << '\n';
  out << "m " << model.size() << '\n';
  out << "d " << model.dimension() << '\n';
  for (const auto& w : model.weights()) {
    for (std::size_t i = 0; i < w.size(); ++i) out << (i ? " " : "") << format_real(w[i]);
    out << '\n';
  }
}

inline EnsembleModel read_model(std::istream& in) {
  std::string magic;
  int version = 0;
  if (!(in >> magic >> version) || magic != kModelMagic) {
    throw Error(ErrorKind::Parse, "not a udeed model file");
  }
  if (version != kModelVersion) throw Error(ErrorKind::Parse, "unsupported model version " + std::to_string(version));
  std::string key_m, key_d;
  long long m = 0, d = 0;
  if (!(in >> key_m >> m >> key_d >> d) || key_m != "m" || key_d != "d" || m < 2 || d < 1) {
    throw Error(ErrorKind::Parse, "bad model header");
  }
  std::vector<DenseVector> weights;
  weights.reserve(static_cast<std::size_t>(m));
  for (long long k = 0; k < m; ++k) {
    std::vector<double> w(static_cast<std::size_t>(d));
    for (auto& v : w) {
      std::string token;
      if (!(in >> token)) throw Error(ErrorKind::Parse, "model file truncated in row " + std::to_string(k + 1));
      const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), v);
      if (ec != std::errc{} || ptr != token.data() + token.size()) {
        throw Error(ErrorKind::Parse, "bad weight '" + token + "' in row " + std::to_string(k + 1));
      }
    }
    weights.emplace_back(std::move(w));
  }
  std::string extra;
  if (in >> extra) throw Error(ErrorKind::Parse, "trailing data after " + std::to_string(m) + " weight rows");
  return EnsembleModel(std::move(weights));
}

inline void save_model(const std::string& path, const EnsembleModel& model) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorKind::Io, "cannot write model file '" + path + "'");
  write_model(out, model);
  if (!out) throw Error(ErrorKind::Io, "failed writing model file '" + path + "'");
}

inline EnsembleModel load_model(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Io, "cannot open model file '" + path + "'");
  try {
    return read_model(in);
  } catch (const Error& e) {
    throw Error(e.kind(), path + ": " + e.message());
  }
}

/// Human-readable report: key-value header, accuracy table, comparisons.
inline void write_report_text(std::ostream& out, const ExperimentReport& r) {
  const auto& o = r.options;
  out << "# udeed experiment report\n";
  out << "format_version " << kReportVersion << '\n';
  out << "dataset " << r.dataset << '\n';
  out << "rows " << r.rows << '\n';
  out << "features " << r.features << '\n';
  out << "runs " << o.runs << '\n';
  out << "methods";
  for (Method m : o.methods) out << ' ' << to_string(m);
  out << '\n';
  out << "m " << o.config.m << '\n';
  out << "gamma " << format_real(o.config.gamma) << '\n';
  out << "lambda " << format_real(o.config.lambda) << '\n';
  out << "learning_rate " << format_real(o.config.learning_rate) << '\n';
  out << "max_steps " << o.config.max_steps << '\n';
  out << "init_max_steps " << o.config.init_max_steps << '\n';
  out << "test_fraction " << format_real(o.test_fraction) << '\n';
  out << "labeled_fraction " << format_real(o.labeled_fraction) << '\n';
  out << "scale " << (o.scale ? "minmax" : "none") << '\n';
  out << "alpha " << format_real(o.alpha) << '\n';
  out << "seed " << o.config.seed << '\n';

  char line[160];
  out << "\n## accuracy\n";
  std::snprintf(line, sizeof(line), "%-10s %10s %10s\n", "method", "mean", "std");
  out << line;
  for (const auto& s : r.summaries) {
    std::snprintf(line, sizeof(line), "%-10s %10s %10s\n", to_string(s.method), format_fixed(s.accuracy.mean).c_str(),
                  format_fixed(s.accuracy.stddev).c_str());
    out << line;
  }

  if (!r.comparisons.empty()) {
    out << "\n## paired t-tests (accuracy)\n";
    std::snprintf(line, sizeof(line), "%-18s %-8s %12s %12s %12s\n", "comparison", "outcome", "mean_diff", "t", "p");
    out << line;
    for (const auto& c : r.comparisons) {
      const std::string name = std::string(to_string(c.method)) + " vs " + to_string(c.baseline);
      std::snprintf(line, sizeof(line), "%-18s %-8s %12s %12s %12s\n", name.c_str(), to_string(c.verdict.outcome),
                    format_fixed(c.verdict.mean_difference).c_str(), format_fixed(c.verdict.t_statistic, 4).c_str(),
                    format_fixed(c.verdict.p_value).c_str());
      out << line;
    }
  }

  if (!r.diversity.empty()) {
    out << "\n## diversity on T (final vs initial LCUD ensemble)\n";
    std::snprintf(line, sizeof(line), "%-8s %12s %12s %-8s %12s %12s\n", "measure", "initial", "final", "outcome", "t",
                  "p");
    out << line;
    for (const auto& d : r.diversity) {
      std::snprintf(line, sizeof(line), "%-8s %12s %12s %-8s %12s %12s\n", to_string(d.measure),
                    format_fixed(d.initial.mean).c_str(), format_fixed(d.final.mean).c_str(),
                    to_string(d.verdict.outcome), format_fixed(d.verdict.t_statistic, 4).c_str(),
                    format_fixed(d.verdict.p_value).c_str());
      out << line;
    }
  }
}

/// One JSON object per line, one line per run.
inline void write_report_records(std::ostream& out, const ExperimentReport& r) {
  for (const auto& run : r.runs) {
    nlohmann::ordered_json rec;
    rec["format_version"] = kReportVersion;
    rec["dataset"] = r.dataset;
    rec["run"] = run.run;
    rec["seed"] = run.seed;
    nlohmann::ordered_json acc = nlohmann::ordered_json::object();
    for (const auto& [m, a] : run.accuracy) acc[to_string(m)] = a;
    rec["accuracy"] = acc;
    auto scores = [](const DiversityScores& s) {
      nlohmann::ordered_json j;
      for (Measure m : kAllMeasures) j[to_string(m)] = get(s, m);
      return j;
    };
    if (run.initial_diversity) rec["initial_diversity"] = scores(*run.initial_diversity);
    if (run.final_diversity) rec["final_diversity"] = scores(*run.final_diversity);
    out << rec.dump() << '\n';
  }
}

}  // namespace udeed
