#pragma once

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <numeric>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "udeed/core.hpp"
#include "udeed/random.hpp"

namespace udeed {

struct RawRow {
  Label label = Label::Positive;
  std::vector<double> features;

  friend bool operator==(const RawRow&, const RawRow&) = default;
};

/// Parsed rows before bias augmentation.
struct RawDataset {
  std::string name;
  std::vector<RawRow> rows;

  std::size_t dimension() const noexcept { return rows.empty() ? 0 : rows.front().features.size(); }
};

enum class DataFormat { Csv, Sparse };

namespace detail {

inline std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

[[noreturn]] inline void parse_fail(std::size_t line, const std::string& what) {
  throw Error(ErrorKind::Parse, "line " + std::to_string(line) + ": " + what);
}

inline double parse_number(std::string_view token, std::size_t line) {
  token = trim(token);
  if (!token.empty() && token.front() == '+') token.remove_prefix(1);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), v);
  if (token.empty() || ec != std::errc{} || ptr != token.data() + token.size()) {
    parse_fail(line, "'" + std::string(token) + "' is not a number");
  }
  if (!std::isfinite(v)) parse_fail(line, "non-finite value '" + std::string(token) + "'");
  return v;
}

/// Accepts -1/+1 and 0/1; 0 maps to -1.
inline Label parse_label(std::string_view token, std::size_t line) {
  const double v = parse_number(token, line);
  if (v == 1.0) return Label::Positive;
  if (v == -1.0 || v == 0.0) return Label::Negative;
  parse_fail(line, "label '" + std::string(trim(token)) + "' is not one of -1, +1, 0, 1");
}

inline bool skip_line(std::string_view line) {
  const auto t = trim(line);
  return t.empty() || t.front() == '#';
}

}  // namespace detail

/// `label,feat1,...,featd` per line.
inline RawDataset parse_csv(std::istream& in, std::string name = {}) {
  RawDataset out{std::move(name), {}};
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (detail::skip_line(line)) continue;
    const std::string_view text = detail::trim(line);
    RawRow row;
    std::size_t start = 0;
    bool first = true;
    while (true) {
      const auto comma = text.find(',', start);
      const auto field = text.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start);
      if (first) {
        row.label = detail::parse_label(field, line_no);
        first = false;
      } else {
        row.features.push_back(detail::parse_number(field, line_no));
      }
      if (comma == std::string_view::npos) break;
      start = comma + 1;
    }
    if (!out.rows.empty() && row.features.size() != out.dimension()) {
      detail::parse_fail(line_no, "expected " + std::to_string(out.dimension()) + " features, found " +
                                      std::to_string(row.features.size()));
    }
    out.rows.push_back(std::move(row));
  }
  return out;
}

/// `label idx:val ...` per line with 1-based, strictly ascending indices.
/// Rows are densified to the largest index seen in the file.
inline RawDataset parse_sparse(std::istream& in, std::string name = {}) {
  struct SparseRow {
    Label label;
    std::vector<std::pair<std::size_t, double>> entries;
  };
  std::vector<SparseRow> sparse;
  std::size_t dim = 0;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (detail::skip_line(line)) continue;
    std::string_view text = detail::trim(line);
    SparseRow row{Label::Positive, {}};
    bool first = true;
    std::size_t last_index = 0;
    while (!text.empty()) {
      const auto end = text.find_first_of(" \t");
      const auto token = text.substr(0, end);
      text = end == std::string_view::npos ? std::string_view{} : detail::trim(text.substr(end));
      if (first) {
        row.label = detail::parse_label(token, line_no);
        first = false;
        continue;
      }
      const auto colon = token.find(':');
      if (colon == std::string_view::npos) detail::parse_fail(line_no, "expected idx:val, got '" + std::string(token) + "'");
      const auto idx_text = token.substr(0, colon);
      std::size_t idx = 0;
      const auto [ptr, ec] = std::from_chars(idx_text.data(), idx_text.data() + idx_text.size(), idx);
      if (idx_text.empty() || ec != std::errc{} || ptr != idx_text.data() + idx_text.size() || idx == 0) {
        detail::parse_fail(line_no, "bad feature index '" + std::string(idx_text) + "'");
      }
      if (idx == last_index) detail::parse_fail(line_no, "duplicate index " + std::to_string(idx));
      if (idx < last_index) detail::parse_fail(line_no, "non-ascending index " + std::to_string(idx));
      last_index = idx;
      row.entries.emplace_back(idx, detail::parse_number(token.substr(colon + 1), line_no));
    }
    dim = std::max(dim, last_index);
    sparse.push_back(std::move(row));
  }

  RawDataset out{std::move(name), {}};
  out.rows.reserve(sparse.size());
  for (const auto& s : sparse) {
    RawRow row{s.label, std::vector<double>(dim, 0.0)};
    for (const auto& [idx, v] : s.entries) row.features[idx - 1] = v;
    out.rows.push_back(std::move(row));
  }
  return out;
}

inline RawDataset load_dataset(const std::string& path, DataFormat format) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Io, "cannot open data file '" + path + "'");
  const auto slash = path.find_last_of('/');
  std::string name = slash == std::string::npos ? path : path.substr(slash + 1);
  return format == DataFormat::Csv ? parse_csv(in, std::move(name)) : parse_sparse(in, std::move(name));
}

/// Rescales every feature to [0, 1] over the whole dataset; constant features become 0.
inline RawDataset min_max_scale(RawDataset data) {
  const std::size_t d = data.dimension();
  for (std::size_t i = 0; i < d; ++i) {
    double lo = INFINITY, hi = -INFINITY;
    for (const auto& r : data.rows) {
      lo = std::min(lo, r.features[i]);
      hi = std::max(hi, r.features[i]);
    }
    for (auto& r : data.rows) r.features[i] = hi > lo ? (r.features[i] - lo) / (hi - lo) : 0.0;
  }
  return data;
}

struct SplitSpec {
  double test_fraction = 0.5;
  /// |L| / (|L| + |U|).
  double labeled_fraction = 0.25;
  std::uint64_t seed = 0;
};

struct Split {
  std::vector<LabeledExample> labeled;
  std::vector<DenseVector> unlabeled;
  std::vector<LabeledExample> test;

  TrainingData training_data() const { return TrainingData(labeled, unlabeled); }
};

inline std::size_t round_half_up(double x) { return static_cast<std::size_t>(std::floor(x + 0.5)); }

inline LabeledExample augment(const RawRow& row) { return LabeledExample{augment_bias(row.features), row.label}; }

/// Seeded L/U/T partition. The rows are shuffled once; the first round(t*n)
/// form T. L is the first round(l*(n-|T|)) rows of the remaining pool, which is
/// reshuffled (up to 1000 times) until L holds both classes. The rest of the
/// pool, stripped of labels, is U.
inline Split split_lut(const RawDataset& data, const SplitSpec& spec) {
  constexpr int kMaxRetries = 1000;
  const std::size_t n = data.rows.size();
  if (n < 4) throw Error(ErrorKind::InvalidArgument, "dataset needs at least 4 rows, has " + std::to_string(n));
  {
    bool pos = false, neg = false;
    for (const auto& r : data.rows) (r.label == Label::Positive ? pos : neg) = true;
    if (!(pos && neg)) throw Error(ErrorKind::InvalidArgument, "dataset must contain both classes");
  }
  if (!(spec.test_fraction > 0.0 && spec.test_fraction < 1.0)) {
    throw Error(ErrorKind::InvalidArgument, "test fraction must lie in (0, 1)");
  }
  if (!(spec.labeled_fraction > 0.0 && spec.labeled_fraction <= 1.0)) {
    throw Error(ErrorKind::InvalidArgument, "labeled fraction must lie in (0, 1]");
  }

  const std::size_t n_test = round_half_up(spec.test_fraction * static_cast<double>(n));
  const std::size_t n_train = n - n_test;
  const std::size_t n_labeled = round_half_up(spec.labeled_fraction * static_cast<double>(n_train));
  if (n_test < 1 || n_test >= n) throw Error(ErrorKind::InvalidArgument, "test set size must be in [1, n)");
  if (n_labeled < 2) {
    throw Error(ErrorKind::InvalidArgument, "labeled set would hold " + std::to_string(n_labeled) + " rows, need >= 2");
  }

  Rng rng(spec.seed);
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  rng.shuffle(order);

  std::vector<std::size_t> pool(order.begin() + static_cast<std::ptrdiff_t>(n_test), order.end());
  auto labeled_has_both = [&] {
    bool pos = false, neg = false;
    for (std::size_t i = 0; i < n_labeled; ++i) (data.rows[pool[i]].label == Label::Positive ? pos : neg) = true;
    return pos && neg;
  };
  int retries = 0;
  while (!labeled_has_both()) {
    if (++retries > kMaxRetries) {
      throw Error(ErrorKind::InvalidArgument, "could not draw a labeled set containing both classes");
    }
    rng.shuffle(pool);
  }

  Split out;
  out.test.reserve(n_test);
  for (std::size_t i = 0; i < n_test; ++i) out.test.push_back(augment(data.rows[order[i]]));
  out.labeled.reserve(n_labeled);
  for (std::size_t i = 0; i < n_labeled; ++i) out.labeled.push_back(augment(data.rows[pool[i]]));
  out.unlabeled.reserve(n_train - n_labeled);
  for (std::size_t i = n_labeled; i < n_train; ++i) out.unlabeled.push_back(augment_bias(data.rows[pool[i]].features));
  return out;
}

/// |L| uniform draws with replacement.
inline std::vector<LabeledExample> bootstrap_sample(std::span<const LabeledExample> labeled, Rng& rng) {
  if (labeled.empty()) throw Error(ErrorKind::EmptyInput, "cannot bootstrap an empty labeled set");
  std::vector<LabeledExample> out;
  out.reserve(labeled.size());
  for (std::size_t i = 0; i < labeled.size(); ++i) out.push_back(labeled[rng.uniform_index(labeled.size())]);
  return out;
}

}  // namespace udeed
