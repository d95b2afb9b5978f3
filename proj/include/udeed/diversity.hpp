#pragma once

// Oracle-output diversity measures. All four are oriented so that larger
// values mean a more diverse ensemble, and all lie in [0, 1].

#include <cstdint>
#include <span>
#include <vector>

#include "udeed/core.hpp"
#include "udeed/predict.hpp"

namespace udeed {

/// m x N matrix; entry (i, j) is 1 iff classifier i gets test example j right.
class OracleMatrix {
 public:
  OracleMatrix(std::size_t rows, std::size_t cols, std::vector<std::uint8_t> entries)
      : rows_(rows), cols_(cols), entries_(std::move(entries)) {
    if (rows_ < 2) throw Error(ErrorKind::InvalidArgument, "oracle matrix needs at least two classifiers");
    if (cols_ < 1) throw Error(ErrorKind::EmptyInput, "oracle matrix needs at least one example");
    if (entries_.size() != rows_ * cols_) throw Error(ErrorKind::DimensionMismatch, "oracle matrix entry count");
    for (auto e : entries_) {
      if (e > 1) throw Error(ErrorKind::InvalidArgument, "oracle matrix entries must be 0 or 1");
    }
  }

  static OracleMatrix from_rows(const std::vector<std::vector<int>>& rows) {
    std::vector<std::uint8_t> flat;
    const std::size_t cols = rows.empty() ? 0 : rows.front().size();
    for (const auto& r : rows) {
      if (r.size() != cols) throw Error(ErrorKind::DimensionMismatch, "ragged oracle matrix");
      for (int v : r) flat.push_back(static_cast<std::uint8_t>(v == 1 ? 1 : (v == 0 ? 0 : 2)));
    }
    return OracleMatrix(rows.size(), cols, std::move(flat));
  }

  std::size_t classifiers() const noexcept { return rows_; }
  std::size_t examples() const noexcept { return cols_; }
  bool correct(std::size_t i, std::size_t j) const noexcept { return entries_[i * cols_ + j] != 0; }

  /// Number of classifiers that got example j right.
  std::size_t column_correct(std::size_t j) const noexcept {
    std::size_t c = 0;
    for (std::size_t i = 0; i < rows_; ++i) c += entries_[i * cols_ + j];
    return c;
  }

 private:
  std::size_t rows_;
  std::size_t cols_;
  std::vector<std::uint8_t> entries_;
};

inline OracleMatrix oracle_matrix(const EnsembleModel& model, std::span<const LabeledExample> test) {
  if (test.empty()) throw Error(ErrorKind::EmptyInput, "test set is empty");
  const std::size_t m = model.size();
  std::vector<std::uint8_t> entries(m * test.size());
  for (std::size_t j = 0; j < test.size(); ++j) require_dimension(model, test[j].features);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < test.size(); ++j) {
      entries[i * test.size() + j] = sign_label(base_output_f(model[i], test[j].features)) == test[j].label ? 1 : 0;
    }
  }
  return OracleMatrix(m, test.size(), std::move(entries));
}

namespace detail {

/// 2 * total / (m (m - 1) n), rounded once.
inline double pair_ratio(std::size_t total, std::size_t m, std::size_t n) {
  return static_cast<double>(2 * total) / static_cast<double>(m * (m - 1) * n);
}

}  // namespace detail

/// Disagreement: mean over pairs of the fraction of examples where exactly one is right.
inline double dis(const OracleMatrix& o) {
  const std::size_t m = o.classifiers(), n = o.examples();
  std::size_t total = 0;
  for (std::size_t i = 0; i + 1 < m; ++i) {
    for (std::size_t k = i + 1; k < m; ++k) {
      for (std::size_t j = 0; j < n; ++j) total += o.correct(i, j) != o.correct(k, j);
    }
  }
  return detail::pair_ratio(total, m, n);
}

/// 1 - double fault.
inline double df_complement(const OracleMatrix& o) {
  const std::size_t m = o.classifiers(), n = o.examples();
  std::size_t total = 0;
  for (std::size_t i = 0; i + 1 < m; ++i) {
    for (std::size_t k = i + 1; k < m; ++k) {
      for (std::size_t j = 0; j < n; ++j) total += !o.correct(i, j) && !o.correct(k, j);
    }
  }
  return 1.0 - detail::pair_ratio(total, m, n);
}

inline double ent(const OracleMatrix& o) {
  const std::size_t m = o.classifiers(), n = o.examples();
  const std::size_t denom = m - (m + 1) / 2;
  std::size_t s = 0;
  for (std::size_t j = 0; j < n; ++j) {
    const std::size_t c = o.column_correct(j);
    s += std::min(c, m - c);
  }
  return static_cast<double>(s) / static_cast<double>(denom * n);
}

/// Coincident failure diversity.
inline double cfd(const OracleMatrix& o) {
  const std::size_t m = o.classifiers(), n = o.examples();
  std::vector<std::size_t> failures(m + 1, 0);
  for (std::size_t j = 0; j < n; ++j) ++failures[m - o.column_correct(j)];
  if (failures[0] == n) return 0.0;
  // Multiply through by n (m - 1) so a single division remains.
  std::size_t s = 0;
  for (std::size_t i = 1; i <= m; ++i) s += (m - i) * failures[i];
  return static_cast<double>(s) / static_cast<double>((m - 1) * (n - failures[0]));
}

struct DiversityScores {
  double dis = 0.0;
  double df_complement = 0.0;
  double ent = 0.0;
  double cfd = 0.0;
};

inline DiversityScores diversity_scores(const OracleMatrix& o) {
  return DiversityScores{dis(o), df_complement(o), ent(o), cfd(o)};
}

inline DiversityScores diversity_scores(const EnsembleModel& model, std::span<const LabeledExample> test) {
  return diversity_scores(oracle_matrix(model, test));
}

}  // namespace udeed
