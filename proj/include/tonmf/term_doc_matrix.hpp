#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace tonmf {

using Index = std::int64_t;

struct Triplet {
  Index term = 0;
  Index doc = 0;
  double value = 0.0;
};

// Term-document count matrix in compressed sparse column form: rows are
// terms, columns are documents. Invariants: stored values are finite and
// strictly positive (explicit zeros are never stored), row indices are
// strictly increasing within each column, and col_ptr is monotone with
// length n_docs + 1.
struct TermDocMatrix {
  Index n_terms = 0;
  Index n_docs = 0;
  std::vector<Index> col_ptr{0};
  std::vector<Index> row_idx;
  std::vector<double> values;

  TermDocMatrix() = default;
  TermDocMatrix(Index m, Index n)
      : n_terms(m), n_docs(n), col_ptr(static_cast<std::size_t>(n) + 1, 0) {}

  Index nnz() const { return static_cast<Index>(values.size()); }

  std::span<const Index> col_rows(Index j) const {
    const auto begin = static_cast<std::size_t>(col_ptr[static_cast<std::size_t>(j)]);
    const auto end = static_cast<std::size_t>(col_ptr[static_cast<std::size_t>(j) + 1]);
    return {row_idx.data() + begin, end - begin};
  }

  std::span<const double> col_values(Index j) const {
    const auto begin = static_cast<std::size_t>(col_ptr[static_cast<std::size_t>(j)]);
    const auto end = static_cast<std::size_t>(col_ptr[static_cast<std::size_t>(j) + 1]);
    return {values.data() + begin, end - begin};
  }

  double col_sq_norm(Index j) const {
    double s = 0.0;
    for (double v : col_values(j)) s += v * v;
    return s;
  }

  double col_sum(Index j) const {
    double s = 0.0;
    for (double v : col_values(j)) s += v;
    return s;
  }

  double frobenius_sq() const {
    double s = 0.0;
    for (double v : values) s += v * v;
    return s;
  }

  // Builds canonical CSC from unordered triplets; duplicate (term, doc)
  // coordinates are summed. Throws ShapeError on out-of-range indices or
  // non-finite/non-positive values.
  static TermDocMatrix from_triplets(Index m, Index n, const std::vector<Triplet>& entries);

  // Checks every structural invariant; throws ShapeError on violation.
  void validate() const;

  bool entries_equal(const TermDocMatrix& other) const;
};

// Ground-truth flags, one per document: 1 = outlier, 0 = regular.
using LabelVector = std::vector<int>;

Index count_positives(const LabelVector& labels);

Eigen::MatrixXd to_dense(const TermDocMatrix& a);

}  // namespace tonmf
