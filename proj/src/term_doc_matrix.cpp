#include "tonmf/term_doc_matrix.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "tonmf/errors.hpp"

namespace tonmf {

TermDocMatrix TermDocMatrix::from_triplets(Index m, Index n,
                                           const std::vector<Triplet>& entries) {
  if (m < 0 || n < 0) throw ShapeError("matrix dimensions must be nonnegative");
  for (const auto& t : entries) {
    if (t.term < 0 || t.term >= m || t.doc < 0 || t.doc >= n) {
      throw ShapeError("triplet index (" + std::to_string(t.term) + ", " +
                       std::to_string(t.doc) + ") outside " + std::to_string(m) +
                       "x" + std::to_string(n));
    }
    if (!std::isfinite(t.value) || t.value <= 0.0) {
      throw ShapeError("triplet values must be finite and positive");
    }
  }

  TermDocMatrix a(m, n);
  std::vector<Index> counts(static_cast<std::size_t>(n), 0);
  for (const auto& t : entries) ++counts[static_cast<std::size_t>(t.doc)];
  for (Index j = 0; j < n; ++j) {
    a.col_ptr[static_cast<std::size_t>(j) + 1] =
        a.col_ptr[static_cast<std::size_t>(j)] + counts[static_cast<std::size_t>(j)];
  }

  std::vector<Index> cursor(a.col_ptr.begin(), a.col_ptr.end() - 1);
  std::vector<Index> rows(entries.size());
  std::vector<double> vals(entries.size());
  for (const auto& t : entries) {
    const auto pos = static_cast<std::size_t>(cursor[static_cast<std::size_t>(t.doc)]++);
    rows[pos] = t.term;
    vals[pos] = t.value;
  }

  // Sort each column by row and merge duplicates in place.
  a.row_idx.reserve(rows.size());
  a.values.reserve(vals.size());
  std::vector<Index> new_ptr(static_cast<std::size_t>(n) + 1, 0);
  std::vector<std::size_t> order;
  for (Index j = 0; j < n; ++j) {
    const auto begin = static_cast<std::size_t>(a.col_ptr[static_cast<std::size_t>(j)]);
    const auto end = static_cast<std::size_t>(a.col_ptr[static_cast<std::size_t>(j) + 1]);
    order.resize(end - begin);
    std::iota(order.begin(), order.end(), begin);
    std::sort(order.begin(), order.end(),
              [&rows](std::size_t x, std::size_t y) { return rows[x] < rows[y]; });
    for (std::size_t k = 0; k < order.size(); ++k) {
      const Index r = rows[order[k]];
      const double v = vals[order[k]];
      if (!a.row_idx.empty() &&
          static_cast<Index>(a.row_idx.size()) > new_ptr[static_cast<std::size_t>(j)] &&
          a.row_idx.back() == r) {
        a.values.back() += v;
      } else {
        a.row_idx.push_back(r);
        a.values.push_back(v);
      }
    }
    new_ptr[static_cast<std::size_t>(j) + 1] = static_cast<Index>(a.row_idx.size());
  }
  a.col_ptr = std::move(new_ptr);
  a.validate();
  return a;
}

void TermDocMatrix::validate() const {
  if (n_terms < 0 || n_docs < 0) throw ShapeError("negative dimension");
  if (col_ptr.size() != static_cast<std::size_t>(n_docs) + 1) {
    throw ShapeError("col_ptr length must be n_docs + 1");
  }
  if (col_ptr.front() != 0 || col_ptr.back() != nnz()) {
    throw ShapeError("col_ptr endpoints inconsistent with stored entries");
  }
  if (row_idx.size() != values.size()) throw ShapeError("index/value length mismatch");
  for (Index j = 0; j < n_docs; ++j) {
    if (col_ptr[static_cast<std::size_t>(j)] > col_ptr[static_cast<std::size_t>(j) + 1]) {
      throw ShapeError("col_ptr must be monotone");
    }
    Index prev = -1;
    for (Index k = col_ptr[static_cast<std::size_t>(j)];
         k < col_ptr[static_cast<std::size_t>(j) + 1]; ++k) {
      const Index r = row_idx[static_cast<std::size_t>(k)];
      if (r <= prev) throw ShapeError("row indices must be strictly increasing per column");
      if (r >= n_terms) throw ShapeError("row index out of range");
      const double v = values[static_cast<std::size_t>(k)];
      if (!std::isfinite(v) || v <= 0.0) {
        throw ShapeError("stored values must be finite and positive");
      }
      prev = r;
    }
  }
}

bool TermDocMatrix::entries_equal(const TermDocMatrix& other) const {
  return n_terms == other.n_terms && n_docs == other.n_docs &&
         col_ptr == other.col_ptr && row_idx == other.row_idx && values == other.values;
}

Index count_positives(const LabelVector& labels) {
  Index c = 0;
  for (int v : labels) c += (v == 1);
  return c;
}

Eigen::MatrixXd to_dense(const TermDocMatrix& a) {
  Eigen::MatrixXd d = Eigen::MatrixXd::Zero(a.n_terms, a.n_docs);
  for (Index j = 0; j < a.n_docs; ++j) {
    auto rows = a.col_rows(j);
    auto vals = a.col_values(j);
    for (std::size_t k = 0; k < rows.size(); ++k) d(rows[k], j) = vals[k];
  }
  return d;
}

}  // namespace tonmf
