#pragma once

#include <string>

#include "tonmf/term_doc_matrix.hpp"

namespace tonmf {

// Bag-of-words text format: three header lines (document count, vocabulary
// size, entry count) followed by one "docID termID count" line per entry,
// all 1-indexed. Duplicate coordinates are summed.
TermDocMatrix load_bow(const std::string& path);
void save_bow(const TermDocMatrix& a, const std::string& path);

// MatrixMarket coordinate format, real or integer field, general symmetry.
// Negative entries and pattern matrices are rejected; exact zeros are
// dropped rather than stored.
TermDocMatrix load_matrix_market(const std::string& path);
void save_matrix_market(const TermDocMatrix& a, const std::string& path);

// Dense column-major MatrixMarket array file (used for factor matrices).
// `comment` is emitted as a % line after the banner when non-empty.
void save_dense_matrix_market(const Eigen::MatrixXd& m, const std::string& path,
                              const std::string& comment = "");
Eigen::MatrixXd load_dense_matrix_market(const std::string& path);

// One 0/1 label per line; line i labels document i-1.
LabelVector load_labels(const std::string& path, Index n_docs);
void save_labels(const LabelVector& labels, const std::string& path);

// Smoothed tf-idf reweighting: value *= ln((1 + n) / (1 + df)) + 1, where df
// is the number of documents containing the term. The multiplier is strictly
// positive, so the sparsity structure is preserved. Off by default in the
// CLI; raw counts are the primary representation.
TermDocMatrix tfidf_transform(const TermDocMatrix& a);

}  // namespace tonmf
