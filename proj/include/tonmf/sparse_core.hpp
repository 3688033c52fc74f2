#pragma once

#include <Eigen/Dense>

#include "tonmf/term_doc_matrix.hpp"

namespace tonmf {

// Dense nonnegative factor pair: W (terms x rank) holds term-topic weights,
// H (rank x docs) holds topic-document coefficients.
struct FactorPair {
  Eigen::MatrixXd W;
  Eigen::MatrixXd H;

  FactorPair() = default;
  FactorPair(Eigen::MatrixXd w, Eigen::MatrixXd h);

  Index rank() const { return static_cast<Index>(W.cols()); }
  Index n_terms() const { return static_cast<Index>(W.rows()); }
  Index n_docs() const { return static_cast<Index>(H.cols()); }

  // Throws ShapeError on dimension mismatch or negative/non-finite entries.
  void validate(const TermDocMatrix& a) const;
};

// Implicit residual operator for Abar = A - Z. With per-column shrink scales
// c_i in [0, 1], column i of Abar equals (1 - c_i) * a_i + c_i * (W h_i).
// W and H are captured by value: they are the factors Z was shrunk against,
// and must stay fixed while the caller keeps updating its live pair.
struct ImplicitAbar {
  const TermDocMatrix* A = nullptr;
  Eigen::MatrixXd W;
  Eigen::MatrixXd H;
  Eigen::VectorXd scales;

  ImplicitAbar(const TermDocMatrix& a, const FactorPair& f, Eigen::VectorXd c);
};

// result[i] = a_i . x  (A^T x).
Eigen::VectorXd spmv_t(const TermDocMatrix& a, const Eigen::VectorXd& x, int threads = 1);

// A^T X, one output row per document.
Eigen::MatrixXd spmm_t(const TermDocMatrix& a, const Eigen::MatrixXd& x, int threads = 1);

// A X, accumulated column by column of X.
Eigen::MatrixXd spmm(const TermDocMatrix& a, const Eigen::MatrixXd& x, int threads = 1);

// Abar^T x without materializing Z.
Eigen::VectorXd abar_apply_t(const ImplicitAbar& ab, const Eigen::VectorXd& x);

// Abar^T X (n x k) and Abar Y (m x k) for dense blocks; the HALS sweep
// kernels. Y is indexed like H^T (docs x k).
Eigen::MatrixXd abar_t_times(const ImplicitAbar& ab, const Eigen::MatrixXd& x, int threads = 1);
Eigen::MatrixXd abar_times(const ImplicitAbar& ab, const Eigen::MatrixXd& y, int threads = 1);

// result[i] = ||a_i - W h_i||_2, via ||a_i||^2 - 2 a_i.(W h_i) + h_i.(W^T W)h_i.
// Cancellation can push the squared norm slightly negative; values within
// -1e-8 * max(1, magnitude) are clamped to zero, anything lower throws
// NumericError.
Eigen::VectorXd column_residual_norms(const TermDocMatrix& a, const FactorPair& f,
                                      int threads = 1);

// M^T M.
Eigen::MatrixXd gram(const Eigen::MatrixXd& m);

}  // namespace tonmf
