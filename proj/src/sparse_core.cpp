#include "tonmf/sparse_core.hpp"

#include <atomic>
#include <cmath>
#include <string>
#include <utility>

#include "tonmf/errors.hpp"
#include "tonmf/parallel.hpp"

namespace tonmf {

FactorPair::FactorPair(Eigen::MatrixXd w, Eigen::MatrixXd h)
    : W(std::move(w)), H(std::move(h)) {
  if (W.cols() != H.rows()) throw ShapeError("factor rank mismatch between W and H");
}

void FactorPair::validate(const TermDocMatrix& a) const {
  if (W.rows() != a.n_terms || H.cols() != a.n_docs || W.cols() != H.rows()) {
    throw ShapeError("factor dimensions inconsistent with matrix");
  }
  if (W.cols() < 1) throw ShapeError("rank must be at least 1");
  if (!W.allFinite() || !H.allFinite()) throw ShapeError("factors must be finite");
  if ((W.array() < 0.0).any() || (H.array() < 0.0).any()) {
    throw ShapeError("factors must be nonnegative");
  }
}

ImplicitAbar::ImplicitAbar(const TermDocMatrix& a, const FactorPair& f, Eigen::VectorXd c)
    : A(&a), W(f.W), H(f.H), scales(std::move(c)) {
  f.validate(a);
  if (scales.size() != a.n_docs) throw ShapeError("scale vector length must equal n_docs");
  for (Eigen::Index i = 0; i < scales.size(); ++i) {
    if (!(scales[i] >= 0.0 && scales[i] <= 1.0)) {
      throw ShapeError("shrink scales must lie in [0, 1]");
    }
  }
}

Eigen::VectorXd spmv_t(const TermDocMatrix& a, const Eigen::VectorXd& x, int threads) {
  if (x.size() != a.n_terms) throw ShapeError("spmv_t: vector length must equal n_terms");
  Eigen::VectorXd out(a.n_docs);
  parallel_for(a.n_docs, threads, [&](Index j) {
    auto rows = a.col_rows(j);
    auto vals = a.col_values(j);
    double s = 0.0;
    for (std::size_t k = 0; k < rows.size(); ++k) s += vals[k] * x[rows[k]];
    out[j] = s;
  });
  return out;
}

Eigen::MatrixXd spmm_t(const TermDocMatrix& a, const Eigen::MatrixXd& x, int threads) {
  if (x.rows() != a.n_terms) throw ShapeError("spmm_t: row count must equal n_terms");
  Eigen::MatrixXd out(a.n_docs, x.cols());
  parallel_for(a.n_docs, threads, [&](Index j) {
    auto rows = a.col_rows(j);
    auto vals = a.col_values(j);
    Eigen::RowVectorXd acc = Eigen::RowVectorXd::Zero(x.cols());
    for (std::size_t k = 0; k < rows.size(); ++k) acc += vals[k] * x.row(rows[k]);
    out.row(j) = acc;
  });
  return out;
}

Eigen::MatrixXd spmm(const TermDocMatrix& a, const Eigen::MatrixXd& x, int threads) {
  if (x.rows() != a.n_docs) throw ShapeError("spmm: row count must equal n_docs");
  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(a.n_terms, x.cols());
  parallel_for(static_cast<Index>(x.cols()), threads, [&](Index c) {
    for (Index j = 0; j < a.n_docs; ++j) {
      auto rows = a.col_rows(j);
      auto vals = a.col_values(j);
      const double xc = x(j, c);
      if (xc == 0.0) continue;
      for (std::size_t k = 0; k < rows.size(); ++k) out(rows[k], c) += vals[k] * xc;
    }
  });
  return out;
}

Eigen::VectorXd abar_apply_t(const ImplicitAbar& ab, const Eigen::VectorXd& x) {
  if (x.size() != ab.A->n_terms) throw ShapeError("abar_apply_t: vector length must equal n_terms");
  Eigen::VectorXd sparse_part = spmv_t(*ab.A, x);
  Eigen::VectorXd factor_part = ab.H.transpose() * (ab.W.transpose() * x);
  return (1.0 - ab.scales.array()) * sparse_part.array() +
         ab.scales.array() * factor_part.array();
}

Eigen::MatrixXd abar_t_times(const ImplicitAbar& ab, const Eigen::MatrixXd& x, int threads) {
  Eigen::MatrixXd sparse_part = spmm_t(*ab.A, x, threads);          // n x k
  Eigen::MatrixXd factor_part = ab.H.transpose() * (ab.W.transpose() * x);
  sparse_part.array().colwise() *= (1.0 - ab.scales.array());
  factor_part.array().colwise() *= ab.scales.array();
  return sparse_part + factor_part;
}

Eigen::MatrixXd abar_times(const ImplicitAbar& ab, const Eigen::MatrixXd& y, int threads) {
  if (y.rows() != ab.A->n_docs) throw ShapeError("abar_times: row count must equal n_docs");
  Eigen::MatrixXd scaled = y;
  scaled.array().colwise() *= (1.0 - ab.scales.array());
  Eigen::MatrixXd sparse_part = spmm(*ab.A, scaled, threads);       // m x k
  Eigen::MatrixXd weighted = y;
  weighted.array().colwise() *= ab.scales.array();
  return sparse_part + ab.W * (ab.H * weighted);
}

Eigen::VectorXd column_residual_norms(const TermDocMatrix& a, const FactorPair& f,
                                      int threads) {
  f.validate(a);
  const Eigen::MatrixXd g = gram(f.W);  // r x r
  Eigen::VectorXd out(a.n_docs);
  std::atomic<Index> bad_col{-1};  // worker threads must not throw
  parallel_for(a.n_docs, threads, [&](Index j) {
    auto rows = a.col_rows(j);
    auto vals = a.col_values(j);
    Eigen::VectorXd wa = Eigen::VectorXd::Zero(f.rank());  // W^T a_j
    double a_sq = 0.0;
    for (std::size_t k = 0; k < rows.size(); ++k) {
      wa += vals[k] * f.W.row(rows[k]).transpose();
      a_sq += vals[k] * vals[k];
    }
    const auto h = f.H.col(j);
    const double cross = wa.dot(h);
    const double fit = h.dot(g * h);
    double sq = a_sq - 2.0 * cross + fit;
    if (sq < 0.0) {
      const double tol = 1e-8 * std::max(1.0, a_sq + fit);
      if (sq < -tol) {
        bad_col.store(j);
        sq = 0.0;
      } else {
        sq = 0.0;
      }
    }
    out[j] = std::sqrt(sq);
  });
  if (bad_col.load() >= 0) {
    throw NumericError("residual norm for column " + std::to_string(bad_col.load()) +
                       " is negative beyond cancellation tolerance");
  }
  return out;
}

Eigen::MatrixXd gram(const Eigen::MatrixXd& m) { return m.transpose() * m; }

}  // namespace tonmf
