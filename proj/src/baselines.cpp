#include "tonmf/baselines.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/QR>
#include <Eigen/SVD>

#include "tonmf/errors.hpp"
#include "tonmf/evaluation.hpp"
#include "tonmf/parallel.hpp"
#include "tonmf/rng.hpp"
#include "tonmf/sparse_core.hpp"

namespace tonmf {

namespace {

// Dot product of two CSC columns by merging their sorted row lists.
double sparse_dot(const TermDocMatrix& a, Index i, Index j) {
  auto ri = a.col_rows(i);
  auto vi = a.col_values(i);
  auto rj = a.col_rows(j);
  auto vj = a.col_values(j);
  double s = 0.0;
  std::size_t p = 0, q = 0;
  while (p < ri.size() && q < rj.size()) {
    if (ri[p] == rj[q]) {
      s += vi[p] * vj[q];
      ++p;
      ++q;
    } else if (ri[p] < rj[q]) {
      ++p;
    } else {
      ++q;
    }
  }
  return s;
}

}  // namespace

Eigen::MatrixXd pairwise_distances(const TermDocMatrix& a, Metric metric, int threads) {
  const Index n = a.n_docs;
  Eigen::VectorXd sq_norms(n);
  for (Index j = 0; j < n; ++j) sq_norms[j] = a.col_sq_norm(j);

  Eigen::MatrixXd dist(n, n);
  parallel_for(n, threads, [&](Index i) {
    dist(i, i) = 0.0;
    for (Index j = 0; j < i; ++j) {
      const double dot = sparse_dot(a, i, j);
      double d = 0.0;
      if (metric == Metric::kEuclidean) {
        d = std::sqrt(std::max(0.0, sq_norms[i] + sq_norms[j] - 2.0 * dot));
      } else {
        const double denom = std::sqrt(sq_norms[i]) * std::sqrt(sq_norms[j]);
        if (denom > 0.0) {
          d = 1.0 - dot / denom;
        } else {
          d = (sq_norms[i] == 0.0 && sq_norms[j] == 0.0) ? 0.0 : 1.0;
        }
      }
      dist(i, j) = d;
    }
  });
  // Mirror the lower triangle so both halves come from the same evaluation.
  for (Index i = 0; i < n; ++i) {
    for (Index j = 0; j < i; ++j) dist(j, i) = dist(i, j);
  }
  return dist;
}

Eigen::VectorXd knn_scores(const TermDocMatrix& a, Index k, Metric metric, int threads) {
  const Index n = a.n_docs;
  if (k < 1 || k >= n) {
    throw ConfigError("k must satisfy 1 <= k < n_docs (got k=" + std::to_string(k) +
                      ", n=" + std::to_string(n) + ")");
  }
  const Eigen::MatrixXd dist = pairwise_distances(a, metric, threads);
  Eigen::VectorXd scores(n);
  parallel_for(n, threads, [&](Index i) {
    std::vector<double> row;
    row.reserve(static_cast<std::size_t>(n) - 1);
    for (Index j = 0; j < n; ++j) {
      if (j != i) row.push_back(dist(i, j));
    }
    std::nth_element(row.begin(), row.begin() + (k - 1), row.end());
    scores[i] = row[static_cast<std::size_t>(k) - 1];
  });
  return scores;
}

KnnSweepResult knn_sweep(const TermDocMatrix& a, Index k_min, Index k_max,
                         const LabelVector& labels, Metric metric, int threads) {
  const Index n = a.n_docs;
  if (k_min < 1 || k_max < k_min) throw ConfigError("empty or invalid k range");
  if (k_max >= n) throw ConfigError("k_max must be smaller than n_docs");
  if (static_cast<Index>(labels.size()) != n) {
    throw ShapeError("labels length must equal n_docs");
  }

  const Eigen::MatrixXd dist = pairwise_distances(a, metric, threads);
  // Sort each row once; the k-th neighbor distance is then a lookup.
  Eigen::MatrixXd sorted(n, n - 1);
  parallel_for(n, threads, [&](Index i) {
    std::vector<double> row;
    row.reserve(static_cast<std::size_t>(n) - 1);
    for (Index j = 0; j < n; ++j) {
      if (j != i) row.push_back(dist(i, j));
    }
    std::sort(row.begin(), row.end());
    for (Index j = 0; j + 1 < n; ++j) sorted(i, j) = row[static_cast<std::size_t>(j)];
  });

  KnnSweepResult res;
  res.best_auc = -1.0;
  for (Index k = k_min; k <= k_max; ++k) {
    Eigen::VectorXd scores = sorted.col(k - 1);
    const double value = auc(scores, labels);
    res.table.push_back({k, value});
    if (value > res.best_auc) {
      res.best_auc = value;
      res.best_k = k;
    }
  }
  return res;
}

namespace {

struct TruncatedSvd {
  Eigen::MatrixXd u;        // m x r, orthonormal columns
  Eigen::VectorXd sigma;    // r
  Eigen::MatrixXd v;        // n x r
};

TruncatedSvd exact_truncated_svd(const TermDocMatrix& a, Index r) {
  const Eigen::MatrixXd dense = to_dense(a);
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(dense, Eigen::ComputeThinU | Eigen::ComputeThinV);
  TruncatedSvd out;
  out.u = svd.matrixU().leftCols(r);
  out.sigma = svd.singularValues().head(r);
  out.v = svd.matrixV().leftCols(r);
  return out;
}

TruncatedSvd randomized_truncated_svd(const TermDocMatrix& a, Index r,
                                      const BaselineConfig& cfg) {
  const Index n = a.n_docs;
  const Index sample = std::min<Index>(r + cfg.svd_oversample, std::min(a.n_terms, n));
  Rng rng(cfg.seed ^ 0x5de6cd1f0908f173ull);
  Eigen::MatrixXd omega(n, sample);
  for (Index j = 0; j < sample; ++j) {
    for (Index i = 0; i < n; ++i) omega(i, j) = rng.normal();
  }

  Eigen::MatrixXd y = spmm(a, omega, cfg.threads);  // m x sample
  auto orthonormalize = [](Eigen::MatrixXd& block) {
    Eigen::HouseholderQR<Eigen::MatrixXd> qr(block);
    block = qr.householderQ() * Eigen::MatrixXd::Identity(block.rows(), block.cols());
  };
  orthonormalize(y);
  for (int it = 0; it < cfg.svd_power_iters; ++it) {
    Eigen::MatrixXd z = spmm_t(a, y, cfg.threads);  // n x sample
    orthonormalize(z);
    y = spmm(a, z, cfg.threads);
    orthonormalize(y);
  }

  Eigen::MatrixXd b = spmm_t(a, y, cfg.threads).transpose();  // sample x n
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(b, Eigen::ComputeThinU | Eigen::ComputeThinV);
  TruncatedSvd out;
  out.u = y * svd.matrixU().leftCols(r);
  out.sigma = svd.singularValues().head(r);
  out.v = svd.matrixV().leftCols(r);
  return out;
}

}  // namespace

Eigen::VectorXd svd_scores(const TermDocMatrix& a, Index r, const BaselineConfig& cfg,
                           SvdScoreMode mode) {
  if (r < 1) throw ConfigError("rank must be at least 1");
  if (r > std::min(a.n_terms, a.n_docs)) {
    throw ConfigError("rank exceeds matrix dimensions");
  }
  const bool exact = std::min(a.n_terms, a.n_docs) <= 64;
  const TruncatedSvd svd = exact ? exact_truncated_svd(a, r)
                                 : randomized_truncated_svd(a, r, cfg);
  const Index n = a.n_docs;
  Eigen::VectorXd scores(n);
  if (mode == SvdScoreMode::kSubspaceEnergy) {
    // || sqrt(S_r) V^T e_i ||_2
    for (Index i = 0; i < n; ++i) {
      double s = 0.0;
      for (Index j = 0; j < r; ++j) s += svd.sigma[j] * svd.v(i, j) * svd.v(i, j);
      scores[i] = std::sqrt(std::max(0.0, s));
    }
  } else {
    // || a_i - U_r S_r v_i ||_2, with the residual vector formed explicitly:
    // the squared-norm shortcut loses half the significant digits to
    // cancellation on near-rank-r columns.
    parallel_for(n, cfg.threads, [&](Index i) {
      Eigen::VectorXd residual = -(svd.u * (svd.sigma.asDiagonal() * svd.v.row(i).transpose()));
      auto rows = a.col_rows(i);
      auto vals = a.col_values(i);
      for (std::size_t k = 0; k < rows.size(); ++k) residual[rows[k]] += vals[k];
      scores[i] = residual.norm();
    });
  }
  return scores;
}

}  // namespace tonmf
