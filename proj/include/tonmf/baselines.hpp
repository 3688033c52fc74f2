#pragma once

#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "tonmf/term_doc_matrix.hpp"

namespace tonmf {

enum class Metric { kEuclidean, kCosine };

// subspace_energy scores by the column norms of sqrt(S_r) V^T (documents
// well represented in the top subspace score high); residual scores by the
// distance to the rank-r subspace (the defensible outlier direction, and
// the default).
enum class SvdScoreMode { kSubspaceEnergy, kResidual };

struct BaselineConfig {
  Index k = 5;
  Metric metric = Metric::kEuclidean;
  Index rank = 10;
  int svd_power_iters = 4;
  Index svd_oversample = 8;
  SvdScoreMode svd_score_mode = SvdScoreMode::kResidual;
  std::uint64_t seed = 42;
  int threads = 1;
};

Eigen::MatrixXd pairwise_distances(const TermDocMatrix& a, Metric metric, int threads = 1);

// score[i] = distance from document i to its k-th nearest other document.
Eigen::VectorXd knn_scores(const TermDocMatrix& a, Index k, Metric metric, int threads = 1);

struct KnnSweepRow {
  Index k = 0;
  double auc = 0.0;
};

struct KnnSweepResult {
  Index best_k = 0;
  double best_auc = 0.0;
  std::vector<KnnSweepRow> table;
};

// Sweeps k over [k_min, k_max] and returns the k with maximal AUC against
// the given labels (ties go to the smallest k). This deliberately hands the
// distance baseline an advantage it would not have without ground truth.
KnnSweepResult knn_sweep(const TermDocMatrix& a, Index k_min, Index k_max,
                         const LabelVector& labels, Metric metric, int threads = 1);

// Truncated rank-r SVD scores. Uses exact dense SVD when min(m, n) <= 64,
// otherwise randomized subspace iteration with cfg.svd_power_iters power
// steps and cfg.svd_oversample extra columns.
Eigen::VectorXd svd_scores(const TermDocMatrix& a, Index r, const BaselineConfig& cfg,
                           SvdScoreMode mode);

}  // namespace tonmf
