#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include <Eigen/Eigenvalues>

#include "oracles.hpp"
#include "tonmf/baselines.hpp"
#include "tonmf/errors.hpp"
#include "tonmf/evaluation.hpp"
#include "tonmf/rng.hpp"

using namespace tonmf;

namespace {

TermDocMatrix dense_to_matrix(const Eigen::MatrixXd& d) {
  std::vector<Triplet> entries;
  for (Eigen::Index j = 0; j < d.cols(); ++j) {
    for (Eigen::Index i = 0; i < d.rows(); ++i) {
      if (d(i, j) > 0.0) entries.push_back({i, j, d(i, j)});
    }
  }
  return TermDocMatrix::from_triplets(d.rows(), d.cols(), entries);
}

// Full SVD of A via the eigendecomposition of A^T A: an implementation
// path independent of Eigen's SVD and of the randomized code.
struct EigOracle {
  Eigen::VectorXd sigma;  // descending
  Eigen::MatrixXd v;      // n x n, columns aligned with sigma
};

EigOracle eig_of_gram(const Eigen::MatrixXd& a) {
  const Eigen::MatrixXd gram = a.transpose() * a;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(gram);
  const Eigen::Index n = gram.rows();
  EigOracle out;
  out.sigma.resize(n);
  out.v.resize(n, n);
  for (Eigen::Index k = 0; k < n; ++k) {
    const Eigen::Index src = n - 1 - k;  // ascending -> descending
    out.sigma[k] = std::sqrt(std::max(0.0, eig.eigenvalues()[src]));
    out.v.col(k) = eig.eigenvectors().col(src);
  }
  return out;
}

}  // namespace

TEST_CASE("identical columns have zero knn scores") {
  Eigen::MatrixXd d(3, 3);
  d << 1, 1, 1, 2, 2, 2, 0.5, 0.5, 0.5;
  const TermDocMatrix a = dense_to_matrix(d);
  const Eigen::VectorXd scores = knn_scores(a, 1, Metric::kEuclidean);
  CHECK(scores.isZero(1e-14));
}

TEST_CASE("a distant column gets the strictly largest knn score") {
  Eigen::MatrixXd d = Eigen::MatrixXd::Zero(6, 5);
  for (Eigen::Index j = 0; j < 4; ++j) {
    d(0, j) = 1.0;
    d(1, j) = 1.0 + 0.01 * static_cast<double>(j);
  }
  d(4, 4) = 9.0;
  d(5, 4) = 9.0;
  const TermDocMatrix a = dense_to_matrix(d);
  const Eigen::VectorXd scores = knn_scores(a, 1, Metric::kEuclidean);
  for (Eigen::Index j = 0; j < 4; ++j) CHECK(scores[4] > scores[j]);
}

TEST_CASE("knn scores match a dense brute-force oracle") {
  Rng rng(31);
  const TermDocMatrix a = oracle::random_matrix(7, 6, 0.5, rng);
  const Eigen::MatrixXd dense = oracle::dense_of(a);
  for (Metric metric : {Metric::kEuclidean, Metric::kCosine}) {
    const Eigen::VectorXd scores = knn_scores(a, 2, metric);
    for (Index i = 0; i < 6; ++i) {
      std::vector<double> dists;
      for (Index j = 0; j < 6; ++j) {
        if (j == i) continue;
        if (metric == Metric::kEuclidean) {
          dists.push_back((dense.col(i) - dense.col(j)).norm());
        } else {
          dists.push_back(1.0 - dense.col(i).dot(dense.col(j)) /
                                    (dense.col(i).norm() * dense.col(j).norm()));
        }
      }
      std::sort(dists.begin(), dists.end());
      CHECK(oracle::close(scores[i], dists[1], 1e-10));
    }
  }
}

TEST_CASE("knn scores are equivariant under column permutation") {
  Rng rng(32);
  const TermDocMatrix a = oracle::random_matrix(8, 7, 0.5, rng);
  const Eigen::MatrixXd dense = oracle::dense_of(a);
  std::vector<Index> perm{3, 0, 6, 1, 5, 2, 4};
  Eigen::MatrixXd permuted(8, 7);
  for (Index j = 0; j < 7; ++j) permuted.col(j) = dense.col(perm[static_cast<std::size_t>(j)]);
  const Eigen::VectorXd base = knn_scores(a, 2, Metric::kEuclidean);
  const Eigen::VectorXd after = knn_scores(dense_to_matrix(permuted), 2, Metric::kEuclidean);
  for (Index j = 0; j < 7; ++j) {
    CHECK(after[j] == doctest::Approx(base[perm[static_cast<std::size_t>(j)]]).epsilon(1e-12));
  }
}

TEST_CASE("knn rejects out-of-range k") {
  Rng rng(33);
  const TermDocMatrix a = oracle::random_matrix(4, 3, 0.6, rng);
  CHECK_THROWS_AS(knn_scores(a, 0, Metric::kEuclidean), ConfigError);
  CHECK_THROWS_AS(knn_scores(a, 3, Metric::kEuclidean), ConfigError);
}

TEST_CASE("knn sweep covers the range and flags the best k") {
  Rng rng(34);
  const TermDocMatrix a = oracle::random_matrix(10, 8, 0.4, rng);
  LabelVector labels{1, 0, 0, 1, 0, 0, 0, 0};

  SUBCASE("singleton range") {
    const KnnSweepResult res = knn_sweep(a, 1, 1, labels, Metric::kEuclidean);
    CHECK(res.best_k == 1);
    CHECK(res.table.size() == 1);
    CHECK(res.best_auc == doctest::Approx(auc(knn_scores(a, 1, Metric::kEuclidean), labels)));
  }
  SUBCASE("best auc dominates every swept k") {
    const KnnSweepResult res = knn_sweep(a, 1, 5, labels, Metric::kEuclidean);
    CHECK(res.table.size() == 5);
    for (const auto& row : res.table) CHECK(res.best_auc >= row.auc);
  }
  SUBCASE("ties break toward the smallest k") {
    // Identical columns: every k gives all-zero scores, hence equal AUC.
    Eigen::MatrixXd d(3, 4);
    d << 1, 1, 1, 1, 2, 2, 2, 2, 3, 3, 3, 3;
    const TermDocMatrix dup = dense_to_matrix(d);
    const KnnSweepResult res = knn_sweep(dup, 1, 3, LabelVector{1, 0, 0, 1},
                                         Metric::kEuclidean);
    CHECK(res.best_k == 1);
  }
  SUBCASE("empty range is rejected") {
    CHECK_THROWS_AS(knn_sweep(a, 2, 1, labels, Metric::kEuclidean), ConfigError);
  }
}

TEST_CASE("svd residual scores vanish on an exactly rank-r matrix") {
  Rng rng(35);
  const Eigen::MatrixXd w = oracle::random_dense(12, 3, rng, 0.1, 1.0);
  const Eigen::MatrixXd h = oracle::random_dense(3, 9, rng, 0.1, 1.0);
  const TermDocMatrix a = dense_to_matrix(w * h);
  BaselineConfig cfg;
  const Eigen::VectorXd scores = svd_scores(a, 3, cfg, SvdScoreMode::kResidual);
  CHECK(scores.maxCoeff() <= 1e-8);
}

TEST_CASE("an orthogonal planted column dominates the rank-1 residual scores") {
  Eigen::MatrixXd d = Eigen::MatrixXd::Zero(8, 6);
  for (Eigen::Index j = 0; j < 5; ++j) {
    d(0, j) = 2.0 + 0.1 * static_cast<double>(j);
    d(1, j) = 1.0;
  }
  d(6, 5) = 3.0;
  d(7, 5) = 2.0;  // fresh rows: orthogonal to the rank-1 block
  const TermDocMatrix a = dense_to_matrix(d);
  BaselineConfig cfg;
  const Eigen::VectorXd scores = svd_scores(a, 1, cfg, SvdScoreMode::kResidual);
  Eigen::Index argmax = 0;
  scores.maxCoeff(&argmax);
  CHECK(argmax == 5);
}

TEST_CASE("both svd modes match the dense eigendecomposition oracle") {
  Rng rng(36);
  const TermDocMatrix a = oracle::random_matrix(8, 6, 0.6, rng);
  const Eigen::MatrixXd dense = oracle::dense_of(a);
  const EigOracle eig = eig_of_gram(dense);
  const Index r = 3;
  BaselineConfig cfg;
  cfg.rank = r;

  const Eigen::VectorXd energy = svd_scores(a, r, cfg, SvdScoreMode::kSubspaceEnergy);
  const Eigen::VectorXd residual = svd_scores(a, r, cfg, SvdScoreMode::kResidual);
  for (Index i = 0; i < 6; ++i) {
    double want_energy = 0.0, captured = 0.0;
    for (Index j = 0; j < r; ++j) {
      want_energy += eig.sigma[j] * eig.v(i, j) * eig.v(i, j);
      captured += eig.sigma[j] * eig.sigma[j] * eig.v(i, j) * eig.v(i, j);
    }
    CHECK(oracle::close(energy[i], std::sqrt(want_energy), 1e-6));
    const double want_residual = std::sqrt(std::max(0.0, dense.col(i).squaredNorm() - captured));
    CHECK(oracle::close(residual[i], want_residual, 1e-6));
  }
}

TEST_CASE("randomized svd residual scores are seed-independent on a gapped spectrum") {
  // min(m, n) > 64 forces the randomized path; a strong spectral gap makes
  // the captured subspace insensitive to the sketch.
  Rng rng(37);
  const Index m = 90, n = 70, r = 3;
  const Eigen::MatrixXd w = oracle::random_dense(m, r, rng, 0.5, 1.5);
  const Eigen::MatrixXd h = oracle::random_dense(r, n, rng, 0.5, 1.5);
  Eigen::MatrixXd d = w * h;
  for (Eigen::Index j = 0; j < n; ++j) {
    for (Eigen::Index i = 0; i < m; ++i) d(i, j) += 1e-4 * rng.uniform();
  }
  const TermDocMatrix a = dense_to_matrix(d);

  BaselineConfig c1, c2;
  c1.seed = 11;
  c2.seed = 987654321;
  const Eigen::VectorXd s1 = svd_scores(a, r, c1, SvdScoreMode::kResidual);
  const Eigen::VectorXd s2 = svd_scores(a, r, c2, SvdScoreMode::kResidual);
  CHECK((s1 - s2).cwiseAbs().maxCoeff() <= 1e-6 * std::max(1.0, s1.cwiseAbs().maxCoeff()));
}

TEST_CASE("svd rank bounds are enforced") {
  Rng rng(38);
  const TermDocMatrix a = oracle::random_matrix(5, 4, 0.6, rng);
  BaselineConfig cfg;
  CHECK_THROWS_AS(svd_scores(a, 5, cfg, SvdScoreMode::kResidual), ConfigError);
  CHECK_THROWS_AS(svd_scores(a, 0, cfg, SvdScoreMode::kResidual), ConfigError);
}

TEST_CASE("thread count never changes baseline scores") {
  Rng rng(40);
  const TermDocMatrix a = oracle::random_matrix(80, 70, 0.1, rng);
  const Eigen::VectorXd knn1 = knn_scores(a, 3, Metric::kEuclidean, 1);
  const Eigen::VectorXd knn4 = knn_scores(a, 3, Metric::kEuclidean, 4);
  CHECK(knn1 == knn4);  // bitwise: per-column work is identical

  BaselineConfig c1, c4;
  c1.threads = 1;
  c4.threads = 4;
  const Eigen::VectorXd svd1 = svd_scores(a, 3, c1, SvdScoreMode::kResidual);
  const Eigen::VectorXd svd4 = svd_scores(a, 3, c4, SvdScoreMode::kResidual);
  CHECK(svd1 == svd4);
}

TEST_CASE("scaling the matrix scales scores by their homogeneity degree") {
  Rng rng(39);
  const TermDocMatrix a = oracle::random_matrix(9, 7, 0.5, rng);
  const double s = 3.5;
  TermDocMatrix scaled = a;
  for (double& v : scaled.values) v *= s;
  LabelVector labels{1, 0, 0, 1, 0, 0, 0};
  BaselineConfig cfg;
  cfg.rank = 2;

  // Euclidean knn distances and svd residuals are 1-homogeneous in A.
  const Eigen::VectorXd knn_base = knn_scores(a, 2, Metric::kEuclidean);
  const Eigen::VectorXd knn_scaled = knn_scores(scaled, 2, Metric::kEuclidean);
  CHECK((knn_scaled - s * knn_base).cwiseAbs().maxCoeff() <= 1e-9);

  const Eigen::VectorXd res_base = svd_scores(a, 2, cfg, SvdScoreMode::kResidual);
  const Eigen::VectorXd res_scaled = svd_scores(scaled, 2, cfg, SvdScoreMode::kResidual);
  CHECK((res_scaled - s * res_base).cwiseAbs().maxCoeff() <= 1e-8);

  // Subspace-energy scores scale by sqrt(s) (singular values scale by s and
  // enter under a square root); cosine distances are scale-invariant.
  const Eigen::VectorXd en_base = svd_scores(a, 2, cfg, SvdScoreMode::kSubspaceEnergy);
  const Eigen::VectorXd en_scaled = svd_scores(scaled, 2, cfg, SvdScoreMode::kSubspaceEnergy);
  CHECK((en_scaled - std::sqrt(s) * en_base).cwiseAbs().maxCoeff() <= 1e-8);

  const Eigen::VectorXd cos_base = knn_scores(a, 2, Metric::kCosine);
  const Eigen::VectorXd cos_scaled = knn_scores(scaled, 2, Metric::kCosine);
  CHECK((cos_scaled - cos_base).cwiseAbs().maxCoeff() <= 1e-12);

  // Every variant leaves the AUC unchanged.
  CHECK(auc(knn_base, labels) == doctest::Approx(auc(knn_scaled, labels)).epsilon(1e-12));
  CHECK(auc(res_base, labels) == doctest::Approx(auc(res_scaled, labels)).epsilon(1e-12));
  CHECK(auc(en_base, labels) == doctest::Approx(auc(en_scaled, labels)).epsilon(1e-12));
}
