#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "oracles.hpp"
#include "tonmf/errors.hpp"
#include "tonmf/evaluation.hpp"
#include "tonmf/rng.hpp"

using namespace tonmf;

namespace {

Eigen::VectorXd vec(std::initializer_list<double> xs) {
  Eigen::VectorXd v(static_cast<Eigen::Index>(xs.size()));
  Eigen::Index i = 0;
  for (double x : xs) v[i++] = x;
  return v;
}

}  // namespace

TEST_CASE("perfect ranking gives AUC 1 and reversed gives 0") {
  CHECK(auc(vec({0.9, 0.1}), {1, 0}) == doctest::Approx(1.0));
  CHECK(auc(vec({0.1, 0.9}), {1, 0}) == doctest::Approx(0.0));
}

TEST_CASE("interleaved ranking gives AUC 0.75") {
  const Eigen::VectorXd scores = vec({4, 3, 2, 1});
  const LabelVector labels{1, 0, 1, 0};
  CHECK(auc(scores, labels) == doctest::Approx(0.75).epsilon(1e-12));
  CHECK(oracle::pair_count_auc(scores, labels) == doctest::Approx(0.75).epsilon(1e-12));
}

TEST_CASE("all-tied scores give AUC 0.5") {
  CHECK(auc(vec({3, 3}), {1, 0}) == doctest::Approx(0.5));
  CHECK(auc(vec({1, 1, 1, 1}), {1, 0, 1, 0}) == doctest::Approx(0.5));
}

TEST_CASE("degenerate label sets are rejected") {
  CHECK_THROWS_AS(auc(vec({1, 2}), LabelVector{1, 1}), ConfigError);
  CHECK_THROWS_AS(auc(vec({1, 2}), LabelVector{0, 0}), ConfigError);
  CHECK_THROWS_AS(auc(vec({1, 2}), LabelVector{0, 1, 0}), ShapeError);
}

TEST_CASE("roc curve endpoints are exactly (0,0) and (100,100)") {
  Rng rng(1);
  for (int rep = 0; rep < 20; ++rep) {
    const Index n = 3 + rng.uniform_int(12);
    Eigen::VectorXd scores(n);
    LabelVector labels(static_cast<std::size_t>(n), 0);
    for (Index i = 0; i < n; ++i) {
      scores[i] = static_cast<double>(rng.uniform_int(5));
      labels[static_cast<std::size_t>(i)] = static_cast<int>(rng.uniform_int(2));
    }
    labels[0] = 1;
    labels[static_cast<std::size_t>(n) - 1] = 0;
    const RocCurve curve = roc_curve(scores, labels);
    CHECK(curve.points.front().fpr == 0.0);
    CHECK(curve.points.front().tpr == 0.0);
    CHECK(std::isinf(curve.points.front().threshold));
    CHECK(curve.points.back().fpr == 100.0);
    CHECK(curve.points.back().tpr == 100.0);
    for (std::size_t k = 1; k < curve.points.size(); ++k) {
      CHECK(curve.points[k].fpr >= curve.points[k - 1].fpr);
      CHECK(curve.points[k].tpr >= curve.points[k - 1].tpr);
    }
  }
}

TEST_CASE("trapezoidal AUC equals the pair-count oracle with heavy ties") {
  Rng rng(2);
  for (int rep = 0; rep < 200; ++rep) {
    const Index n = 3 + rng.uniform_int(13);
    Eigen::VectorXd scores(n);
    LabelVector labels(static_cast<std::size_t>(n), 0);
    for (Index i = 0; i < n; ++i) {
      scores[i] = static_cast<double>(rng.uniform_int(4));  // small range forces ties
      labels[static_cast<std::size_t>(i)] = static_cast<int>(rng.uniform_int(2));
    }
    labels[0] = 1;
    labels[static_cast<std::size_t>(n) - 1] = 0;
    CHECK(std::abs(auc(scores, labels) - oracle::pair_count_auc(scores, labels)) <= 1e-12);
  }
}

TEST_CASE("AUC is invariant under strictly increasing transforms") {
  Rng rng(3);
  Eigen::VectorXd scores(10);
  LabelVector labels(10, 0);
  for (Index i = 0; i < 10; ++i) {
    scores[i] = rng.uniform(-2.0, 2.0);
    labels[static_cast<std::size_t>(i)] = static_cast<int>(rng.uniform_int(2));
  }
  labels[0] = 1;
  labels[9] = 0;
  const RocCurve base = roc_curve(scores, labels);
  const Eigen::VectorXd warped = (scores.array() * 3.0).exp();
  const RocCurve after = roc_curve(warped, labels);
  CHECK(base.auc == doctest::Approx(after.auc).epsilon(1e-12));
  REQUIRE(base.points.size() == after.points.size());
  for (std::size_t k = 0; k < base.points.size(); ++k) {
    CHECK(base.points[k].fpr == doctest::Approx(after.points[k].fpr).epsilon(1e-12));
    CHECK(base.points[k].tpr == doctest::Approx(after.points[k].tpr).epsilon(1e-12));
  }
}

TEST_CASE("negating tie-free scores complements the AUC") {
  Rng rng(4);
  Eigen::VectorXd scores(12);
  LabelVector labels(12, 0);
  for (Index i = 0; i < 12; ++i) {
    scores[i] = rng.uniform() + static_cast<double>(i) * 1e-3;  // distinct
    labels[static_cast<std::size_t>(i)] = static_cast<int>(rng.uniform_int(2));
  }
  labels[0] = 1;
  labels[11] = 0;
  CHECK(auc(scores, labels) + auc(-scores, labels) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("score stats report class means, sds, and the gap") {
  SUBCASE("identical scores have zero gap") {
    const ScoreStats st = score_stats(vec({2, 2, 2, 2}), {1, 0, 1, 0});
    CHECK(st.gap == doctest::Approx(0.0));
    CHECK(st.separation == doctest::Approx(0.0));
  }
  SUBCASE("constant classes give the plain mean gap") {
    const ScoreStats st = score_stats(vec({10, 10, 0, 0}), {1, 1, 0, 0});
    CHECK(st.mean_pos == doctest::Approx(10.0));
    CHECK(st.mean_neg == doctest::Approx(0.0));
    CHECK(st.sd_pos == doctest::Approx(0.0));
    CHECK(st.sd_neg == doctest::Approx(0.0));
    CHECK(st.gap == doctest::Approx(10.0));
    CHECK(std::isinf(st.separation));
  }
  SUBCASE("random instance matches direct recomputation") {
    Rng rng(5);
    Eigen::VectorXd scores(30);
    LabelVector labels(30, 0);
    for (Index i = 0; i < 30; ++i) {
      scores[i] = rng.uniform(-1.0, 3.0);
      labels[static_cast<std::size_t>(i)] = static_cast<int>(rng.uniform_int(2));
    }
    const ScoreStats st = score_stats(scores, labels);
    double sp = 0, sn = 0, np = 0, nn = 0;
    for (Index i = 0; i < 30; ++i) {
      if (labels[static_cast<std::size_t>(i)]) {
        sp += scores[i];
        np += 1;
      } else {
        sn += scores[i];
        nn += 1;
      }
    }
    CHECK(st.mean_pos == doctest::Approx(sp / np).epsilon(1e-12));
    CHECK(st.mean_neg == doctest::Approx(sn / nn).epsilon(1e-12));
    CHECK(st.gap == doctest::Approx(sp / np - sn / nn).epsilon(1e-12));
  }
}

TEST_CASE("roc csv has the pinned header and one row per point") {
  const RocCurve curve = roc_curve(vec({4, 3, 2, 1}), {1, 0, 1, 0});
  const auto path = std::filesystem::temp_directory_path() / "tonmf_roc_test.csv";
  write_roc_csv(curve, path.string(), "manifest=manifest.json");

  std::ifstream in(path);
  std::string line;
  REQUIRE(std::getline(in, line));
  CHECK(line == "threshold,fpr,tpr");
  std::size_t rows = 0;
  bool saw_comment = false;
  while (std::getline(in, line)) {
    if (!line.empty() && line[0] == '#') {
      saw_comment = true;
      continue;
    }
    ++rows;
  }
  CHECK(rows == curve.points.size());
  CHECK(saw_comment);
}
