#pragma once

#include <string>
#include <vector>

#include <Eigen/Dense>

#include "tonmf/term_doc_matrix.hpp"

namespace tonmf {

struct RocPoint {
  double threshold = 0.0;
  double fpr = 0.0;  // percent, 0..100
  double tpr = 0.0;  // percent, 0..100
};

// Thresholds sweep the distinct score values in descending order; tied
// scores enter the positive set together. The curve always starts at (0, 0)
// with an infinite threshold and ends at (100, 100).
struct RocCurve {
  std::vector<RocPoint> points;
  double auc = 0.0;  // trapezoidal area over (fpr/100, tpr/100)
};

RocCurve roc_curve(const Eigen::VectorXd& scores, const LabelVector& labels);

// Equals the pairwise Mann-Whitney statistic: P(score_pos > score_neg) plus
// half credit for ties.
double auc(const Eigen::VectorXd& scores, const LabelVector& labels);

struct ScoreStats {
  double mean_pos = 0.0;
  double sd_pos = 0.0;
  double mean_neg = 0.0;
  double sd_neg = 0.0;
  double gap = 0.0;         // mean_pos - mean_neg
  double separation = 0.0;  // gap / pooled sd; +inf when both sds vanish and gap > 0
};

ScoreStats score_stats(const Eigen::VectorXd& scores, const LabelVector& labels);

void write_roc_csv(const RocCurve& curve, const std::string& path,
                   const std::string& trailer_comment = "");

}  // namespace tonmf
