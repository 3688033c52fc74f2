#include "tonmf/evaluation.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <numeric>

#include "tonmf/errors.hpp"

namespace tonmf {

namespace {

void check_inputs(const Eigen::VectorXd& scores, const LabelVector& labels) {
  if (static_cast<std::size_t>(scores.size()) != labels.size()) {
    throw ShapeError("scores and labels must have equal length");
  }
  for (int v : labels) {
    if (v != 0 && v != 1) throw ShapeError("labels must be 0 or 1");
  }
  if (!scores.allFinite()) throw NumericError("scores must be finite");
  const Index positives = count_positives(labels);
  if (positives == 0) throw ConfigError("no positive labels: ROC undefined");
  if (positives == static_cast<Index>(labels.size())) {
    throw ConfigError("no negative labels: ROC undefined");
  }
}

}  // namespace

RocCurve roc_curve(const Eigen::VectorXd& scores, const LabelVector& labels) {
  check_inputs(scores, labels);
  const Index n = scores.size();
  const double n_pos = static_cast<double>(count_positives(labels));
  const double n_neg = static_cast<double>(n) - n_pos;

  std::vector<Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), Index{0});
  std::sort(order.begin(), order.end(),
            [&scores](Index a, Index b) { return scores[a] > scores[b]; });

  RocCurve curve;
  curve.points.push_back({std::numeric_limits<double>::infinity(), 0.0, 0.0});

  double tp = 0.0, fp = 0.0, area = 0.0;
  double prev_fpr = 0.0, prev_tpr = 0.0;
  std::size_t k = 0;
  while (k < order.size()) {
    const double threshold = scores[order[k]];
    while (k < order.size() && scores[order[k]] == threshold) {
      if (labels[static_cast<std::size_t>(order[k])] == 1) {
        tp += 1.0;
      } else {
        fp += 1.0;
      }
      ++k;
    }
    const double tpr = 100.0 * tp / n_pos;
    const double fpr = 100.0 * fp / n_neg;
    curve.points.push_back({threshold, fpr, tpr});
    area += (fpr - prev_fpr) / 100.0 * (tpr + prev_tpr) / 200.0;
    prev_fpr = fpr;
    prev_tpr = tpr;
  }
  curve.auc = area;
  return curve;
}

double auc(const Eigen::VectorXd& scores, const LabelVector& labels) {
  return roc_curve(scores, labels).auc;
}

ScoreStats score_stats(const Eigen::VectorXd& scores, const LabelVector& labels) {
  if (static_cast<std::size_t>(scores.size()) != labels.size()) {
    throw ShapeError("scores and labels must have equal length");
  }
  double sum_pos = 0.0, sum_neg = 0.0;
  double n_pos = 0.0, n_neg = 0.0;
  for (Index i = 0; i < scores.size(); ++i) {
    if (labels[static_cast<std::size_t>(i)] == 1) {
      sum_pos += scores[i];
      n_pos += 1.0;
    } else {
      sum_neg += scores[i];
      n_neg += 1.0;
    }
  }
  ScoreStats st;
  st.mean_pos = n_pos > 0.0 ? sum_pos / n_pos : 0.0;
  st.mean_neg = n_neg > 0.0 ? sum_neg / n_neg : 0.0;
  double ss_pos = 0.0, ss_neg = 0.0;
  for (Index i = 0; i < scores.size(); ++i) {
    if (labels[static_cast<std::size_t>(i)] == 1) {
      ss_pos += (scores[i] - st.mean_pos) * (scores[i] - st.mean_pos);
    } else {
      ss_neg += (scores[i] - st.mean_neg) * (scores[i] - st.mean_neg);
    }
  }
  st.sd_pos = n_pos > 0.0 ? std::sqrt(ss_pos / n_pos) : 0.0;
  st.sd_neg = n_neg > 0.0 ? std::sqrt(ss_neg / n_neg) : 0.0;
  st.gap = st.mean_pos - st.mean_neg;
  const double pooled = std::sqrt(0.5 * (st.sd_pos * st.sd_pos + st.sd_neg * st.sd_neg));
  if (pooled > 0.0) {
    st.separation = st.gap / pooled;
  } else if (st.gap != 0.0) {
    st.separation = st.gap > 0.0 ? std::numeric_limits<double>::infinity()
                                 : -std::numeric_limits<double>::infinity();
  } else {
    st.separation = 0.0;
  }
  return st;
}

void write_roc_csv(const RocCurve& curve, const std::string& path,
                   const std::string& trailer_comment) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open output file: " + path);
  out << "threshold,fpr,tpr\n";
  char buf[120];
  for (const auto& p : curve.points) {
    std::snprintf(buf, sizeof(buf), "%.10g,%.10g,%.10g\n", p.threshold, p.fpr, p.tpr);
    out << buf;
  }
  if (!trailer_comment.empty()) out << "# " << trailer_comment << "\n";
  if (!out) throw IoError("write failed: " + path);
}

}  // namespace tonmf
