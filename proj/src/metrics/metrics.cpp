#include "vru/metrics/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace vru::metrics {

std::vector<PRPoint> pr_curve(const std::vector<double>& scores, const std::vector<int>& labels) {
  if (scores.size() != labels.size())
    throw std::invalid_argument("pr_curve: scores/labels size mismatch");
  const size_t n = scores.size();
  std::vector<size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](size_t a, size_t b) { return scores[a] > scores[b]; });

  long total_pos = std::count_if(labels.begin(), labels.end(), [](int l) { return l != 0; });
  if (total_pos == 0) throw std::invalid_argument("pr_curve: no positive labels");

  std::vector<PRPoint> curve;
  long tp = 0, fp = 0;
  size_t i = 0;
  while (i < n) {
    const double thr = scores[order[i]];
    // consume the whole tie block before emitting a point
    while (i < n && scores[order[i]] == thr) {
      if (labels[order[i]] != 0)
        ++tp;
      else
        ++fp;
      ++i;
    }
    PRPoint p;
    p.threshold = thr;
    p.precision = static_cast<double>(tp) / static_cast<double>(tp + fp);
    p.recall = static_cast<double>(tp) / static_cast<double>(total_pos);
    curve.push_back(p);
  }
  return curve;
}

double average_precision(const std::vector<double>& scores, const std::vector<int>& labels) {
  const auto curve = pr_curve(scores, labels);
  double ap = 0.0, prev_recall = 0.0;
  for (const auto& p : curve) {
    ap += (p.recall - prev_recall) * p.precision;
    prev_recall = p.recall;
  }
  return ap;
}

MulticlassAP multiclass_ap(const std::vector<std::vector<double>>& scores,
                           const std::vector<int>& labels) {
  const size_t num_classes = scores.size();
  MulticlassAP out;
  out.per_class.assign(num_classes, std::numeric_limits<double>::quiet_NaN());
  out.defined.assign(num_classes, false);
  double sum = 0.0;
  int defined_count = 0;
  for (size_t k = 0; k < num_classes; ++k) {
    if (scores[k].size() != labels.size())
      throw std::invalid_argument("multiclass_ap: scores/labels size mismatch");
    std::vector<int> binary(labels.size());
    bool any = false;
    for (size_t i = 0; i < labels.size(); ++i) {
      binary[i] = labels[i] == static_cast<int>(k) ? 1 : 0;
      any = any || binary[i];
    }
    if (!any) continue;  // absent class: skipped, flagged via defined=false
    out.per_class[k] = average_precision(scores[k], binary);
    out.defined[k] = true;
    sum += out.per_class[k];
    ++defined_count;
  }
  out.macro = defined_count > 0 ? sum / defined_count : 0.0;
  return out;
}

TrajError displacement_errors(const std::vector<std::array<double, 2>>& pred,
                              const std::vector<std::array<double, 2>>& gt) {
  if (pred.size() != gt.size() || pred.empty())
    throw std::invalid_argument("displacement_errors: shape mismatch");
  TrajError e;
  double sum = 0.0;
  for (size_t t = 0; t < pred.size(); ++t) {
    const double dx = pred[t][0] - gt[t][0];
    const double dy = pred[t][1] - gt[t][1];
    sum += std::sqrt(dx * dx + dy * dy);
  }
  e.ade = sum / static_cast<double>(pred.size());
  const double dx = pred.back()[0] - gt.back()[0];
  const double dy = pred.back()[1] - gt.back()[1];
  e.fde = std::sqrt(dx * dx + dy * dy);
  return e;
}

}  // namespace vru::metrics
