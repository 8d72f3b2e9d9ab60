#pragma once

#include <array>
#include <vector>

namespace vru::metrics {

struct PRPoint {
  double threshold = 0.0;
  double precision = 0.0;
  double recall = 0.0;
};

// Precision/recall sweep in descending score order. Tied scores are consumed
// as one block so the curve does not depend on the input ordering.
std::vector<PRPoint> pr_curve(const std::vector<double>& scores, const std::vector<int>& labels);

// Area under the PR curve, all-points (step) interpolation.
// Throws std::invalid_argument when labels contain no positive.
double average_precision(const std::vector<double>& scores, const std::vector<int>& labels);

struct MulticlassAP {
  std::vector<double> per_class;  // one-vs-rest AP; NaN where the class is absent
  std::vector<bool> defined;
  double macro = 0.0;  // mean over defined classes
};

// scores[k][i] = score of class k for sample i; labels[i] in [0, num_classes)
MulticlassAP multiclass_ap(const std::vector<std::vector<double>>& scores,
                           const std::vector<int>& labels);

struct TrajError {
  double ade = 0.0;  // mean per-step Euclidean error
  double fde = 0.0;  // final-step Euclidean error
};

TrajError displacement_errors(const std::vector<std::array<double, 2>>& pred,
                              const std::vector<std::array<double, 2>>& gt);

}  // namespace vru::metrics
