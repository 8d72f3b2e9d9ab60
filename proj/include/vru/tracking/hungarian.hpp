#pragma once

#include <vector>

#include "vru/tracking/bbox.hpp"

namespace vru::tracking {

// Exact min-cost assignment (Kuhn–Munkres with potentials, O(n^2 m)).
// cost is row-major [rows][cols]; returns per-row column index, -1 when a row
// stays unassigned (only possible when rows > cols). Scan order makes the
// result deterministic: among equal-cost optima the lexicographically first
// assignment in row order is produced.
std::vector<int> min_cost_assignment(const std::vector<std::vector<double>>& cost);

struct Association {
  std::vector<std::pair<int, int>> matches;  // (track index, detection index)
  std::vector<int> unmatched_tracks;
  std::vector<int> unmatched_detections;
};

// One-to-one matching maximizing total IoU; matched pairs whose IoU falls
// below iou_min are released to the unmatched sets.
Association associate(const std::vector<BBox>& tracks, const std::vector<BBox>& detections,
                      double iou_min);

}  // namespace vru::tracking
