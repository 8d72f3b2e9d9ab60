#include "vru/tracking/hungarian.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

namespace vru::tracking {

namespace {

// Potential-based Hungarian for n <= m, 1-indexed internal arrays.
std::vector<int> solve_rows_leq_cols(const std::vector<std::vector<double>>& a) {
  const int n = static_cast<int>(a.size());
  const int m = static_cast<int>(a[0].size());
  const double inf = std::numeric_limits<double>::infinity();

  std::vector<double> u(n + 1, 0.0), v(m + 1, 0.0);
  std::vector<int> match(m + 1, 0);  // column -> row
  std::vector<int> way(m + 1, 0);

  for (int i = 1; i <= n; ++i) {
    match[0] = i;
    int j0 = 0;
    std::vector<double> minv(m + 1, inf);
    std::vector<char> used(m + 1, 0);
    do {
      used[j0] = 1;
      const int i0 = match[j0];
      double delta = inf;
      int j1 = -1;
      for (int j = 1; j <= m; ++j) {
        if (used[j]) continue;
        const double cur = a[i0 - 1][j - 1] - u[i0] - v[j];
        if (cur < minv[j]) {
          minv[j] = cur;
          way[j] = j0;
        }
        if (minv[j] < delta) {
          delta = minv[j];
          j1 = j;
        }
      }
      for (int j = 0; j <= m; ++j) {
        if (used[j]) {
          u[match[j]] += delta;
          v[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (match[j0] != 0);
    do {
      const int j1 = way[j0];
      match[j0] = match[j1];
      j0 = j1;
    } while (j0);
  }

  std::vector<int> row_to_col(n, -1);
  for (int j = 1; j <= m; ++j)
    if (match[j] != 0) row_to_col[match[j] - 1] = j - 1;
  return row_to_col;
}

}  // namespace

std::vector<int> min_cost_assignment(const std::vector<std::vector<double>>& cost) {
  if (cost.empty()) return {};
  const int rows = static_cast<int>(cost.size());
  const int cols = static_cast<int>(cost[0].size());
  for (const auto& r : cost)
    if (static_cast<int>(r.size()) != cols)
      throw std::invalid_argument("min_cost_assignment: ragged cost matrix");
  if (cols == 0) return std::vector<int>(rows, -1);

  if (rows <= cols) return solve_rows_leq_cols(cost);

  // transpose, solve, invert the mapping
  std::vector<std::vector<double>> t(cols, std::vector<double>(rows));
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) t[j][i] = cost[i][j];
  const auto col_to_row = solve_rows_leq_cols(t);
  std::vector<int> row_to_col(rows, -1);
  for (int j = 0; j < cols; ++j)
    if (col_to_row[j] >= 0) row_to_col[col_to_row[j]] = j;
  return row_to_col;
}

Association associate(const std::vector<BBox>& tracks, const std::vector<BBox>& detections,
                      double iou_min) {
  if (iou_min < 0.0 || iou_min > 1.0)
    throw std::invalid_argument("associate: iou_min must lie in [0,1]");

  Association out;
  if (tracks.empty() || detections.empty()) {
    for (size_t i = 0; i < tracks.size(); ++i) out.unmatched_tracks.push_back(static_cast<int>(i));
    for (size_t j = 0; j < detections.size(); ++j)
      out.unmatched_detections.push_back(static_cast<int>(j));
    return out;
  }

  std::vector<std::vector<double>> cost(tracks.size(), std::vector<double>(detections.size()));
  for (size_t i = 0; i < tracks.size(); ++i)
    for (size_t j = 0; j < detections.size(); ++j) cost[i][j] = -iou(tracks[i], detections[j]);

  const auto row_to_col = min_cost_assignment(cost);

  std::vector<char> det_matched(detections.size(), 0);
  for (size_t i = 0; i < tracks.size(); ++i) {
    const int j = row_to_col[i];
    if (j >= 0 && -cost[i][j] >= iou_min) {
      out.matches.emplace_back(static_cast<int>(i), j);
      det_matched[j] = 1;
    } else {
      out.unmatched_tracks.push_back(static_cast<int>(i));
    }
  }
  for (size_t j = 0; j < detections.size(); ++j)
    if (!det_matched[j]) out.unmatched_detections.push_back(static_cast<int>(j));
  return out;
}

}  // namespace vru::tracking
