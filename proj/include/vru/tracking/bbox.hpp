#pragma once

#include <algorithm>

namespace vru::tracking {

// Center-parameterized box in pixels.
struct BBox {
  double cx = 0.0;
  double cy = 0.0;
  double w = 0.0;
  double h = 0.0;
};

inline double iou(const BBox& a, const BBox& b) {
  const double ax0 = a.cx - a.w / 2, ax1 = a.cx + a.w / 2;
  const double ay0 = a.cy - a.h / 2, ay1 = a.cy + a.h / 2;
  const double bx0 = b.cx - b.w / 2, bx1 = b.cx + b.w / 2;
  const double by0 = b.cy - b.h / 2, by1 = b.cy + b.h / 2;
  const double ix = std::max(0.0, std::min(ax1, bx1) - std::max(ax0, bx0));
  const double iy = std::max(0.0, std::min(ay1, by1) - std::max(ay0, by0));
  const double inter = ix * iy;
  const double uni = a.w * a.h + b.w * b.h - inter;
  return uni > 0.0 ? inter / uni : 0.0;
}

}  // namespace vru::tracking
