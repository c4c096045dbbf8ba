#pragma once

#include <algorithm>

#include "thermsal/errors.hpp"
#include "thermsal/image.hpp"

namespace thermsal {

// Summed-area table, same shape as the input: entry (x,y) holds the sum of
// src over [0..x] x [0..y].
inline FloatMap integral_image(const FloatMap& src) {
  if (src.empty()) throw DimensionError("integral_image: empty map");
  FloatMap out(src.width, src.height);
  for (int y = 0; y < src.height; ++y) {
    double row_sum = 0.0;
    for (int x = 0; x < src.width; ++x) {
      row_sum += src.at(x, y);
      out.at(x, y) = row_sum + (y > 0 ? out.at(x, y - 1) : 0.0);
    }
  }
  return out;
}

// Inclusive rectangle sum from a summed-area table; the box is intersected
// with the image first.
inline double box_sum(const FloatMap& table, int x0, int y0, int x1, int y1) {
  x0 = std::max(x0, 0);
  y0 = std::max(y0, 0);
  x1 = std::min(x1, table.width - 1);
  y1 = std::min(y1, table.height - 1);
  if (x0 > x1 || y0 > y1) return 0.0;
  double s = table.at(x1, y1);
  if (x0 > 0) s -= table.at(x0 - 1, y1);
  if (y0 > 0) s -= table.at(x1, y0 - 1);
  if (x0 > 0 && y0 > 0) s += table.at(x0 - 1, y0 - 1);
  return s;
}

// Mean of the (2r+1)^2 box centered at (cx,cy), clamped to the image; the
// divisor is the clamped pixel count.
inline double box_mean_clamped(const FloatMap& table, int cx, int cy, int r) {
  int x0 = std::max(cx - r, 0);
  int y0 = std::max(cy - r, 0);
  int x1 = std::min(cx + r, table.width - 1);
  int y1 = std::min(cy + r, table.height - 1);
  double count = static_cast<double>(x1 - x0 + 1) * (y1 - y0 + 1);
  return box_sum(table, x0, y0, x1, y1) / count;
}

}  // namespace thermsal
