#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <vector>

#include "thermsal/errors.hpp"

namespace thermsal {

// 8-bit single-channel raster, row-major, data.size() == width*height.
struct GrayImage {
  int width = 0;
  int height = 0;
  std::vector<std::uint8_t> data;

  GrayImage() = default;
  GrayImage(int w, int h, std::uint8_t fill = 0) : width(w), height(h) {
    if (w < 1 || h < 1) throw DimensionError("GrayImage: dimensions must be >= 1");
    data.assign(static_cast<std::size_t>(w) * h, fill);
  }

  std::uint8_t at(int x, int y) const { return data[static_cast<std::size_t>(y) * width + x]; }
  std::uint8_t& at(int x, int y) { return data[static_cast<std::size_t>(y) * width + x]; }
  std::size_t pixel_count() const { return static_cast<std::size_t>(width) * height; }

  friend bool operator==(const GrayImage& a, const GrayImage& b) {
    return a.width == b.width && a.height == b.height && a.data == b.data;
  }
};

// Three intensity planes of identical shape.
struct RgbImage {
  std::array<GrayImage, 3> planes;

  RgbImage() = default;
  RgbImage(int w, int h) : planes{GrayImage(w, h), GrayImage(w, h), GrayImage(w, h)} {}

  int width() const { return planes[0].width; }
  int height() const { return planes[0].height; }

  friend bool operator==(const RgbImage& a, const RgbImage& b) { return a.planes == b.planes; }
};

// Real-valued map, row-major. Values must stay finite.
struct FloatMap {
  int width = 0;
  int height = 0;
  std::vector<double> data;

  FloatMap() = default;
  FloatMap(int w, int h, double fill = 0.0) : width(w), height(h) {
    if (w < 1 || h < 1) throw DimensionError("FloatMap: dimensions must be >= 1");
    data.assign(static_cast<std::size_t>(w) * h, fill);
  }

  double at(int x, int y) const { return data[static_cast<std::size_t>(y) * width + x]; }
  double& at(int x, int y) { return data[static_cast<std::size_t>(y) * width + x]; }
  std::size_t pixel_count() const { return static_cast<std::size_t>(width) * height; }
  bool empty() const { return data.empty(); }

  friend bool operator==(const FloatMap& a, const FloatMap& b) {
    return a.width == b.width && a.height == b.height && a.data == b.data;
  }
};

inline FloatMap to_float_map(const GrayImage& img) {
  FloatMap out(img.width, img.height);
  for (std::size_t i = 0; i < img.data.size(); ++i) out.data[i] = img.data[i] / 255.0;
  return out;
}

// round(v*255) clamped to [0,255].
inline std::uint8_t quantize_unit(double v) {
  double q = std::lround(v * 255.0);
  return static_cast<std::uint8_t>(std::clamp(q, 0.0, 255.0));
}

inline GrayImage to_gray(const FloatMap& map) {
  GrayImage out(map.width, map.height);
  for (std::size_t i = 0; i < map.data.size(); ++i) out.data[i] = quantize_unit(map.data[i]);
  return out;
}

// BT.601 luma; for replicated planes this returns the plane unchanged.
inline GrayImage luminance(const RgbImage& img) {
  GrayImage out(img.width(), img.height());
  for (std::size_t i = 0; i < out.data.size(); ++i) {
    double y = 0.299 * img.planes[0].data[i] + 0.587 * img.planes[1].data[i] +
               0.114 * img.planes[2].data[i];
    out.data[i] = static_cast<std::uint8_t>(std::clamp<double>(std::lround(y), 0.0, 255.0));
  }
  return out;
}

// [0,1] affine rescale; a constant map collapses to all zeros. Divides by
// the range so the extremes land exactly on 0 and 1, which also makes the
// operation idempotent.
inline FloatMap minmax_normalize(const FloatMap& src) {
  if (src.empty()) throw DimensionError("minmax_normalize: empty map");
  auto [mn_it, mx_it] = std::minmax_element(src.data.begin(), src.data.end());
  double mn = *mn_it, mx = *mx_it;
  FloatMap out(src.width, src.height);
  if (mx > mn) {
    double range = mx - mn;
    for (std::size_t i = 0; i < src.data.size(); ++i) out.data[i] = (src.data[i] - mn) / range;
  }
  return out;
}

template <typename Raster>
inline Raster rot180(const Raster& src) {
  Raster out = src;
  std::reverse(out.data.begin(), out.data.end());
  return out;
}

inline bool all_finite(const FloatMap& m) {
  return std::all_of(m.data.begin(), m.data.end(), [](double v) { return std::isfinite(v); });
}

}  // namespace thermsal
