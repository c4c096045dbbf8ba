#pragma once

#include <cmath>
#include <vector>

#include "thermsal/errors.hpp"
#include "thermsal/image.hpp"

namespace thermsal {

inline constexpr double kLanczosSupport = 3.0;

// sinc(x) * sinc(x/3) on |x| < 3, zero outside.
inline double lanczos3(double x) {
  x = std::abs(x);
  if (x >= kLanczosSupport) return 0.0;
  if (x < 1e-12) return 1.0;
  double px = M_PI * x;
  return kLanczosSupport * std::sin(px) * std::sin(px / kLanczosSupport) / (px * px);
}

namespace detail {

struct ResampleTap {
  int index;      // clamped source index
  double weight;  // normalized per output pixel
};

// Pixel-center sampling: out pixel o maps to (o+0.5)*scale-0.5 in source space.
// On downscale the kernel is widened by the scale factor; taps outside the
// source are clamped to the edge and their weights still count.
inline std::vector<std::vector<ResampleTap>> lanczos_taps(int in_size, int out_size) {
  double scale = static_cast<double>(in_size) / out_size;
  double filter_scale = std::max(1.0, scale);
  double support = kLanczosSupport * filter_scale;
  std::vector<std::vector<ResampleTap>> taps(out_size);
  for (int o = 0; o < out_size; ++o) {
    double center = (o + 0.5) * scale - 0.5;
    int lo = static_cast<int>(std::ceil(center - support));
    int hi = static_cast<int>(std::floor(center + support));
    double sum = 0.0;
    auto& row = taps[o];
    row.reserve(hi - lo + 1);
    for (int i = lo; i <= hi; ++i) {
      double w = lanczos3((i - center) / filter_scale);
      if (w == 0.0) continue;
      int clamped = i < 0 ? 0 : (i >= in_size ? in_size - 1 : i);
      row.push_back({clamped, w});
      sum += w;
    }
    for (auto& t : row) t.weight /= sum;
  }
  return taps;
}

}  // namespace detail

// Separable Lanczos-3 resize with per-output-pixel weight normalization and
// edge-clamp addressing.
inline FloatMap resize_lanczos(const FloatMap& src, int out_width, int out_height) {
  if (out_width < 1 || out_height < 1)
    throw DimensionError("resize_lanczos: target dimensions must be >= 1");
  if (src.empty()) throw DimensionError("resize_lanczos: empty source");

  auto htaps = detail::lanczos_taps(src.width, out_width);
  FloatMap horiz(out_width, src.height);
  for (int y = 0; y < src.height; ++y) {
    const double* row = src.data.data() + static_cast<std::size_t>(y) * src.width;
    for (int x = 0; x < out_width; ++x) {
      double acc = 0.0;
      for (const auto& t : htaps[x]) acc += t.weight * row[t.index];
      horiz.at(x, y) = acc;
    }
  }

  auto vtaps = detail::lanczos_taps(src.height, out_height);
  FloatMap out(out_width, out_height);
  for (int y = 0; y < out_height; ++y) {
    for (int x = 0; x < out_width; ++x) {
      double acc = 0.0;
      for (const auto& t : vtaps[y]) acc += t.weight * horiz.at(x, t.index);
      out.at(x, y) = acc;
    }
  }
  return out;
}

}  // namespace thermsal
