#pragma once

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <vector>

#include "thermsal/dft.hpp"
#include "thermsal/errors.hpp"
#include "thermsal/image.hpp"
#include "thermsal/image_io.hpp"
#include "thermsal/integral.hpp"
#include "thermsal/resample.hpp"

namespace thermsal {

// Per-pixel conspicuity in [0,1], same shape as the source image.
struct SaliencyMap {
  FloatMap map;

  SaliencyMap() = default;
  explicit SaliencyMap(FloatMap m) : map(std::move(m)) {
    for (double v : map.data)
      if (!(v >= 0.0 && v <= 1.0))
        throw Error("SaliencyMap: value outside [0,1]");
  }

  int width() const { return map.width; }
  int height() const { return map.height; }
};

struct SpectralResidualParams {
  int working_width = 64;
  int working_height = 64;
  double log_epsilon = 1e-8;
  double smoothing_sigma = 2.5;

  void validate() const {
    if (working_width < 8 || working_height < 8)
      throw DimensionError("spectral residual: working size must be >= 8");
    if (!(log_epsilon > 0.0)) throw Error("spectral residual: log_epsilon must be > 0");
    if (!(smoothing_sigma >= 0.0)) throw Error("spectral residual: smoothing_sigma must be >= 0");
  }
};

struct FineGrainedParams {
  std::vector<int> surround_radii = {3, 7, 15, 31};

  void validate() const {
    if (surround_radii.empty()) throw Error("fine grained: need at least one radius");
    int prev = 0;
    for (int r : surround_radii) {
      if (r < 1 || r <= prev) throw Error("fine grained: radii must be strictly increasing, >= 1");
      prev = r;
    }
  }
};

namespace detail {

// 3x3 box mean with replicated edges (always 9 taps).
inline FloatMap box3x3_replicate(const FloatMap& src) {
  FloatMap out(src.width, src.height);
  for (int y = 0; y < src.height; ++y) {
    for (int x = 0; x < src.width; ++x) {
      double acc = 0.0;
      for (int dy = -1; dy <= 1; ++dy) {
        int sy = std::clamp(y + dy, 0, src.height - 1);
        for (int dx = -1; dx <= 1; ++dx) {
          int sx = std::clamp(x + dx, 0, src.width - 1);
          acc += src.at(sx, sy);
        }
      }
      out.at(x, y) = acc / 9.0;
    }
  }
  return out;
}

// Separable Gaussian, radius ceil(3*sigma), replicated edges.
inline FloatMap gaussian_blur(const FloatMap& src, double sigma) {
  if (sigma <= 0.0) return src;
  int radius = std::max(1, static_cast<int>(std::ceil(3.0 * sigma)));
  std::vector<double> kernel(2 * radius + 1);
  double sum = 0.0;
  for (int k = -radius; k <= radius; ++k) {
    kernel[k + radius] = std::exp(-(static_cast<double>(k) * k) / (2.0 * sigma * sigma));
    sum += kernel[k + radius];
  }
  for (double& w : kernel) w /= sum;

  FloatMap horiz(src.width, src.height);
  for (int y = 0; y < src.height; ++y)
    for (int x = 0; x < src.width; ++x) {
      double acc = 0.0;
      for (int k = -radius; k <= radius; ++k)
        acc += kernel[k + radius] * src.at(std::clamp(x + k, 0, src.width - 1), y);
      horiz.at(x, y) = acc;
    }
  FloatMap out(src.width, src.height);
  for (int y = 0; y < src.height; ++y)
    for (int x = 0; x < src.width; ++x) {
      double acc = 0.0;
      for (int k = -radius; k <= radius; ++k)
        acc += kernel[k + radius] * horiz.at(x, std::clamp(y + k, 0, src.height - 1));
      out.at(x, y) = acc;
    }
  return out;
}

inline FloatMap clamp_unit(FloatMap m) {
  for (double& v : m.data) v = std::clamp(v, 0.0, 1.0);
  return m;
}

}  // namespace detail

// Spectral-residual saliency: suppress the smooth part of the log-amplitude
// spectrum, reconstruct with the original phase, square, smooth, normalize.
inline SaliencyMap spectral_residual(const GrayImage& src,
                                     const SpectralResidualParams& params = {}) {
  params.validate();
  if (src.width < 8 || src.height < 8)
    throw DimensionError("spectral_residual: source must be at least 8x8");

  FloatMap working =
      resize_lanczos(to_float_map(src), params.working_width, params.working_height);
  ComplexMap spectrum = dft2d(working);

  std::size_t n = spectrum.re.size();
  FloatMap log_amplitude(params.working_width, params.working_height);
  std::vector<double> phase(n);
  for (std::size_t i = 0; i < n; ++i) {
    double amp = std::hypot(spectrum.re[i], spectrum.im[i]);
    log_amplitude.data[i] = std::log(amp + params.log_epsilon);
    phase[i] = std::atan2(spectrum.im[i], spectrum.re[i]);
  }

  FloatMap smoothed = detail::box3x3_replicate(log_amplitude);
  ComplexMap residual_spectrum(params.working_width, params.working_height);
  for (std::size_t i = 0; i < n; ++i) {
    double mag = std::exp(log_amplitude.data[i] - smoothed.data[i]);
    residual_spectrum.re[i] = mag * std::cos(phase[i]);
    residual_spectrum.im[i] = mag * std::sin(phase[i]);
  }

  ComplexMap spatial = idft2d(residual_spectrum);
  FloatMap energy(params.working_width, params.working_height);
  for (std::size_t i = 0; i < n; ++i)
    energy.data[i] = spatial.re[i] * spatial.re[i] + spatial.im[i] * spatial.im[i];

  FloatMap normalized =
      minmax_normalize(detail::gaussian_blur(energy, params.smoothing_sigma));
  FloatMap full = resize_lanczos(normalized, src.width, src.height);
  return SaliencyMap(detail::clamp_unit(std::move(full)));
}

// Multi-scale center-surround contrast via one summed-area table.
inline SaliencyMap fine_grained(const GrayImage& src, const FineGrainedParams& params = {}) {
  params.validate();
  int max_radius = params.surround_radii.back();
  if (src.width <= 2 * max_radius || src.height <= 2 * max_radius)
    throw DimensionError("fine_grained: image too small for largest surround radius");

  // Work on raw byte values: integer-valued sums stay exact in the table, so
  // a constant image yields exactly zero contrast. The final normalization
  // removes the scale anyway.
  FloatMap values(src.width, src.height);
  for (std::size_t i = 0; i < src.data.size(); ++i) values.data[i] = src.data[i];
  FloatMap table = integral_image(values);
  FloatMap contrast(src.width, src.height);
  for (int y = 0; y < src.height; ++y) {
    for (int x = 0; x < src.width; ++x) {
      double center = values.at(x, y);
      double acc = 0.0;
      for (int r : params.surround_radii) {
        double surround = box_mean_clamped(table, x, y, r);
        double on = std::max(0.0, center - surround);
        double off = std::max(0.0, surround - center);
        acc += on + off;
      }
      contrast.at(x, y) = acc;
    }
  }
  return SaliencyMap(minmax_normalize(contrast));
}

// Saliency maps persist as 8-bit gray PNG, value = round(s*255).
inline void save_saliency_png(const SaliencyMap& s, const std::filesystem::path& path) {
  save_image(to_gray(s.map), path);
}

// Externally produced maps go through the same reader; min-max normalization
// on ingest puts them on the [0,1] scale regardless of their byte range.
inline SaliencyMap load_saliency_png(const std::filesystem::path& path, bool normalize = true) {
  FloatMap m = to_float_map(load_gray(path));
  return SaliencyMap(normalize ? minmax_normalize(m) : std::move(m));
}

}  // namespace thermsal
