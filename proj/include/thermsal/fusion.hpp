#pragma once

#include "thermsal/errors.hpp"
#include "thermsal/image.hpp"
#include "thermsal/saliency.hpp"

namespace thermsal {

struct FusionConfig {
  int replaced_channel = 2;  // must be 0, 1, or 2

  void validate() const {
    if (replaced_channel < 0 || replaced_channel > 2)
      throw Error("FusionConfig: replaced_channel must be in {0,1,2}");
  }
};

inline RgbImage replicate_to_rgb(const GrayImage& t) {
  RgbImage out;
  out.planes = {t, t, t};
  return out;
}

// Channel-replacement augmentation: one plane carries the quantized saliency
// map, the other two stay byte-identical to the thermal input.
inline RgbImage fuse_channel_replace(const GrayImage& t, const SaliencyMap& s,
                                     const FusionConfig& cfg = {}) {
  cfg.validate();
  if (t.width != s.width() || t.height != s.height())
    throw DimensionMismatch("fuse_channel_replace: thermal and saliency shapes differ");
  RgbImage out = replicate_to_rgb(t);
  GrayImage& plane = out.planes[cfg.replaced_channel];
  for (std::size_t i = 0; i < plane.data.size(); ++i)
    plane.data[i] = quantize_unit(s.map.data[i]);
  return out;
}

}  // namespace thermsal
