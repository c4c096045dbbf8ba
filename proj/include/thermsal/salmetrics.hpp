#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "thermsal/errors.hpp"
#include "thermsal/image.hpp"
#include "thermsal/saliency.hpp"

namespace thermsal {

enum class ThresholdMode {
  adaptive_2x_mean,  // single threshold at min(2*mean, 1)
  max_over_255       // best F over the 256 thresholds k/255
};

struct SaliencyEvalConfig {
  double beta_squared = 0.3;
  ThresholdMode thresholding = ThresholdMode::adaptive_2x_mean;

  void validate() const {
    if (!(beta_squared > 0.0)) throw Error("SaliencyEvalConfig: beta_squared must be > 0");
  }
};

struct BinaryMask {
  int width = 0;
  int height = 0;
  std::vector<std::uint8_t> data;  // 0 or 1

  BinaryMask() = default;
  BinaryMask(int w, int h) : width(w), height(h) {
    if (w < 1 || h < 1) throw DimensionError("BinaryMask: dimensions must be >= 1");
    data.assign(static_cast<std::size_t>(w) * h, 0);
  }
};

// Threshold at twice the mean (capped at 1). An all-zero map stays empty
// rather than selecting everything at threshold 0.
inline BinaryMask adaptive_binarize(const SaliencyMap& s) {
  BinaryMask mask(s.width(), s.height());
  double mean = 0.0;
  for (double v : s.map.data) mean += v;
  mean /= static_cast<double>(s.map.data.size());
  if (mean == 0.0) return mask;
  double t = std::min(2.0 * mean, 1.0);
  for (std::size_t i = 0; i < s.map.data.size(); ++i) mask.data[i] = s.map.data[i] >= t ? 1 : 0;
  return mask;
}

inline BinaryMask binarize_at(const SaliencyMap& s, double threshold) {
  BinaryMask mask(s.width(), s.height());
  for (std::size_t i = 0; i < s.map.data.size(); ++i)
    mask.data[i] = s.map.data[i] >= threshold ? 1 : 0;
  return mask;
}

namespace detail {

inline double f_from_counts(std::size_t tp, std::size_t fp, std::size_t fn, double beta_squared) {
  if (tp == 0) return 0.0;
  double p = static_cast<double>(tp) / static_cast<double>(tp + fp);
  double r = static_cast<double>(tp) / static_cast<double>(tp + fn);
  return (1.0 + beta_squared) * p * r / (beta_squared * p + r);
}

}  // namespace detail

inline double f_beta(const BinaryMask& pred, const BinaryMask& gt, double beta_squared) {
  if (pred.width != gt.width || pred.height != gt.height)
    throw DimensionMismatch("f_beta: mask shapes differ");
  std::size_t tp = 0, fp = 0, fn = 0;
  for (std::size_t i = 0; i < pred.data.size(); ++i) {
    if (pred.data[i] && gt.data[i]) ++tp;
    else if (pred.data[i]) ++fp;
    else if (gt.data[i]) ++fn;
  }
  return detail::f_from_counts(tp, fp, fn, beta_squared);
}

inline double mae(const SaliencyMap& s, const SaliencyMap& g) {
  if (s.width() != g.width() || s.height() != g.height())
    throw DimensionMismatch("mae: map shapes differ");
  double sum = 0.0;
  for (std::size_t i = 0; i < s.map.data.size(); ++i)
    sum += std::abs(s.map.data[i] - g.map.data[i]);
  return sum / static_cast<double>(s.map.data.size());
}

namespace detail {

// Max F over thresholds k/255: suffix sums of a 256-bin histogram give the
// per-threshold confusion counts in one pass.
inline double max_f_over_255(const SaliencyMap& pred, const BinaryMask& gt,
                             double beta_squared) {
  std::size_t hist_pos[256] = {0};
  std::size_t hist_neg[256] = {0};
  std::size_t gt_total = 0;
  for (std::size_t i = 0; i < pred.map.data.size(); ++i) {
    int bin = static_cast<int>(std::floor(pred.map.data[i] * 255.0 + 1e-9));
    bin = std::clamp(bin, 0, 255);
    if (gt.data[i]) {
      ++hist_pos[bin];
      ++gt_total;
    } else {
      ++hist_neg[bin];
    }
  }
  double best = 0.0;
  std::size_t tp = 0, fp = 0;
  for (int k = 255; k >= 0; --k) {
    tp += hist_pos[k];
    fp += hist_neg[k];
    best = std::max(best, f_from_counts(tp, fp, gt_total - tp, beta_squared));
  }
  return best;
}

}  // namespace detail

// Per-image F (with the configured thresholding) and MAE, averaged over the
// common key set. Key sets must match exactly.
inline std::pair<double, double> evaluate_saliency(
    const std::map<std::string, SaliencyMap>& preds,
    const std::map<std::string, SaliencyMap>& gts, const SaliencyEvalConfig& cfg = {}) {
  cfg.validate();
  if (preds.empty()) throw KeyMismatch("evaluate_saliency: no predictions");
  std::string missing;
  for (const auto& [key, _] : preds)
    if (!gts.count(key)) missing += " pred-only:" + key;
  for (const auto& [key, _] : gts)
    if (!preds.count(key)) missing += " gt-only:" + key;
  if (!missing.empty()) throw KeyMismatch("evaluate_saliency: unmatched frames:" + missing);

  double f_sum = 0.0, mae_sum = 0.0;
  for (const auto& [key, pred] : preds) {
    const SaliencyMap& gt = gts.at(key);
    if (pred.width() != gt.width() || pred.height() != gt.height())
      throw DimensionMismatch("evaluate_saliency: shape mismatch on " + key);
    BinaryMask gt_mask = binarize_at(gt, 0.5);
    if (cfg.thresholding == ThresholdMode::adaptive_2x_mean)
      f_sum += f_beta(adaptive_binarize(pred), gt_mask, cfg.beta_squared);
    else
      f_sum += detail::max_f_over_255(pred, gt_mask, cfg.beta_squared);
    mae_sum += mae(pred, gt);
  }
  double n = static_cast<double>(preds.size());
  return {f_sum / n, mae_sum / n};
}

}  // namespace thermsal
