#pragma once

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "thermsal/dataset.hpp"
#include "thermsal/errors.hpp"

namespace thermsal {

struct Box {
  double x = 0.0;
  double y = 0.0;
  double w = 0.0;
  double h = 0.0;

  double area() const { return w * h; }
};

inline double intersection_area(const Box& a, const Box& b) {
  double ix = std::min(a.x + a.w, b.x + b.w) - std::max(a.x, b.x);
  double iy = std::min(a.y + a.h, b.y + b.h) - std::max(a.y, b.y);
  if (ix <= 0.0 || iy <= 0.0) return 0.0;
  return ix * iy;
}

inline double iou(const Box& a, const Box& b) {
  double inter = intersection_area(a, b);
  double uni = a.area() + b.area() - inter;
  return uni > 0.0 ? inter / uni : 0.0;
}

struct Detection {
  FrameRef frame;
  double x = 0.0;
  double y = 0.0;
  double w = 0.0;
  double h = 0.0;
  double score = 0.0;

  Box box() const { return {x, y, w, h}; }
};

inline Box annotation_box(const Annotation& a) { return {a.x, a.y, a.w, a.h}; }

enum class DetLabel { tp, fp, ignored };

struct MatchResult {
  std::vector<DetLabel> det_labels;  // aligned with the input detection order
  std::vector<bool> gt_matched;      // aligned with the kept ground-truth order
};

// Greedy matching in descending score order (ties by input order): each
// detection takes the unmatched kept GT of highest IoU >= threshold. A
// detection that matches nothing is IGNORED when its intersection over its
// own area with any ignore region reaches the threshold, otherwise FP.
inline MatchResult match_frame(const std::vector<Detection>& dets,
                               const std::vector<Annotation>& kept,
                               const std::vector<Annotation>& ignored, double iou_thresh) {
  MatchResult result;
  result.det_labels.assign(dets.size(), DetLabel::fp);
  result.gt_matched.assign(kept.size(), false);

  std::vector<std::size_t> order(dets.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return dets[a].score > dets[b].score; });

  for (std::size_t oi : order) {
    const Box det_box = dets[oi].box();
    double best_iou = 0.0;
    std::size_t best_gt = kept.size();
    for (std::size_t g = 0; g < kept.size(); ++g) {
      if (result.gt_matched[g]) continue;
      double v = iou(det_box, annotation_box(kept[g]));
      if (v > best_iou) {
        best_iou = v;
        best_gt = g;
      }
    }
    if (best_gt < kept.size() && best_iou >= iou_thresh) {
      result.det_labels[oi] = DetLabel::tp;
      result.gt_matched[best_gt] = true;
      continue;
    }
    double det_area = det_box.area();
    for (const auto& ign : ignored) {
      if (det_area <= 0.0) break;
      if (intersection_area(det_box, annotation_box(ign)) / det_area >= iou_thresh) {
        result.det_labels[oi] = DetLabel::ignored;
        break;
      }
    }
  }
  return result;
}

struct OperatingPoint {
  double threshold = 0.0;
  double fppi = 0.0;
  double miss_rate = 0.0;
};

// One frame's matching inputs.
struct FrameEval {
  std::vector<Detection> detections;
  std::vector<Annotation> kept;
  std::vector<Annotation> ignored;
};

namespace detail {

struct ScoredLabel {
  double score;
  DetLabel label;
};

// Greedy labels depend only on higher-scored detections, so one matching pass
// per frame yields the labels for every threshold prefix.
inline std::vector<ScoredLabel> scored_labels(const std::vector<FrameEval>& frames,
                                              double iou_thresh, std::size_t* total_gt) {
  *total_gt = 0;
  std::vector<ScoredLabel> scored;
  for (const auto& f : frames) {
    *total_gt += f.kept.size();
    MatchResult m = match_frame(f.detections, f.kept, f.ignored, iou_thresh);
    for (std::size_t i = 0; i < f.detections.size(); ++i)
      scored.push_back({f.detections[i].score, m.det_labels[i]});
  }
  std::stable_sort(scored.begin(), scored.end(),
                   [](const ScoredLabel& a, const ScoredLabel& b) { return a.score > b.score; });
  return scored;
}

}  // namespace detail

// One operating point per distinct score threshold, descending; a point at
// threshold t counts every detection with score >= t. Output is ascending in
// fppi (duplicates keep descending-threshold order).
inline std::vector<OperatingPoint> fppi_missrate_curve(const std::vector<FrameEval>& frames,
                                                       double iou_thresh) {
  if (frames.empty()) throw EmptyGroundTruth("fppi_missrate_curve: no frames");
  std::size_t total_gt = 0;
  auto scored = detail::scored_labels(frames, iou_thresh, &total_gt);
  if (total_gt == 0) throw EmptyGroundTruth("fppi_missrate_curve: no kept ground truth");

  std::vector<OperatingPoint> curve;
  if (scored.empty()) {
    curve.push_back({0.0, 0.0, 1.0});
    return curve;
  }
  double frame_count = static_cast<double>(frames.size());
  std::size_t tp = 0, fp = 0;
  for (std::size_t i = 0; i < scored.size(); ++i) {
    if (scored[i].label == DetLabel::tp) ++tp;
    if (scored[i].label == DetLabel::fp) ++fp;
    bool last_of_threshold = i + 1 == scored.size() || scored[i + 1].score != scored[i].score;
    if (last_of_threshold)
      curve.push_back({scored[i].score, static_cast<double>(fp) / frame_count,
                       1.0 - static_cast<double>(tp) / static_cast<double>(total_gt)});
  }
  return curve;
}

inline constexpr double kLamrFloor = 1e-10;

// Geometric mean of miss rates sampled at nine log-spaced FPPI references in
// [1e-2, 1e0]; each reference takes the point with the largest fppi <= it
// (miss 1.0 when none), floored at 1e-10.
inline double lamr(const std::vector<OperatingPoint>& curve) {
  double samples[9];
  for (int k = 0; k <= 8; ++k) {
    double ref = std::pow(10.0, -2.0 + 0.25 * k);
    double miss = 1.0;
    for (const auto& p : curve) {
      if (p.fppi <= ref)
        miss = p.miss_rate;
      else
        break;
    }
    samples[k] = std::max(miss, kLamrFloor);
  }
  // the geometric mean of nine equal samples is that sample; answering it
  // directly keeps the flat cases (all missed, all floored) exact
  bool all_equal = true;
  for (int k = 1; k <= 8; ++k) all_equal = all_equal && samples[k] == samples[0];
  if (all_equal) return samples[0];
  double log_sum = 0.0;
  for (double s : samples) log_sum += std::log(s);
  return std::exp(log_sum / 9.0);
}

enum class ApMode { all_point, eleven_point };

// Area under the monotone (non-increasing) precision envelope over recall.
inline double average_precision(const std::vector<FrameEval>& frames, double iou_thresh,
                                ApMode mode = ApMode::all_point) {
  std::size_t total_gt = 0;
  auto scored = detail::scored_labels(frames, iou_thresh, &total_gt);
  if (total_gt == 0) throw EmptyGroundTruth("average_precision: no kept ground truth");

  std::vector<double> precision, recall;
  std::size_t tp = 0, counted = 0;
  for (const auto& s : scored) {
    if (s.label == DetLabel::ignored) continue;
    ++counted;
    if (s.label == DetLabel::tp) ++tp;
    precision.push_back(static_cast<double>(tp) / static_cast<double>(counted));
    recall.push_back(static_cast<double>(tp) / static_cast<double>(total_gt));
  }
  if (precision.empty()) return 0.0;

  if (mode == ApMode::eleven_point) {
    double sum = 0.0;
    for (int k = 0; k <= 10; ++k) {
      double r_ref = k / 10.0;
      double best = 0.0;
      for (std::size_t i = 0; i < precision.size(); ++i)
        if (recall[i] >= r_ref) best = std::max(best, precision[i]);
      sum += best;
    }
    return sum / 11.0;
  }

  std::vector<double> envelope(precision.size());
  double running = 0.0;
  for (std::size_t i = precision.size(); i-- > 0;) {
    running = std::max(running, precision[i]);
    envelope[i] = running;
  }
  double ap = 0.0;
  for (std::size_t i = 0; i < precision.size(); ++i)
    ap += (recall[i] - (i == 0 ? 0.0 : recall[i - 1])) * envelope[i];
  return ap;
}

enum class EvalCondition { day, night, all };

inline const char* to_string(EvalCondition c) {
  switch (c) {
    case EvalCondition::day: return "day";
    case EvalCondition::night: return "night";
    default: return "all";
  }
}

struct EvalReport {
  EvalCondition condition = EvalCondition::all;
  double lamr = 1.0;
  double map = 0.0;
  std::vector<OperatingPoint> curve;
  std::size_t frame_count = 0;
  std::size_t gt_count = 0;
};

struct EvalOptions {
  double iou_thresh = 0.5;
  int img_width = 640;
  int img_height = 512;
  double min_height = 50.0;
  ApMode ap_mode = ApMode::all_point;
  std::optional<std::vector<FrameRef>> frames;  // restrict to these (e.g. a sampled list)
};

inline bool condition_matches(EvalCondition want, Condition have) {
  return want == EvalCondition::all || (want == EvalCondition::day) == (have == Condition::day);
}

inline EvalReport evaluate(const DatasetIndex& index, const std::vector<Detection>& detections,
                           EvalCondition condition, const EvalOptions& opts = {}) {
  std::vector<FrameRef> eval_frames;
  if (opts.frames) {
    for (const auto& f : *opts.frames) {
      if (!index.contains(f)) throw Error("evaluate: frame not in index: " + f.id());
      if (condition_matches(condition, f.condition)) eval_frames.push_back(f);
    }
  } else {
    for (const auto& f : index.frames)
      if (condition_matches(condition, f.condition)) eval_frames.push_back(f);
  }

  std::vector<FrameEval> frames(eval_frames.size());
  std::map<std::string, std::size_t> slot;
  for (std::size_t i = 0; i < eval_frames.size(); ++i) {
    slot[eval_frames[i].id()] = i;
    auto [kept, ignored] = filter_reasonable(index.annotations_for(eval_frames[i]),
                                             opts.img_width, opts.img_height, opts.min_height);
    frames[i].kept = std::move(kept);
    frames[i].ignored = std::move(ignored);
  }
  for (const auto& det : detections) {
    auto it = slot.find(det.frame.id());
    if (it != slot.end()) {
      frames[it->second].detections.push_back(det);
    } else if (!index.contains(det.frame)) {
      throw Error("evaluate: detection references unknown frame " + det.frame.id());
    }
    // detections on frames outside the condition are simply not evaluated
  }

  EvalReport report;
  report.condition = condition;
  report.curve = fppi_missrate_curve(frames, opts.iou_thresh);
  report.lamr = lamr(report.curve);
  report.map = average_precision(frames, opts.iou_thresh, opts.ap_mode);
  report.frame_count = frames.size();
  for (const auto& f : frames) report.gt_count += f.kept.size();
  return report;
}

// Detection files: one "frame_id x y w h score" per line.
inline std::vector<Detection> parse_detections(std::string_view text, const DatasetLayout& layout) {
  std::vector<Detection> out;
  std::size_t pos = 0;
  int line_no = 0;
  while (pos < text.size()) {
    std::size_t eol = text.find('\n', pos);
    std::string_view line =
        text.substr(pos, eol == std::string_view::npos ? text.size() - pos : eol - pos);
    pos = eol == std::string_view::npos ? text.size() : eol + 1;
    ++line_no;
    auto tokens = detail::split_ws(line);
    if (tokens.empty()) continue;
    if (tokens.size() != 6)
      throw FormatError("detections line " + std::to_string(line_no) +
                        ": expected 6 fields, got " + std::to_string(tokens.size()));
    auto frame = parse_frame_id(tokens[0], layout);
    if (!frame)
      throw FormatError("detections line " + std::to_string(line_no) + ": bad frame id");
    Detection det;
    det.frame = *frame;
    if (!detail::parse_double(tokens[1], &det.x) || !detail::parse_double(tokens[2], &det.y) ||
        !detail::parse_double(tokens[3], &det.w) || !detail::parse_double(tokens[4], &det.h) ||
        !detail::parse_double(tokens[5], &det.score))
      throw FormatError("detections line " + std::to_string(line_no) + ": non-numeric field");
    if (!(det.w > 0.0 && det.h > 0.0) || !std::isfinite(det.score))
      throw FormatError("detections line " + std::to_string(line_no) + ": invalid box or score");
    out.push_back(det);
  }
  return out;
}

}  // namespace thermsal
