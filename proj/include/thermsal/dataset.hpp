#pragma once

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <tuple>
#include <utility>
#include <vector>

#include "thermsal/errors.hpp"

namespace thermsal {

enum class Condition { day, night };
enum class Split { train, test };

inline const char* to_string(Condition c) { return c == Condition::day ? "day" : "night"; }
inline const char* to_string(Split s) { return s == Split::train ? "train" : "test"; }

// Set-level metadata mapping, defaulted to the KAIST convention. Both maps are
// configuration because they are dataset conventions, not file contents.
struct DatasetLayout {
  std::set<int> day_sets = {0, 1, 2, 6, 7, 8};
  std::set<int> test_sets = {6, 7, 8, 9, 10, 11};
  std::string annotations_subdir = "annotations";

  Condition condition_for_set(int set_id) const {
    return day_sets.count(set_id) ? Condition::day : Condition::night;
  }
  Split split_for_set(int set_id) const {
    return test_sets.count(set_id) ? Split::test : Split::train;
  }
};

struct FrameRef {
  int set_id = 0;
  int video_id = 0;
  int frame_index = 0;
  Condition condition = Condition::day;
  Split split = Split::train;

  std::string id() const {
    char buf[48];
    std::snprintf(buf, sizeof(buf), "set%02d/V%03d/I%05d", set_id, video_id, frame_index);
    return buf;
  }

  std::tuple<int, int, int, int> order_key() const {
    return {static_cast<int>(split), set_id, video_id, frame_index};
  }

  friend bool operator==(const FrameRef& a, const FrameRef& b) {
    return a.set_id == b.set_id && a.video_id == b.video_id && a.frame_index == b.frame_index &&
           a.split == b.split && a.condition == b.condition;
  }
  friend bool operator<(const FrameRef& a, const FrameRef& b) {
    return a.order_key() < b.order_key();
  }
};

struct Annotation {
  std::string label;
  double x = 0.0;
  double y = 0.0;
  double w = 0.0;
  double h = 0.0;
  int occluded = 0;
  int ignore = 0;

  friend bool operator==(const Annotation& a, const Annotation& b) {
    return a.label == b.label && a.x == b.x && a.y == b.y && a.w == b.w && a.h == b.h &&
           a.occluded == b.occluded && a.ignore == b.ignore;
  }
};

struct DatasetIndex {
  std::vector<FrameRef> frames;  // sorted by (split, set, video, frame); unique
  std::map<std::string, std::vector<Annotation>> annotations;  // keyed by frame id

  void add_frame(const FrameRef& frame, std::vector<Annotation> anns = {}) {
    frames.push_back(frame);
    if (!anns.empty()) annotations[frame.id()] = std::move(anns);
  }

  // Call once after adding frames; enforces the ordering/uniqueness invariant.
  void finalize() {
    std::sort(frames.begin(), frames.end());
    auto dup = std::adjacent_find(frames.begin(), frames.end());
    if (dup != frames.end()) throw Error("DatasetIndex: duplicate frame " + dup->id());
  }

  const std::vector<Annotation>& annotations_for(const FrameRef& frame) const {
    static const std::vector<Annotation> empty;
    auto it = annotations.find(frame.id());
    return it == annotations.end() ? empty : it->second;
  }

  bool contains(const FrameRef& frame) const {
    return std::binary_search(frames.begin(), frames.end(), frame);
  }
};

namespace detail {

inline std::string format_double(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

inline bool parse_double(std::string_view tok, double* out) {
  auto res = std::from_chars(tok.data(), tok.data() + tok.size(), *out);
  return res.ec == std::errc() && res.ptr == tok.data() + tok.size();
}

inline bool parse_int(std::string_view tok, int* out) {
  auto res = std::from_chars(tok.data(), tok.data() + tok.size(), *out);
  return res.ec == std::errc() && res.ptr == tok.data() + tok.size();
}

inline std::vector<std::string_view> split_ws(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    std::size_t start = i;
    while (i < line.size() && line[i] != ' ' && line[i] != '\t' && line[i] != '\r') ++i;
    if (i > start) out.push_back(line.substr(start, i - start));
  }
  return out;
}

}  // namespace detail

// Caltech bbGt text format: a version header, then one object per line as
// "label x y w h occ vx vy vw vh ign ang" (the trailing angle is optional).
inline std::vector<Annotation> parse_bbgt(std::string_view text) {
  std::vector<Annotation> out;
  std::size_t pos = 0;
  int line_no = 0;
  bool saw_header = false;
  while (pos <= text.size()) {
    std::size_t eol = text.find('\n', pos);
    std::string_view line =
        text.substr(pos, eol == std::string_view::npos ? text.size() - pos : eol - pos);
    ++line_no;
    pos = eol == std::string_view::npos ? text.size() + 1 : eol + 1;

    auto tokens = detail::split_ws(line);
    if (line_no == 1) {
      if (line.substr(0, 15) != "% bbGt version=")
        throw FormatError("bbGt line 1: missing '% bbGt version=' header");
      saw_header = true;
      continue;
    }
    if (tokens.empty()) continue;

    if (tokens.size() != 11 && tokens.size() != 12)
      throw FormatError("bbGt line " + std::to_string(line_no) + ": expected 11 or 12 fields, got " +
                        std::to_string(tokens.size()));
    Annotation ann;
    ann.label = std::string(tokens[0]);
    double vis;
    bool ok = detail::parse_double(tokens[1], &ann.x) && detail::parse_double(tokens[2], &ann.y) &&
              detail::parse_double(tokens[3], &ann.w) && detail::parse_double(tokens[4], &ann.h) &&
              detail::parse_int(tokens[5], &ann.occluded);
    for (int i = 6; ok && i < 10; ++i) ok = detail::parse_double(tokens[i], &vis);
    ok = ok && detail::parse_int(tokens[10], &ann.ignore);
    if (ok && tokens.size() == 12) ok = detail::parse_double(tokens[11], &vis);
    if (!ok)
      throw FormatError("bbGt line " + std::to_string(line_no) + ": non-numeric field");
    if (!(ann.w > 0.0 && ann.h > 0.0))
      throw FormatError("bbGt line " + std::to_string(line_no) + ": box dimensions must be > 0");
    out.push_back(std::move(ann));
  }
  if (!saw_header) throw FormatError("bbGt: empty file, missing header");
  return out;
}

inline std::string serialize_bbgt(const std::vector<Annotation>& anns) {
  std::string out = "% bbGt version=3\n";
  for (const auto& a : anns) {
    out += a.label;
    for (double v : {a.x, a.y, a.w, a.h}) {
      out += ' ';
      out += detail::format_double(v);
    }
    out += ' ';
    out += std::to_string(a.occluded);
    out += " 0 0 0 0 ";
    out += std::to_string(a.ignore);
    out += " 0\n";
  }
  return out;
}

inline std::optional<FrameRef> parse_frame_id(std::string_view id, const DatasetLayout& layout) {
  // "setXX/VYYY/IZZZZZ"
  auto s1 = id.find('/');
  auto s2 = id.find('/', s1 == std::string_view::npos ? 0 : s1 + 1);
  if (s1 == std::string_view::npos || s2 == std::string_view::npos) return std::nullopt;
  std::string_view set_tok = id.substr(0, s1);
  std::string_view vid_tok = id.substr(s1 + 1, s2 - s1 - 1);
  std::string_view frm_tok = id.substr(s2 + 1);
  if (set_tok.substr(0, 3) != "set" || vid_tok.substr(0, 1) != "V" || frm_tok.substr(0, 1) != "I")
    return std::nullopt;
  FrameRef ref;
  if (!detail::parse_int(set_tok.substr(3), &ref.set_id) ||
      !detail::parse_int(vid_tok.substr(1), &ref.video_id) ||
      !detail::parse_int(frm_tok.substr(1), &ref.frame_index))
    return std::nullopt;
  if (ref.frame_index < 0) return std::nullopt;
  ref.condition = layout.condition_for_set(ref.set_id);
  ref.split = layout.split_for_set(ref.set_id);
  return ref;
}

namespace detail {

inline std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline bool parse_prefixed_int(const std::string& name, std::string_view prefix, int* out) {
  if (name.size() <= prefix.size() || std::string_view(name).substr(0, prefix.size()) != prefix)
    return false;
  return parse_int(std::string_view(name).substr(prefix.size()), out);
}

inline std::vector<std::pair<int, std::filesystem::path>> numbered_subdirs(
    const std::filesystem::path& dir, std::string_view prefix) {
  std::vector<std::pair<int, std::filesystem::path>> out;
  if (!std::filesystem::is_directory(dir)) return out;
  for (const auto& entry : std::filesystem::directory_iterator(dir)) {
    if (!entry.is_directory()) continue;
    int value;
    if (parse_prefixed_int(entry.path().filename().string(), prefix, &value))
      out.emplace_back(value, entry.path());
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace detail

// Walks the KAIST directory layout: setXX/VYYY/{lwir,visible}/IZZZZZ.png under
// root (or root/images), with bbGt files under root/<annotations_subdir>.
// When no image tree exists, frames are enumerated from annotation files, so
// an annotations-only checkout is still indexable.
inline DatasetIndex scan_kaist(const std::filesystem::path& root,
                               const DatasetLayout& layout = {}) {
  namespace fs = std::filesystem;
  if (!fs::is_directory(root)) throw IoError("dataset root not found: " + root.string());

  fs::path image_root = root;
  if (detail::numbered_subdirs(image_root, "set").empty() && fs::is_directory(root / "images"))
    image_root = root / "images";
  fs::path ann_root = root / layout.annotations_subdir;

  DatasetIndex index;
  auto sets = detail::numbered_subdirs(image_root, "set");
  bool from_annotations = sets.empty();
  if (from_annotations) sets = detail::numbered_subdirs(ann_root, "set");
  if (sets.empty())
    throw FormatError("no setXX directories under " + root.string() + " or its annotations");

  for (const auto& [set_id, set_dir] : sets) {
    for (const auto& [video_id, video_dir] : detail::numbered_subdirs(set_dir, "V")) {
      std::vector<int> frame_indices;
      if (from_annotations) {
        for (const auto& entry : fs::directory_iterator(video_dir)) {
          if (!entry.is_regular_file() || entry.path().extension() != ".txt") continue;
          int frame_index;
          if (detail::parse_prefixed_int(entry.path().stem().string(), "I", &frame_index))
            frame_indices.push_back(frame_index);
        }
      } else {
        fs::path frames_dir = video_dir / "lwir";
        if (!fs::is_directory(frames_dir)) frames_dir = video_dir / "visible";
        if (!fs::is_directory(frames_dir)) continue;
        for (const auto& entry : fs::directory_iterator(frames_dir)) {
          if (!entry.is_regular_file()) continue;
          auto ext = entry.path().extension();
          if (ext != ".png" && ext != ".jpg" && ext != ".jpeg") continue;
          int frame_index;
          if (detail::parse_prefixed_int(entry.path().stem().string(), "I", &frame_index))
            frame_indices.push_back(frame_index);
        }
      }
      std::sort(frame_indices.begin(), frame_indices.end());
      for (int frame_index : frame_indices) {
        FrameRef ref{set_id, video_id, frame_index, layout.condition_for_set(set_id),
                     layout.split_for_set(set_id)};
        std::vector<Annotation> anns;
        char ann_name[16];
        std::snprintf(ann_name, sizeof(ann_name), "I%05d.txt", frame_index);
        fs::path ann_path = ann_root / set_dir.filename() / video_dir.filename() / ann_name;
        if (fs::is_regular_file(ann_path)) anns = parse_bbgt(detail::read_text_file(ann_path));
        index.add_frame(ref, std::move(anns));
      }
    }
  }
  index.finalize();
  return index;
}

struct SamplingConfig {
  int train_stride = 3;
  int test_stride = 20;
  int offset = 0;
};

// Stride sampling over frame indices, per video: keep frame_index congruent to
// offset modulo the split's stride.
inline std::vector<FrameRef> sample_split(const DatasetIndex& index, Split split,
                                          const SamplingConfig& cfg = {}) {
  int stride = split == Split::train ? cfg.train_stride : cfg.test_stride;
  if (stride < 1) throw Error("sample_split: stride must be >= 1");
  std::vector<FrameRef> out;
  for (const auto& frame : index.frames)
    if (frame.split == split && frame.frame_index % stride == cfg.offset % stride)
      out.push_back(frame);
  return out;
}

// Reasonable-condition partition: pedestrians at least 50 px tall, unoccluded,
// fully inside the image. Everything else becomes an ignore region for
// evaluation rather than being dropped.
inline std::pair<std::vector<Annotation>, std::vector<Annotation>> filter_reasonable(
    const std::vector<Annotation>& anns, int img_w, int img_h, double min_height = 50.0) {
  std::vector<Annotation> kept, ignored;
  for (const auto& a : anns) {
    bool inside = a.x >= 0.0 && a.y >= 0.0 && a.x + a.w <= img_w && a.y + a.h <= img_h;
    bool reasonable =
        a.label == "person" && a.h >= min_height && a.occluded == 0 && a.ignore == 0 && inside;
    (reasonable ? kept : ignored).push_back(a);
  }
  return {std::move(kept), std::move(ignored)};
}

struct SubsetConfig {
  int day_stride = 15;
  int night_stride = 10;
  bool reasonable_only = false;  // count any 'person' box by default
  int img_width = 640;
  int img_height = 512;
};

// Annotation-subset selection: among train frames containing pedestrians,
// stride separately over the day and night sequences (0-based positions
// congruent to 0), then return the union in canonical frame order.
inline std::vector<FrameRef> select_annotation_subset(const DatasetIndex& index,
                                                      const SubsetConfig& cfg = {}) {
  if (cfg.day_stride < 1 || cfg.night_stride < 1)
    throw Error("select_annotation_subset: strides must be >= 1");
  std::vector<FrameRef> out;
  int day_pos = 0, night_pos = 0;
  for (const auto& frame : index.frames) {
    if (frame.split != Split::train) continue;
    const auto& anns = index.annotations_for(frame);
    bool has_pedestrian = false;
    if (cfg.reasonable_only) {
      has_pedestrian = !filter_reasonable(anns, cfg.img_width, cfg.img_height).first.empty();
    } else {
      for (const auto& a : anns)
        if (a.label == "person") {
          has_pedestrian = true;
          break;
        }
    }
    if (!has_pedestrian) continue;
    if (frame.condition == Condition::day) {
      if (day_pos % cfg.day_stride == 0) out.push_back(frame);
      ++day_pos;
    } else {
      if (night_pos % cfg.night_stride == 0) out.push_back(frame);
      ++night_pos;
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

// Kept-pedestrian count per frame -> number of frames with that count.
inline std::map<int, int> pedestrian_histogram(const DatasetIndex& index,
                                               const std::vector<FrameRef>& frames,
                                               int img_w = 640, int img_h = 512) {
  std::map<int, int> hist;
  for (const auto& frame : frames) {
    if (!index.contains(frame)) throw Error("pedestrian_histogram: frame not in index: " + frame.id());
    auto kept = filter_reasonable(index.annotations_for(frame), img_w, img_h).first;
    ++hist[static_cast<int>(kept.size())];
  }
  return hist;
}

inline std::string frame_list_string(const std::vector<FrameRef>& frames) {
  std::string out;
  for (const auto& f : frames) {
    out += f.id();
    out += '\n';
  }
  return out;
}

inline std::vector<FrameRef> parse_frame_list(std::string_view text, const DatasetLayout& layout) {
  std::vector<FrameRef> out;
  std::size_t pos = 0;
  int line_no = 0;
  while (pos < text.size()) {
    std::size_t eol = text.find('\n', pos);
    std::string_view line =
        text.substr(pos, eol == std::string_view::npos ? text.size() - pos : eol - pos);
    pos = eol == std::string_view::npos ? text.size() : eol + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.empty()) continue;
    auto ref = parse_frame_id(line, layout);
    if (!ref)
      throw FormatError("frame list line " + std::to_string(line_no) + ": bad frame id");
    out.push_back(*ref);
  }
  return out;
}

}  // namespace thermsal
