// Batch CLI for the thermal/saliency pipeline: saliency map generation,
// channel-replacement fusion, KAIST sampling protocols, and the detection
// and saliency evaluation metrics.

#include <CLI11.hpp>

#include <filesystem>
#include <iomanip>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include "thermsal/thermsal.hpp"

namespace fs = std::filesystem;
using namespace thermsal;

namespace {

std::vector<std::string> list_images(const fs::path& dir) {
  if (!fs::is_directory(dir)) throw IoError("not a directory: " + dir.string());
  std::vector<std::string> rel;
  for (const auto& entry : fs::recursive_directory_iterator(dir)) {
    if (!entry.is_regular_file()) continue;
    auto ext = entry.path().extension();
    if (ext == ".png" || ext == ".jpg" || ext == ".jpeg")
      rel.push_back(entry.path().lexically_relative(dir).generic_string());
  }
  std::sort(rel.begin(), rel.end());
  return rel;
}

void ensure_parent(const fs::path& path) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
}

unsigned resolve_workers(int flag_value) {
  if (flag_value >= 1) return static_cast<unsigned>(flag_value);
  return workers_from_env(1);
}

struct Paths {
  std::string input, output, thermal, saliency, root, dets, out, curve, pred, gt, frames;
};

int cmd_saliency(const std::string& method, const Paths& p, unsigned workers) {
  auto files = list_images(p.input);
  if (files.empty()) throw IoError("no images under " + p.input);
  SpectralResidualParams spectral_params;
  FineGrainedParams fine_params;
  parallel_for(files.size(), workers, [&](std::size_t i) {
    GrayImage gray = load_gray(fs::path(p.input) / files[i]);
    SaliencyMap map = method == "spectral" ? spectral_residual(gray, spectral_params)
                                           : fine_grained(gray, fine_params);
    fs::path out_path = fs::path(p.output) / fs::path(files[i]).replace_extension(".png");
    ensure_parent(out_path);
    save_saliency_png(map, out_path);
  });
  std::cout << "wrote " << files.size() << " saliency maps to " << p.output << "\n";
  return 0;
}

int cmd_fuse(const Paths& p, int channel, bool normalize, unsigned workers) {
  auto files = list_images(p.thermal);
  if (files.empty()) throw IoError("no images under " + p.thermal);
  FusionConfig cfg{channel};
  cfg.validate();
  parallel_for(files.size(), workers, [&](std::size_t i) {
    fs::path sal_path = fs::path(p.saliency) / fs::path(files[i]).replace_extension(".png");
    if (!fs::is_regular_file(sal_path)) sal_path = fs::path(p.saliency) / files[i];
    if (!fs::is_regular_file(sal_path))
      throw KeyMismatch("no saliency map for " + files[i]);
    GrayImage thermal = load_gray(fs::path(p.thermal) / files[i]);
    SaliencyMap sal = load_saliency_png(sal_path, normalize);
    RgbImage fused = fuse_channel_replace(thermal, sal, cfg);
    fs::path out_path = fs::path(p.output) / fs::path(files[i]).replace_extension(".png");
    ensure_parent(out_path);
    save_image(fused, out_path);
  });
  std::cout << "wrote " << files.size() << " fused images to " << p.output << "\n";
  return 0;
}

void print_split_summary(const char* what, const std::vector<FrameRef>& frames) {
  std::size_t day = 0;
  for (const auto& f : frames)
    if (f.condition == Condition::day) ++day;
  std::cout << what << ": " << frames.size() << " frames (day " << day << ", night "
            << frames.size() - day << ")\n";
}

std::vector<FrameRef> drop_frames_without_kept(const DatasetIndex& index,
                                               std::vector<FrameRef> frames, int img_w,
                                               int img_h) {
  std::vector<FrameRef> out;
  for (const auto& f : frames)
    if (!filter_reasonable(index.annotations_for(f), img_w, img_h).first.empty())
      out.push_back(f);
  return out;
}

int cmd_dataset_sample(const Paths& p, Split split, const SamplingConfig& cfg,
                       bool reasonable_only, int img_w, int img_h) {
  DatasetIndex index = scan_kaist(p.root);
  auto frames = sample_split(index, split, cfg);
  if (reasonable_only) frames = drop_frames_without_kept(index, std::move(frames), img_w, img_h);
  detail::write_text_file(p.out, frame_list_string(frames));
  print_split_summary(to_string(split), frames);
  return 0;
}

int cmd_dataset_subset(const Paths& p, const SubsetConfig& cfg) {
  DatasetIndex index = scan_kaist(p.root);
  auto frames = select_annotation_subset(index, cfg);
  detail::write_text_file(p.out, frame_list_string(frames));
  print_split_summary("subset", frames);
  std::size_t instances = 0;
  for (const auto& [count, freq] : pedestrian_histogram(index, frames, cfg.img_width, cfg.img_height))
    instances += static_cast<std::size_t>(count) * freq;
  std::cout << "kept pedestrian instances: " << instances << "\n";
  return 0;
}

int cmd_dataset_stats(const Paths& p, Split split, int img_w, int img_h) {
  DatasetIndex index = scan_kaist(p.root);
  std::vector<FrameRef> frames;
  if (!p.frames.empty()) {
    frames = parse_frame_list(detail::read_text_file(p.frames), DatasetLayout{});
  } else {
    for (const auto& f : index.frames)
      if (f.split == split) frames.push_back(f);
  }
  auto hist = pedestrian_histogram(index, frames, img_w, img_h);
  std::string csv = "pedestrians_per_frame,frames\n";
  std::size_t instances = 0;
  for (const auto& [count, freq] : hist) {
    csv += std::to_string(count) + "," + std::to_string(freq) + "\n";
    instances += static_cast<std::size_t>(count) * freq;
  }
  if (!p.out.empty())
    detail::write_text_file(p.out, csv);
  else
    std::cout << csv;
  print_split_summary("frames", frames);
  std::cout << "kept pedestrian instances: " << instances << "\n";
  return 0;
}

EvalCondition parse_condition(const std::string& s) {
  if (s == "day") return EvalCondition::day;
  if (s == "night") return EvalCondition::night;
  return EvalCondition::all;
}

int cmd_eval_det(const Paths& p, const std::string& condition, EvalOptions opts, bool sample,
                 const SamplingConfig& sampling) {
  DatasetIndex index = scan_kaist(p.root);
  auto detections = parse_detections(detail::read_text_file(p.dets), DatasetLayout{});
  if (!p.frames.empty()) {
    opts.frames = parse_frame_list(detail::read_text_file(p.frames), DatasetLayout{});
  } else if (sample) {
    auto frames = sample_split(index, Split::train, sampling);
    auto test = sample_split(index, Split::test, sampling);
    frames.insert(frames.end(), test.begin(), test.end());
    opts.frames = std::move(frames);
  }
  EvalReport report = evaluate(index, detections, parse_condition(condition), opts);

  std::string csv = "condition,lamr,map,frames,gt\n";
  csv += std::string(to_string(report.condition)) + "," + detail::fixed6(report.lamr) + "," +
         detail::fixed6(report.map) + "," + std::to_string(report.frame_count) + "," +
         std::to_string(report.gt_count) + "\n";
  detail::write_text_file(p.out, csv);

  fs::path curve_path = p.curve.empty()
                            ? fs::path(p.out).replace_extension(".curve.csv")
                            : fs::path(p.curve);
  write_curve_csv(report.curve, curve_path);

  std::cout << "condition  frames  gt      lamr      mAP\n"
            << std::left << std::setw(11) << to_string(report.condition) << std::setw(8)
            << report.frame_count << std::setw(8) << report.gt_count << std::fixed
            << std::setprecision(4) << std::setw(10) << report.lamr << report.map << "\n";
  return 0;
}

int cmd_eval_sal(const Paths& p, const std::string& method_name, SaliencyEvalConfig cfg,
                 bool normalize, unsigned workers) {
  auto pred_files = list_images(p.pred);
  if (pred_files.empty()) throw IoError("no prediction maps under " + p.pred);
  std::vector<SaliencyMap> preds(pred_files.size()), gts(pred_files.size());
  parallel_for(pred_files.size(), workers, [&](std::size_t i) {
    preds[i] = load_saliency_png(fs::path(p.pred) / pred_files[i], normalize);
    fs::path gt_path = fs::path(p.gt) / pred_files[i];
    if (!fs::is_regular_file(gt_path))
      throw KeyMismatch("no ground-truth mask for " + pred_files[i]);
    SaliencyMap raw = load_saliency_png(gt_path, false);
    FloatMap binary(raw.width(), raw.height());
    for (std::size_t j = 0; j < raw.map.data.size(); ++j)
      binary.data[j] = raw.map.data[j] >= 0.5 ? 1.0 : 0.0;
    gts[i] = SaliencyMap(std::move(binary));
  });
  // also fail when the gt dir has extras the predictions never covered
  auto gt_files = list_images(p.gt);
  if (gt_files.size() != pred_files.size()) {
    std::string missing;
    for (const auto& g : gt_files)
      if (!std::binary_search(pred_files.begin(), pred_files.end(), g)) missing += " gt-only:" + g;
    throw KeyMismatch("unmatched frames:" + missing);
  }

  std::map<std::string, SaliencyMap> pred_map, gt_map;
  for (std::size_t i = 0; i < pred_files.size(); ++i) {
    std::string key = fs::path(pred_files[i]).replace_extension().generic_string();
    pred_map.emplace(key, std::move(preds[i]));
    gt_map.emplace(key, std::move(gts[i]));
  }
  auto [f_mean, mae_mean] = evaluate_saliency(pred_map, gt_map, cfg);

  std::string csv = "method,f_beta,mae\n";
  csv += method_name + "," + detail::fixed6(f_mean) + "," + detail::fixed6(mae_mean) + "\n";
  detail::write_text_file(p.out, csv);
  std::cout << method_name << ": F_beta " << std::fixed << std::setprecision(4) << f_mean
            << ", MAE " << mae_mean << " over " << pred_files.size() << " images\n";
  return 0;
}

int cmd_curves(const std::vector<std::string>& specs, const Paths& p) {
  std::vector<NamedCurve> curves;
  for (const auto& spec : specs) {
    auto eq = spec.find('=');
    if (eq == std::string::npos || eq == 0)
      throw Error("curve spec must be NAME=FILE, got '" + spec + "'");
    curves.push_back({spec.substr(0, eq), read_curve_csv(spec.substr(eq + 1))});
  }
  ensure_parent(p.out);
  write_curve_svg(curves, p.out);
  std::cout << "wrote " << curves.size() << " curve(s) to " << p.out << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"thermal pedestrian pipeline: saliency, fusion, KAIST protocol, evaluation"};
  app.require_subcommand(1);
  app.set_config("--config");

  Paths paths;
  int workers_flag = 0;
  int channel = 2;
  bool no_normalize = false;
  std::string method = "spectral";
  std::string split_name = "train";
  std::string condition = "all";
  SamplingConfig sampling;
  SubsetConfig subset_cfg;
  bool reasonable_only = false;
  int img_w = 640, img_h = 512;
  EvalOptions eval_opts;
  bool sample = false;
  std::string ap_mode = "all";
  std::string method_name = "method";
  SaliencyEvalConfig sal_cfg;
  std::string threshold_mode = "adaptive";
  std::vector<std::string> curve_specs;

  auto* sal = app.add_subcommand("saliency", "generate static saliency maps for a directory");
  sal->add_option("--method", method, "spectral or finegrained")
      ->check(CLI::IsMember({"spectral", "finegrained"}))
      ->required();
  sal->add_option("--input", paths.input, "input image directory")->required();
  sal->add_option("--output", paths.output, "output directory")->required();
  sal->add_option("--workers", workers_flag, "worker threads (default THERMSAL_WORKERS or 1)");

  auto* fuse = app.add_subcommand("fuse", "replace one thermal channel with the saliency map");
  fuse->add_option("--thermal", paths.thermal, "thermal image directory")->required();
  fuse->add_option("--saliency", paths.saliency, "saliency map directory (matched by filename)")
      ->required();
  fuse->add_option("--output", paths.output, "output directory")->required();
  fuse->add_option("--channel", channel, "replaced channel index")->check(CLI::Range(0, 2));
  fuse->add_flag("--no-normalize", no_normalize, "skip min-max normalization of loaded maps");
  fuse->add_option("--workers", workers_flag, "worker threads");

  auto* dataset = app.add_subcommand("dataset", "KAIST indexing and sampling protocols");
  dataset->require_subcommand(1);
  auto* ds_sample = dataset->add_subcommand("sample", "stride-sample a split");
  ds_sample->add_option("--root", paths.root, "dataset root")->required();
  ds_sample->add_option("--split", split_name)->check(CLI::IsMember({"train", "test"}))->required();
  ds_sample->add_option("--out", paths.out, "frame list output file")->required();
  ds_sample->add_option("--train-stride", sampling.train_stride);
  ds_sample->add_option("--test-stride", sampling.test_stride);
  ds_sample->add_option("--offset", sampling.offset);
  ds_sample->add_flag("--reasonable-only", reasonable_only,
                      "drop frames without reasonable pedestrians");
  ds_sample->add_option("--img-width", img_w);
  ds_sample->add_option("--img-height", img_h);

  auto* ds_subset = dataset->add_subcommand("subset", "select the annotation subset");
  ds_subset->add_option("--root", paths.root)->required();
  ds_subset->add_option("--out", paths.out)->required();
  ds_subset->add_option("--day-stride", subset_cfg.day_stride);
  ds_subset->add_option("--night-stride", subset_cfg.night_stride);
  ds_subset->add_flag("--reasonable-only", subset_cfg.reasonable_only,
                      "count only reasonable pedestrians when selecting frames");

  auto* ds_stats = dataset->add_subcommand("stats", "pedestrian-count histogram");
  ds_stats->add_option("--root", paths.root)->required();
  ds_stats->add_option("--frames", paths.frames, "restrict to a frame list file");
  ds_stats->add_option("--split", split_name)->check(CLI::IsMember({"train", "test"}));
  ds_stats->add_option("--out", paths.out, "histogram CSV (stdout when omitted)");
  ds_stats->add_option("--img-width", img_w);
  ds_stats->add_option("--img-height", img_h);

  auto* eval_det = app.add_subcommand("eval-det", "detection metrics (LAMR, mAP, curve)");
  eval_det->add_option("--dataset", paths.root, "dataset root (annotations required)")->required();
  eval_det->add_option("--dets", paths.dets, "detection file: frame_id x y w h score")->required();
  eval_det->add_option("--condition", condition)->check(CLI::IsMember({"day", "night", "all"}));
  eval_det->add_option("--out", paths.out, "report CSV path")->required();
  eval_det->add_option("--curve", paths.curve, "curve CSV path (default: <out>.curve.csv)");
  eval_det->add_option("--iou", eval_opts.iou_thresh, "IoU threshold");
  eval_det->add_option("--ap", ap_mode, "AP interpolation")->check(CLI::IsMember({"all", "11point"}));
  eval_det->add_option("--img-width", eval_opts.img_width);
  eval_det->add_option("--img-height", eval_opts.img_height);
  eval_det->add_option("--min-height", eval_opts.min_height);
  eval_det->add_flag("--sample", sample, "apply the stride sampling protocol first");
  eval_det->add_option("--frames", paths.frames, "evaluate only frames in this list file");
  eval_det->add_option("--train-stride", sampling.train_stride);
  eval_det->add_option("--test-stride", sampling.test_stride);
  eval_det->add_option("--offset", sampling.offset);

  auto* eval_sal = app.add_subcommand("eval-sal", "saliency metrics (F_beta, MAE)");
  eval_sal->add_option("--pred", paths.pred, "predicted map directory")->required();
  eval_sal->add_option("--gt", paths.gt, "ground-truth mask directory")->required();
  eval_sal->add_option("--out", paths.out, "report CSV path")->required();
  eval_sal->add_option("--method-name", method_name, "label for the report row");
  eval_sal->add_option("--beta2", sal_cfg.beta_squared, "beta squared");
  eval_sal->add_option("--threshold", threshold_mode)
      ->check(CLI::IsMember({"adaptive", "max255"}));
  eval_sal->add_flag("--no-normalize", no_normalize, "skip normalization of predicted maps");
  eval_sal->add_option("--workers", workers_flag, "worker threads");

  auto* curves_cmd = app.add_subcommand("curves", "render curve CSVs as a log-log SVG plot");
  curves_cmd->add_option("--curve", curve_specs, "NAME=FILE (repeatable)")->required();
  curves_cmd->add_option("--out", paths.out, "SVG output path")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << e.what() << "\n\n" << app.help();
    return 1;
  }

  try {
    unsigned workers = resolve_workers(workers_flag);
    if (sal->parsed()) return cmd_saliency(method, paths, workers);
    if (fuse->parsed()) return cmd_fuse(paths, channel, !no_normalize, workers);
    if (ds_sample->parsed())
      return cmd_dataset_sample(paths, split_name == "train" ? Split::train : Split::test,
                                sampling, reasonable_only, img_w, img_h);
    if (ds_subset->parsed()) return cmd_dataset_subset(paths, subset_cfg);
    if (ds_stats->parsed())
      return cmd_dataset_stats(paths, split_name == "train" ? Split::train : Split::test, img_w,
                               img_h);
    if (eval_det->parsed()) {
      eval_opts.ap_mode = ap_mode == "11point" ? ApMode::eleven_point : ApMode::all_point;
      return cmd_eval_det(paths, condition, eval_opts, sample, sampling);
    }
    if (eval_sal->parsed()) {
      sal_cfg.thresholding = threshold_mode == "max255" ? ThresholdMode::max_over_255
                                                        : ThresholdMode::adaptive_2x_mean;
      return cmd_eval_sal(paths, method_name, sal_cfg, !no_normalize, workers);
    }
    if (curves_cmd->parsed()) return cmd_curves(curve_specs, paths);
  } catch (const IoError& e) {
    std::cerr << "I/O error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
