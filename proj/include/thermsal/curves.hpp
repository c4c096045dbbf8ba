#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>
#include <string_view>
#include <vector>

#include "thermsal/dataset.hpp"
#include "thermsal/detmetrics.hpp"
#include "thermsal/errors.hpp"

namespace thermsal {

namespace detail {

inline std::string fixed6(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6f", v);
  return buf;
}

inline void write_text_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  if (!out) throw IoError("write failure on " + path.string());
}

}  // namespace detail

inline std::string curve_csv_string(const std::vector<OperatingPoint>& curve) {
  std::string out = "threshold,fppi,miss_rate\n";
  for (const auto& p : curve) {
    out += detail::fixed6(p.threshold);
    out += ',';
    out += detail::fixed6(p.fppi);
    out += ',';
    out += detail::fixed6(p.miss_rate);
    out += '\n';
  }
  return out;
}

inline void write_curve_csv(const std::vector<OperatingPoint>& curve,
                            const std::filesystem::path& path) {
  detail::write_text_file(path, curve_csv_string(curve));
}

inline std::vector<OperatingPoint> parse_curve_csv(std::string_view text) {
  std::vector<OperatingPoint> out;
  std::size_t pos = 0;
  int line_no = 0;
  while (pos < text.size()) {
    std::size_t eol = text.find('\n', pos);
    std::string_view line =
        text.substr(pos, eol == std::string_view::npos ? text.size() - pos : eol - pos);
    pos = eol == std::string_view::npos ? text.size() : eol + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line_no == 1) {
      if (line != "threshold,fppi,miss_rate")
        throw FormatError("curve CSV line 1: unexpected header");
      continue;
    }
    if (line.empty()) continue;
    auto c1 = line.find(',');
    auto c2 = line.find(',', c1 == std::string_view::npos ? 0 : c1 + 1);
    OperatingPoint p;
    if (c1 == std::string_view::npos || c2 == std::string_view::npos ||
        !detail::parse_double(line.substr(0, c1), &p.threshold) ||
        !detail::parse_double(line.substr(c1 + 1, c2 - c1 - 1), &p.fppi) ||
        !detail::parse_double(line.substr(c2 + 1), &p.miss_rate))
      throw FormatError("curve CSV line " + std::to_string(line_no) + ": bad row");
    out.push_back(p);
  }
  return out;
}

inline std::vector<OperatingPoint> read_curve_csv(const std::filesystem::path& path) {
  return parse_curve_csv(detail::read_text_file(path));
}

struct NamedCurve {
  std::string name;
  std::vector<OperatingPoint> points;
};

namespace detail {

inline std::string xml_escape(std::string_view s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

inline std::string fixed2(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.2f", v);
  return buf;
}

}  // namespace detail

// Log-log miss-rate/FPPI plot: x spans [1e-3, 1e1], y spans [1e-2, 1e0],
// values clamped into range. Exactly one polyline per curve (grid and axes
// are line elements).
inline std::string curve_svg_string(const std::vector<NamedCurve>& curves) {
  for (const auto& c : curves)
    if (c.points.empty()) throw EmptyCurve("curve '" + c.name + "' has no points");
  if (curves.empty()) throw EmptyCurve("no curves to plot");

  constexpr double kWidth = 720, kHeight = 540;
  constexpr double kLeft = 70, kRight = 560, kTop = 20, kBottom = 490;
  constexpr double kXLogMin = -3, kXLogMax = 1, kYLogMin = -2, kYLogMax = 0;
  static const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e",
                                   "#9467bd", "#8c564b", "#17becf", "#7f7f7f"};
  constexpr int kPaletteSize = 8;

  auto x_of = [&](double fppi) {
    double lx = fppi > 0.0 ? std::log10(fppi) : kXLogMin;
    lx = std::clamp(lx, kXLogMin, kXLogMax);
    return kLeft + (lx - kXLogMin) / (kXLogMax - kXLogMin) * (kRight - kLeft);
  };
  auto y_of = [&](double miss) {
    double ly = miss > 0.0 ? std::log10(miss) : kYLogMin;
    ly = std::clamp(ly, kYLogMin, kYLogMax);
    return kBottom - (ly - kYLogMin) / (kYLogMax - kYLogMin) * (kBottom - kTop);
  };

  std::string svg;
  svg += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + detail::fixed2(kWidth) +
         "\" height=\"" + detail::fixed2(kHeight) + "\" viewBox=\"0 0 " + detail::fixed2(kWidth) +
         " " + detail::fixed2(kHeight) + "\">\n";
  svg += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";

  // decade grid
  for (int d = static_cast<int>(kXLogMin); d <= static_cast<int>(kXLogMax); ++d) {
    double x = x_of(std::pow(10.0, d));
    svg += "<line x1=\"" + detail::fixed2(x) + "\" y1=\"" + detail::fixed2(kTop) + "\" x2=\"" +
           detail::fixed2(x) + "\" y2=\"" + detail::fixed2(kBottom) +
           "\" stroke=\"#dddddd\" stroke-width=\"1\"/>\n";
    svg += "<text x=\"" + detail::fixed2(x) + "\" y=\"" + detail::fixed2(kBottom + 20) +
           "\" font-family=\"sans-serif\" font-size=\"12\" text-anchor=\"middle\">1e" +
           std::to_string(d) + "</text>\n";
  }
  for (int d = static_cast<int>(kYLogMin); d <= static_cast<int>(kYLogMax); ++d) {
    double y = y_of(std::pow(10.0, d));
    svg += "<line x1=\"" + detail::fixed2(kLeft) + "\" y1=\"" + detail::fixed2(y) + "\" x2=\"" +
           detail::fixed2(kRight) + "\" y2=\"" + detail::fixed2(y) +
           "\" stroke=\"#dddddd\" stroke-width=\"1\"/>\n";
    svg += "<text x=\"" + detail::fixed2(kLeft - 8) + "\" y=\"" + detail::fixed2(y + 4) +
           "\" font-family=\"sans-serif\" font-size=\"12\" text-anchor=\"end\">1e" +
           std::to_string(d) + "</text>\n";
  }
  svg += "<line x1=\"" + detail::fixed2(kLeft) + "\" y1=\"" + detail::fixed2(kBottom) + "\" x2=\"" +
         detail::fixed2(kRight) + "\" y2=\"" + detail::fixed2(kBottom) +
         "\" stroke=\"black\" stroke-width=\"1\"/>\n";
  svg += "<line x1=\"" + detail::fixed2(kLeft) + "\" y1=\"" + detail::fixed2(kTop) + "\" x2=\"" +
         detail::fixed2(kLeft) + "\" y2=\"" + detail::fixed2(kBottom) +
         "\" stroke=\"black\" stroke-width=\"1\"/>\n";
  svg += "<text x=\"" + detail::fixed2((kLeft + kRight) / 2) + "\" y=\"" +
         detail::fixed2(kBottom + 40) +
         "\" font-family=\"sans-serif\" font-size=\"14\" text-anchor=\"middle\">false positives "
         "per image</text>\n";
  svg += "<text x=\"18\" y=\"" + detail::fixed2((kTop + kBottom) / 2) +
         "\" font-family=\"sans-serif\" font-size=\"14\" text-anchor=\"middle\" transform=\"rotate(-90 "
         "18 " +
         detail::fixed2((kTop + kBottom) / 2) + ")\">miss rate</text>\n";

  for (std::size_t c = 0; c < curves.size(); ++c) {
    const char* color = kPalette[c % kPaletteSize];
    std::string pts;
    for (const auto& p : curves[c].points) {
      if (!pts.empty()) pts += ' ';
      pts += detail::fixed2(x_of(p.fppi)) + "," + detail::fixed2(y_of(p.miss_rate));
    }
    svg += "<polyline fill=\"none\" stroke=\"" + std::string(color) +
           "\" stroke-width=\"2\" points=\"" + pts + "\"/>\n";
    double ly = kTop + 20 + 22 * static_cast<double>(c);
    svg += "<line x1=\"" + detail::fixed2(kRight + 12) + "\" y1=\"" + detail::fixed2(ly - 4) +
           "\" x2=\"" + detail::fixed2(kRight + 40) + "\" y2=\"" + detail::fixed2(ly - 4) +
           "\" stroke=\"" + color + "\" stroke-width=\"2\"/>\n";
    svg += "<text x=\"" + detail::fixed2(kRight + 46) + "\" y=\"" + detail::fixed2(ly) +
           "\" font-family=\"sans-serif\" font-size=\"12\">" + detail::xml_escape(curves[c].name) +
           "</text>\n";
  }
  svg += "</svg>\n";
  return svg;
}

inline void write_curve_svg(const std::vector<NamedCurve>& curves,
                            const std::filesystem::path& path) {
  detail::write_text_file(path, curve_svg_string(curves));
}

}  // namespace thermsal
