#include <fmt/format.h>

#include <algorithm>
#include <cmath>

#include "migraine/cli.hpp"

namespace migraine::cli {

namespace {

constexpr double kWidth = 640, kHeight = 400;
constexpr double kLeft = 60, kRight = 20, kTop = 40, kBottom = 50;

const char* const kPalette[] = {"#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd",
                                "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf"};

std::string xml_escape(std::string_view s) {
  std::string out;
  for (const char c : s) {
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

std::string n2(double v) { return format_fixed(v, 2); }

}  // namespace

std::string slug(std::string_view name) {
  std::string out;
  for (const char c : name) {
    if ((c >= 'a' && c <= 'z') || (c >= '0' && c <= '9')) {
      out += c;
    } else if (c >= 'A' && c <= 'Z') {
      out += static_cast<char>(c - 'A' + 'a');
    } else if (!out.empty() && out.back() != '_') {
      out += '_';
    }
  }
  while (!out.empty() && out.back() == '_') out.pop_back();
  return out.empty() ? "group" : out;
}

std::string render_line_plot(const std::vector<SvgSeries>& series, const std::string& title, double x_min,
                             double x_max) {
  if (!(x_max > x_min)) throw ArgumentError("render_line_plot: empty x range");
  double y_max = 0;
  for (const auto& s : series) {
    for (const double y : s.y) y_max = std::max(y_max, y);
  }
  y_max = y_max > 0 ? y_max * 1.05 : 1.0;

  const double pw = kWidth - kLeft - kRight;
  const double ph = kHeight - kTop - kBottom;
  auto px = [&](double x) { return kLeft + (x - x_min) / (x_max - x_min) * pw; };
  auto py = [&](double y) { return kTop + ph - y / y_max * ph; };

  std::string svg = fmt::format(
      "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{}\" height=\"{}\" viewBox=\"0 0 {} {}\">\n", kWidth,
      kHeight, kWidth, kHeight);
  svg += fmt::format("<text x=\"{}\" y=\"24\" font-family=\"sans-serif\" font-size=\"15\" text-anchor=\"middle\">{}</text>\n",
                     n2(kWidth / 2), xml_escape(title));
  svg += fmt::format("<g class=\"axes\" data-x-min=\"{}\" data-x-max=\"{}\" stroke=\"#000\" fill=\"none\">\n",
                     format_roundtrip(x_min), format_roundtrip(x_max));
  svg += fmt::format("<line x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\"/>\n", n2(kLeft), n2(kTop + ph), n2(kLeft + pw),
                     n2(kTop + ph));
  svg += fmt::format("<line x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\"/>\n", n2(kLeft), n2(kTop), n2(kLeft), n2(kTop + ph));
  svg += "</g>\n<g class=\"ticks\" font-family=\"sans-serif\" font-size=\"11\">\n";
  for (int k = -2; k <= 2; ++k) {
    const double x = k * 0.5;
    if (x < x_min || x > x_max) continue;
    svg += fmt::format("<line x1=\"{0}\" y1=\"{1}\" x2=\"{0}\" y2=\"{2}\" stroke=\"#000\"/>", n2(px(x)), n2(kTop + ph),
                       n2(kTop + ph + 5));
    svg += fmt::format("<text x=\"{}\" y=\"{}\" text-anchor=\"middle\">{}</text>\n", n2(px(x)), n2(kTop + ph + 18),
                       format_fixed(x, 1));
  }
  for (int k = 0; k <= 4; ++k) {
    const double y = y_max * k / 4.0;
    svg += fmt::format("<text x=\"{}\" y=\"{}\" text-anchor=\"end\">{}</text>\n", n2(kLeft - 6), n2(py(y) + 4),
                       format_fixed(y, 2));
  }
  svg += fmt::format("<text x=\"{}\" y=\"{}\" text-anchor=\"middle\">compound sentiment</text>\n", n2(kLeft + pw / 2),
                     n2(kHeight - 10));
  svg += "</g>\n";

  for (std::size_t i = 0; i < series.size(); ++i) {
    const auto& s = series[i];
    const char* color = kPalette[i % std::size(kPalette)];
    std::string points;
    for (std::size_t k = 0; k < s.x.size() && k < s.y.size(); ++k) {
      if (s.x[k] < x_min || s.x[k] > x_max) continue;
      if (!points.empty()) points += ' ';
      points += n2(px(s.x[k])) + "," + n2(py(s.y[k]));
    }
    svg += fmt::format("<polyline fill=\"none\" stroke=\"{}\" stroke-width=\"1.5\" points=\"{}\"/>\n", color, points);
    const double ly = kTop + 14 + 16 * static_cast<double>(i);
    svg += fmt::format("<line x1=\"{0}\" y1=\"{1}\" x2=\"{2}\" y2=\"{1}\" stroke=\"{3}\" stroke-width=\"2\"/>",
                       n2(kLeft + pw - 170), n2(ly - 4), n2(kLeft + pw - 150), color);
    svg += fmt::format("<text x=\"{}\" y=\"{}\" font-family=\"sans-serif\" font-size=\"11\">{}</text>\n",
                       n2(kLeft + pw - 145), n2(ly), xml_escape(s.label));
  }
  svg += "</svg>\n";
  return svg;
}

}  // namespace migraine::cli
