#include "dtrp/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <stdexcept>

namespace dtrp {

namespace {

std::string xml_escape(const std::string& text) {
  std::string out;
  out.reserve(text.size());
  for (const char c : text) {
    switch (c) {
      case '&':
        out += "&amp;";
        break;
      case '<':
        out += "&lt;";
        break;
      case '>':
        out += "&gt;";
        break;
      case '"':
        out += "&quot;";
        break;
      default:
        out += c;
    }
  }
  return out;
}

[[gnu::format(printf, 2, 3)]] void append_format(std::string& out,
                                                 const char* fmt, ...) {
  char buf[256];
  va_list args;
  va_start(args, fmt);
  std::vsnprintf(buf, sizeof buf, fmt, args);
  va_end(args);
  out += buf;
}

}  // namespace

std::string render_loglog_svg(const LogLogPlot& plot) {
  if (plot.points.size() < 2) {
    throw std::invalid_argument("plot needs at least two samples");
  }
  for (const auto& [x, y] : plot.points) {
    if (!(x > 0.0) || !(y > 0.0)) {
      throw std::invalid_argument("log-log plot needs positive coordinates");
    }
  }

  constexpr double kWidth = 720.0;
  constexpr double kHeight = 540.0;
  constexpr double kLeft = 78.0;
  constexpr double kRight = 150.0;
  constexpr double kTop = 48.0;
  constexpr double kBottom = 64.0;
  const double plot_w = kWidth - kLeft - kRight;
  const double plot_h = kHeight - kTop - kBottom;

  std::vector<std::pair<double, double>> logs;
  logs.reserve(plot.points.size());
  for (const auto& [x, y] : plot.points) {
    logs.emplace_back(std::log10(x), std::log10(y));
  }

  double x_min = logs.front().first;
  double x_max = logs.front().first;
  double y_min = logs.front().second;
  double y_max = logs.front().second;
  for (const auto& [lx, ly] : logs) {
    x_min = std::min(x_min, lx);
    x_max = std::max(x_max, lx);
    y_min = std::min(y_min, ly);
    y_max = std::max(y_max, ly);
  }
  // Reference lines span the x-range; keep their endpoints visible.
  const auto& [anchor_x, anchor_y] = logs.front();
  for (const auto& [slope, label] : plot.reference_slopes) {
    (void)label;
    y_min = std::min({y_min, anchor_y + slope * (x_min - anchor_x),
                      anchor_y + slope * (x_max - anchor_x)});
    y_max = std::max({y_max, anchor_y + slope * (x_min - anchor_x),
                      anchor_y + slope * (x_max - anchor_x)});
  }
  const double x_pad = std::max(0.05 * (x_max - x_min), 0.05);
  const double y_pad = std::max(0.08 * (y_max - y_min), 0.05);
  x_min -= x_pad;
  x_max += x_pad;
  y_min -= y_pad;
  y_max += y_pad;

  auto px = [&](double lx) {
    return kLeft + (lx - x_min) / (x_max - x_min) * plot_w;
  };
  auto py = [&](double ly) {
    return kTop + (y_max - ly) / (y_max - y_min) * plot_h;
  };

  std::string svg;
  append_format(svg,
                "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"%g\" "
                "height=\"%g\" viewBox=\"0 0 %g %g\">\n",
                kWidth, kHeight, kWidth, kHeight);
  svg += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  append_format(svg,
                "<text x=\"%g\" y=\"28\" text-anchor=\"middle\" "
                "font-family=\"sans-serif\" font-size=\"16\">%s</text>\n",
                kLeft + plot_w / 2.0, xml_escape(plot.title).c_str());

  // Plot frame.
  append_format(svg,
                "<rect x=\"%g\" y=\"%g\" width=\"%g\" height=\"%g\" "
                "fill=\"none\" stroke=\"black\"/>\n",
                kLeft, kTop, plot_w, plot_h);

  // X ticks at every sample, y ticks at four even log positions.
  for (std::size_t i = 0; i < plot.points.size(); ++i) {
    const double gx = px(logs[i].first);
    append_format(svg,
                  "<line x1=\"%g\" y1=\"%g\" x2=\"%g\" y2=\"%g\" "
                  "stroke=\"black\"/>\n",
                  gx, kTop + plot_h, gx, kTop + plot_h + 5.0);
    append_format(svg,
                  "<text x=\"%g\" y=\"%g\" text-anchor=\"middle\" "
                  "font-family=\"sans-serif\" font-size=\"11\">%.6g</text>\n",
                  gx, kTop + plot_h + 18.0, plot.points[i].first);
  }
  for (int i = 0; i <= 3; ++i) {
    const double ly = y_min + (y_max - y_min) * static_cast<double>(i) / 3.0;
    const double gy = py(ly);
    append_format(svg,
                  "<line x1=\"%g\" y1=\"%g\" x2=\"%g\" y2=\"%g\" "
                  "stroke=\"black\"/>\n",
                  kLeft - 5.0, gy, kLeft, gy);
    append_format(svg,
                  "<text x=\"%g\" y=\"%g\" text-anchor=\"end\" "
                  "font-family=\"sans-serif\" font-size=\"11\">%.6g</text>\n",
                  kLeft - 9.0, gy + 4.0, std::pow(10.0, ly));
  }
  append_format(svg,
                "<text x=\"%g\" y=\"%g\" text-anchor=\"middle\" "
                "font-family=\"sans-serif\" font-size=\"13\">%s</text>\n",
                kLeft + plot_w / 2.0, kHeight - 18.0,
                xml_escape(plot.x_label).c_str());
  append_format(svg,
                "<text x=\"20\" y=\"%g\" text-anchor=\"middle\" "
                "font-family=\"sans-serif\" font-size=\"13\" "
                "transform=\"rotate(-90 20 %g)\">%s</text>\n",
                kTop + plot_h / 2.0, kTop + plot_h / 2.0,
                xml_escape(plot.y_label).c_str());

  // Reference slopes, dashed, labelled at the right margin.
  for (const auto& [slope, label] : plot.reference_slopes) {
    const double ly1 = anchor_y + slope * (x_min + x_pad / 2.0 - anchor_x);
    const double ly2 = anchor_y + slope * (x_max - x_pad / 2.0 - anchor_x);
    append_format(svg,
                  "<line data-slope=\"%s\" x1=\"%g\" y1=\"%g\" x2=\"%g\" "
                  "y2=\"%g\" stroke=\"#888888\" stroke-dasharray=\"6 4\"/>\n",
                  xml_escape(label).c_str(), px(x_min + x_pad / 2.0), py(ly1),
                  px(x_max - x_pad / 2.0), py(ly2));
    append_format(svg,
                  "<text x=\"%g\" y=\"%g\" font-family=\"sans-serif\" "
                  "font-size=\"11\" fill=\"#555555\">slope %s</text>\n",
                  px(x_max - x_pad / 2.0) + 6.0, py(ly2) + 4.0,
                  xml_escape(label).c_str());
  }

  // Data series on top.
  svg += "<polyline fill=\"none\" stroke=\"#1f77b4\" stroke-width=\"2\" points=\"";
  for (std::size_t i = 0; i < logs.size(); ++i) {
    append_format(svg, i == 0 ? "%g,%g" : " %g,%g", px(logs[i].first),
                  py(logs[i].second));
  }
  svg += "\"/>\n";
  for (const auto& [lx, ly] : logs) {
    append_format(svg,
                  "<circle cx=\"%g\" cy=\"%g\" r=\"3.5\" fill=\"#1f77b4\"/>\n",
                  px(lx), py(ly));
  }

  svg += "</svg>\n";
  return svg;
}

}  // namespace dtrp
