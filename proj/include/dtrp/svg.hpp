#pragma once

#include <string>
#include <utility>
#include <vector>

namespace dtrp {

/// A log-log scatter/line plot with dashed reference lines of fixed slope,
/// rendered as a self-contained SVG document with no external dependencies.
struct LogLogPlot {
  std::string title;
  std::string x_label = "m";
  std::string y_label = "mean wait";
  /// Strictly positive (x, y) samples, plotted in the given order.
  std::vector<std::pair<double, double>> points;
  /// (slope, label) pairs; each line is anchored at the first sample and
  /// carries its label in a data-slope attribute for tooling.
  std::vector<std::pair<double, std::string>> reference_slopes;
};

/// Render the plot.  Throws std::invalid_argument when fewer than two
/// samples are given or any coordinate is not strictly positive.
std::string render_loglog_svg(const LogLogPlot& plot);

}  // namespace dtrp
