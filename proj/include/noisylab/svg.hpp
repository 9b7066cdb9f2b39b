#pragma once

#include <string>
#include <vector>

namespace noisylab {

enum class SeriesStyle { Line, Points, Bars, DashedLine };

struct SvgSeries {
  std::string label;
  std::vector<double> x;
  std::vector<double> y;
  std::vector<double> error;  // optional symmetric error bars
  SeriesStyle style = SeriesStyle::Line;
};

struct SvgPlot {
  std::string title;
  std::string x_label;
  std::string y_label;
  bool log_x = false;
  std::vector<SvgSeries> series;
};

// Self-contained SVG document. Output depends only on the inputs.
std::string render_svg(const SvgPlot& plot, int width = 640, int height = 420);

}  // namespace noisylab
