#include "noisylab/svg.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <fmt/format.h>
#include <limits>

#include "noisylab/errors.hpp"

namespace noisylab {

namespace {

constexpr std::array<const char*, 8> kPalette = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                                                 "#ff7f0e", "#8c564b", "#e377c2", "#7f7f7f"};

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out.push_back(c);
    }
  }
  return out;
}

struct Range {
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();
  void add(double v) {
    if (!std::isfinite(v)) return;
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  void pad() {
    if (!std::isfinite(lo)) {
      lo = 0.0;
      hi = 1.0;
    }
    if (hi - lo < 1e-12) {
      lo -= 0.5;
      hi += 0.5;
    }
    const double margin = 0.05 * (hi - lo);
    lo -= margin;
    hi += margin;
  }
};

}  // namespace

std::string render_svg(const SvgPlot& plot, int width, int height) {
  const double left = 70, right = 150, top = 40, bottom = 55;
  const double pw = width - left - right;
  const double ph = height - top - bottom;
  auto tx = [&](double x) { return plot.log_x ? std::log10(x) : x; };

  Range xr, yr;
  bool bars = false;
  for (const auto& s : plot.series) {
    NOISYLAB_EXPECTS(s.x.size() == s.y.size(), "svg: x/y length mismatch");
    NOISYLAB_EXPECTS(s.error.empty() || s.error.size() == s.y.size(), "svg: error length mismatch");
    for (std::size_t i = 0; i < s.x.size(); ++i) {
      if (plot.log_x && !(s.x[i] > 0.0)) continue;
      xr.add(tx(s.x[i]));
      const double e = s.error.empty() ? 0.0 : s.error[i];
      yr.add(s.y[i] - e);
      yr.add(s.y[i] + e);
    }
    if (s.style == SeriesStyle::Bars) {
      bars = true;
      yr.add(0.0);
    }
  }
  xr.pad();
  yr.pad();
  if (bars) yr.lo = std::min(yr.lo, 0.0);
  auto px = [&](double x) { return left + (tx(x) - xr.lo) / (xr.hi - xr.lo) * pw; };
  auto py = [&](double y) { return top + (yr.hi - y) / (yr.hi - yr.lo) * ph; };

  std::string out = fmt::format(
      "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{}\" height=\"{}\" viewBox=\"0 0 {} {}\" "
      "font-family=\"sans-serif\" font-size=\"12\">\n",
      width, height, width, height);
  out += fmt::format("<rect width=\"{}\" height=\"{}\" fill=\"white\"/>\n", width, height);
  out += fmt::format("<text x=\"{:.1f}\" y=\"22\" text-anchor=\"middle\" font-size=\"14\">{}</text>\n",
                     left + pw / 2, escape(plot.title));
  out += fmt::format(
      "<rect x=\"{:.1f}\" y=\"{:.1f}\" width=\"{:.1f}\" height=\"{:.1f}\" fill=\"none\" stroke=\"black\"/>\n",
      left, top, pw, ph);

  for (int i = 0; i <= 5; ++i) {
    const double fx = xr.lo + (xr.hi - xr.lo) * i / 5.0;
    const double fy = yr.lo + (yr.hi - yr.lo) * i / 5.0;
    const double sx = left + pw * i / 5.0;
    const double sy = top + ph - ph * i / 5.0;
    const double label_x = plot.log_x ? std::pow(10.0, fx) : fx;
    out += fmt::format("<text x=\"{:.1f}\" y=\"{:.1f}\" text-anchor=\"middle\">{:.3g}</text>\n", sx,
                       top + ph + 18, label_x);
    out += fmt::format("<text x=\"{:.1f}\" y=\"{:.1f}\" text-anchor=\"end\">{:.3g}</text>\n", left - 6,
                       sy + 4, fy);
  }
  out += fmt::format("<text x=\"{:.1f}\" y=\"{:.1f}\" text-anchor=\"middle\">{}</text>\n", left + pw / 2,
                     static_cast<double>(height) - 12, escape(plot.x_label));
  out += fmt::format(
      "<text x=\"16\" y=\"{:.1f}\" text-anchor=\"middle\" transform=\"rotate(-90 16 {:.1f})\">{}</text>\n",
      top + ph / 2, top + ph / 2, escape(plot.y_label));

  for (std::size_t si = 0; si < plot.series.size(); ++si) {
    const auto& s = plot.series[si];
    const char* colour = kPalette[si % kPalette.size()];
    if (s.style == SeriesStyle::Line || s.style == SeriesStyle::DashedLine) {
      std::string points;
      for (std::size_t i = 0; i < s.x.size(); ++i) {
        if (plot.log_x && !(s.x[i] > 0.0)) continue;
        points += fmt::format("{:.2f},{:.2f} ", px(s.x[i]), py(s.y[i]));
      }
      out += fmt::format("<polyline fill=\"none\" stroke=\"{}\" stroke-width=\"1.5\"{} points=\"{}\"/>\n",
                         colour, s.style == SeriesStyle::DashedLine ? " stroke-dasharray=\"5,4\"" : "",
                         points);
    }
    for (std::size_t i = 0; i < s.x.size(); ++i) {
      if (plot.log_x && !(s.x[i] > 0.0)) continue;
      const double cx = px(s.x[i]);
      const double cy = py(s.y[i]);
      if (s.style == SeriesStyle::Bars) {
        const double w = std::max(2.0, 0.8 * pw / std::max<std::size_t>(s.x.size(), 1));
        const double base = py(std::max(0.0, yr.lo));
        out += fmt::format("<rect x=\"{:.2f}\" y=\"{:.2f}\" width=\"{:.2f}\" height=\"{:.2f}\" fill=\"{}\"/>\n",
                           cx - w / 2, std::min(cy, base), w, std::abs(base - cy), colour);
      } else if (s.style == SeriesStyle::Points || s.style == SeriesStyle::Line) {
        out += fmt::format("<circle cx=\"{:.2f}\" cy=\"{:.2f}\" r=\"2.5\" fill=\"{}\"/>\n", cx, cy, colour);
      }
      if (!s.error.empty()) {
        out += fmt::format("<line x1=\"{0:.2f}\" y1=\"{1:.2f}\" x2=\"{0:.2f}\" y2=\"{2:.2f}\" stroke=\"{3}\"/>\n",
                           cx, py(s.y[i] - s.error[i]), py(s.y[i] + s.error[i]), colour);
      }
    }
    const double ly = top + 14 + 18 * static_cast<double>(si);
    out += fmt::format("<rect x=\"{:.1f}\" y=\"{:.1f}\" width=\"12\" height=\"3\" fill=\"{}\"/>\n",
                       left + pw + 10, ly - 4, colour);
    out += fmt::format("<text x=\"{:.1f}\" y=\"{:.1f}\">{}</text>\n", left + pw + 28, ly, escape(s.label));
  }
  out += "</svg>\n";
  return out;
}

}  // namespace noisylab
