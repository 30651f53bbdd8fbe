#include "hamrsim/svg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "hamrsim/csv.hpp"
#include "hamrsim/errors.hpp"

namespace hamrsim {

namespace {

constexpr double kWidth = 800, kHeight = 500;
constexpr double kLeft = 80, kRight = 20, kTop = 50, kBottom = 60;

const char* kColors[] = {"#c2803d", "#4e79a7", "#59a14f", "#e15759",
                         "#b07aa1", "#76b7b2", "#edc948", "#9c755f"};

struct Range {
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();
  void expand(double v) {
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  void pad() {
    if (!(hi > lo)) {
      lo -= 1;
      hi += 1;
    } else {
      const double m = 0.05 * (hi - lo);
      lo -= m;
      hi += m;
    }
  }
};

double nice_step(double span, int target_ticks) {
  const double raw = span / target_ticks;
  const double mag = std::pow(10.0, std::floor(std::log10(raw)));
  for (double m : {1.0, 2.0, 5.0, 10.0}) {
    if (raw <= m * mag) return m * mag;
  }
  return 10 * mag;
}

std::string tick_label(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

}  // namespace

std::string line_plot_svg(const std::string& title, const std::string& x_label,
                          const std::string& y_label,
                          const std::vector<PlotSeries>& series) {
  if (series.empty()) throw DomainError("plot needs at least one series");
  Range rx, ry;
  for (const auto& s : series) {
    if (s.x.size() != s.y.size()) throw DomainError("series length mismatch");
    for (double v : s.x) rx.expand(v);
    for (double v : s.y) {
      if (std::isfinite(v)) ry.expand(v);
    }
  }
  rx.pad();
  ry.pad();

  const double pw = kWidth - kLeft - kRight, ph = kHeight - kTop - kBottom;
  auto px = [&](double v) { return kLeft + (v - rx.lo) / (rx.hi - rx.lo) * pw; };
  auto py = [&](double v) { return kTop + ph - (v - ry.lo) / (ry.hi - ry.lo) * ph; };

  std::string out;
  out += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + tick_label(kWidth) +
         "\" height=\"" + tick_label(kHeight) + "\" font-family=\"sans-serif\">\n";
  out += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  out += "<text x=\"" + tick_label(kWidth / 2) + "\" y=\"28\" text-anchor=\"middle\" font-size=\"16\">" +
         title + "</text>\n";

  const double sx = nice_step(rx.hi - rx.lo, 6);
  for (double v = std::ceil(rx.lo / sx) * sx; v <= rx.hi + 1e-9 * sx; v += sx) {
    out += "<line x1=\"" + tick_label(px(v)) + "\" y1=\"" + tick_label(kTop) +
           "\" x2=\"" + tick_label(px(v)) + "\" y2=\"" + tick_label(kTop + ph) +
           "\" stroke=\"#eeeeee\"/>\n";
    out += "<text x=\"" + tick_label(px(v)) + "\" y=\"" + tick_label(kTop + ph + 18) +
           "\" text-anchor=\"middle\" font-size=\"11\">" + tick_label(v) + "</text>\n";
  }
  const double sy = nice_step(ry.hi - ry.lo, 6);
  for (double v = std::ceil(ry.lo / sy) * sy; v <= ry.hi + 1e-9 * sy; v += sy) {
    out += "<line x1=\"" + tick_label(kLeft) + "\" y1=\"" + tick_label(py(v)) +
           "\" x2=\"" + tick_label(kLeft + pw) + "\" y2=\"" + tick_label(py(v)) +
           "\" stroke=\"#eeeeee\"/>\n";
    out += "<text x=\"" + tick_label(kLeft - 6) + "\" y=\"" + tick_label(py(v) + 4) +
           "\" text-anchor=\"end\" font-size=\"11\">" + tick_label(v) + "</text>\n";
  }
  out += "<rect x=\"" + tick_label(kLeft) + "\" y=\"" + tick_label(kTop) + "\" width=\"" +
         tick_label(pw) + "\" height=\"" + tick_label(ph) +
         "\" fill=\"none\" stroke=\"#333333\"/>\n";
  out += "<text x=\"" + tick_label(kLeft + pw / 2) + "\" y=\"" +
         tick_label(kHeight - 14) + "\" text-anchor=\"middle\" font-size=\"13\">" +
         x_label + "</text>\n";
  out += "<text x=\"18\" y=\"" + tick_label(kTop + ph / 2) +
         "\" text-anchor=\"middle\" font-size=\"13\" transform=\"rotate(-90 18 " +
         tick_label(kTop + ph / 2) + ")\">" + y_label + "</text>\n";

  for (size_t i = 0; i < series.size(); ++i) {
    const char* color = kColors[i % 8];
    std::string points;
    for (size_t k = 0; k < series[i].x.size(); ++k) {
      if (!std::isfinite(series[i].y[k])) continue;
      points += tick_label(px(series[i].x[k])) + "," + tick_label(py(series[i].y[k])) + " ";
    }
    out += "<polyline fill=\"none\" stroke=\"" + std::string(color) +
           "\" stroke-width=\"1.6\" points=\"" + points + "\"/>\n";
    out += "<text x=\"" + tick_label(kLeft + pw - 8) + "\" y=\"" +
           tick_label(kTop + 18 + 16 * i) + "\" text-anchor=\"end\" font-size=\"12\" fill=\"" +
           color + "\">" + series[i].name + "</text>\n";
  }
  out += "</svg>\n";
  return out;
}

}  // namespace hamrsim
