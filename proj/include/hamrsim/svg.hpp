#pragma once

#include <string>
#include <vector>

namespace hamrsim {

struct PlotSeries {
  std::string name;
  std::vector<double> x;
  std::vector<double> y;
};

/// Minimal standalone SVG line chart; convenience output only, the CSVs are
/// the contractual artifacts.
std::string line_plot_svg(const std::string& title, const std::string& x_label,
                          const std::string& y_label,
                          const std::vector<PlotSeries>& series);

}  // namespace hamrsim
