#ifndef SLELAB_SVG_PLOT_HPP
#define SLELAB_SVG_PLOT_HPP

#include <optional>
#include <string>

#include "slelab/stats.hpp"

namespace slelab::io {

/// Scatter plot of two CSV columns with an optional fitted-line overlay.
/// Output is deterministic: no timestamps, no generated ids.
struct PlotSpec {
  std::string csv_path;
  std::string x_column;
  std::string y_column;
  bool loglog = true;
  std::optional<mc::FitResult> fit;  // drawn in the plot's coordinate system
  std::string out_path;
  std::string title;
};

/// Renders the SVG and returns its byte size. Throws (writing nothing) on a
/// missing CSV, missing columns, or an empty table.
std::size_t emit_plot(const PlotSpec& spec);

}  // namespace slelab::io

#endif
