#include "slelab/svg_plot.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>

#include "slelab/manifest.hpp"

namespace slelab::io {

namespace {

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

}  // namespace

std::size_t emit_plot(const PlotSpec& spec) {
  CsvTable t = CsvTable::parse_file(spec.csv_path);
  std::vector<double> xs = t.column_as_double(spec.x_column);
  std::vector<double> ys = t.column_as_double(spec.y_column);
  if (xs.empty()) throw std::invalid_argument("emit_plot: empty CSV");

  std::vector<double> px(xs), py(ys);
  if (spec.loglog) {
    for (std::size_t i = 0; i < px.size(); ++i) {
      if (!(px[i] > 0.0 && py[i] > 0.0))
        throw std::invalid_argument("emit_plot: log-log needs positive data");
      px[i] = std::log10(px[i]);
      py[i] = std::log10(py[i]);
    }
  }
  double xmin = *std::min_element(px.begin(), px.end());
  double xmax = *std::max_element(px.begin(), px.end());
  double ymin = *std::min_element(py.begin(), py.end());
  double ymax = *std::max_element(py.begin(), py.end());
  if (xmax == xmin) xmax = xmin + 1.0;
  if (ymax == ymin) ymax = ymin + 1.0;
  const double W = 640, H = 480, m = 60;
  auto X = [&](double v) { return m + (v - xmin) / (xmax - xmin) * (W - 2 * m); };
  auto Y = [&](double v) { return H - m - (v - ymin) / (ymax - ymin) * (H - 2 * m); };

  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W
      << "\" height=\"" << H << "\" viewBox=\"0 0 " << W << ' ' << H << "\">\n";
  svg << "<rect width=\"" << W << "\" height=\"" << H << "\" fill=\"white\"/>\n";
  if (!spec.title.empty())
    svg << "<text x=\"" << W / 2 << "\" y=\"24\" text-anchor=\"middle\" "
           "font-family=\"monospace\" font-size=\"14\">" << spec.title
        << "</text>\n";
  svg << "<line x1=\"" << m << "\" y1=\"" << H - m << "\" x2=\"" << W - m
      << "\" y2=\"" << H - m << "\" stroke=\"black\"/>\n";
  svg << "<line x1=\"" << m << "\" y1=\"" << m << "\" x2=\"" << m << "\" y2=\""
      << H - m << "\" stroke=\"black\"/>\n";
  svg << "<text x=\"" << W / 2 << "\" y=\"" << H - 20
      << "\" text-anchor=\"middle\" font-family=\"monospace\" font-size=\"12\">"
      << (spec.loglog ? "log10 " : "") << spec.x_column << "</text>\n";
  svg << "<text x=\"16\" y=\"" << H / 2
      << "\" text-anchor=\"middle\" font-family=\"monospace\" font-size=\"12\" "
         "transform=\"rotate(-90 16 " << H / 2 << ")\">"
      << (spec.loglog ? "log10 " : "") << spec.y_column << "</text>\n";

  if (spec.fit) {
    // The fit lives in natural-log (or linear) coordinates of the data; map
    // endpoints through the same transform as the points.
    double lx0 = xs.front(), lx1 = xs.back();
    auto eval = [&](double x_raw) {
      if (spec.loglog)
        return std::exp(spec.fit->intercept + spec.fit->slope * std::log(x_raw));
      return spec.fit->intercept + spec.fit->slope * x_raw;
    };
    double fy0 = eval(lx0), fy1 = eval(lx1);
    double p0x = spec.loglog ? std::log10(lx0) : lx0;
    double p1x = spec.loglog ? std::log10(lx1) : lx1;
    double p0y = spec.loglog ? std::log10(fy0) : fy0;
    double p1y = spec.loglog ? std::log10(fy1) : fy1;
    svg << "<line x1=\"" << fmt(X(p0x)) << "\" y1=\"" << fmt(Y(p0y))
        << "\" x2=\"" << fmt(X(p1x)) << "\" y2=\"" << fmt(Y(p1y))
        << "\" stroke=\"#c0392b\" stroke-width=\"1.5\"/>\n";
    svg << "<text x=\"" << W - m << "\" y=\"" << m
        << "\" text-anchor=\"end\" font-family=\"monospace\" font-size=\"12\" "
           "fill=\"#c0392b\">slope=" << CsvTable::format_double(spec.fit->slope)
        << "</text>\n";
  }
  for (std::size_t i = 0; i < px.size(); ++i)
    svg << "<circle cx=\"" << fmt(X(px[i])) << "\" cy=\"" << fmt(Y(py[i]))
        << "\" r=\"3\" fill=\"#2c3e50\"/>\n";
  svg << "</svg>\n";

  std::string body = svg.str();
  write_file_fsync(spec.out_path, body);
  return body.size();
}

}  // namespace slelab::io
