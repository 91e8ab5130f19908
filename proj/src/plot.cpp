#include "saca/plot.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <map>
#include <numbers>
#include <string>
#include <vector>

#include "saca/errors.hpp"

namespace saca {
namespace {

constexpr const char* kPalette[] = {
    "#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd", "#8c564b", "#e377c2",
    "#bcbd22", "#17becf", "#393b79", "#637939", "#8c6d31", "#843c39", "#7b4173",
    "#3182bd", "#e6550d", "#31a354", "#756bb1", "#636363", "#fd8d3c"};
constexpr std::size_t kPaletteSize = sizeof(kPalette) / sizeof(kPalette[0]);
constexpr const char* kNoiseColor = "#a0a0a0";

// Fixed view for 3-D data: azimuth -35 degrees, elevation 25 degrees.
std::pair<double, double> project3(std::span<const double> p) {
  constexpr double az = -35.0 * std::numbers::pi / 180.0;
  constexpr double el = 25.0 * std::numbers::pi / 180.0;
  const double x1 = p[0] * std::cos(az) - p[1] * std::sin(az);
  const double y1 = p[0] * std::sin(az) + p[1] * std::cos(az);
  return {x1, y1 * std::sin(el) + p[2] * std::cos(el)};
}

}  // namespace

std::string render_scatter(const Dataset& data, std::span<const Label> labels,
                           const PlotOptions& options) {
  if (labels.empty()) throw InputError("plot: no labels given");
  if (labels.size() != data.size()) {
    throw InputError("plot: " + std::to_string(labels.size()) + " labels for " +
                     std::to_string(data.size()) + " points");
  }
  const std::size_t d = data.dims();
  if (options.axes) {
    if (options.axes->first >= d || options.axes->second >= d) {
      throw InputError("plot: axis index out of range for " + std::to_string(d) + "-D data");
    }
  } else if (d > 3) {
    throw InputError("plot: data is " + std::to_string(d) +
                     "-D; select two coordinates to draw (e.g. --plot-dims 0,1)");
  }

  std::vector<std::pair<double, double>> xy(data.size());
  for (std::size_t i = 0; i < data.size(); ++i) {
    const auto p = data.point(i);
    if (options.axes) {
      xy[i] = {p[options.axes->first], p[options.axes->second]};
    } else if (d == 1) {
      xy[i] = {p[0], 0.0};
    } else if (d == 2) {
      xy[i] = {p[0], p[1]};
    } else {
      xy[i] = project3(p);
    }
  }

  double xmin = std::numeric_limits<double>::infinity(), xmax = -xmin;
  double ymin = xmin, ymax = -xmin;
  for (const auto& [x, y] : xy) {
    xmin = std::min(xmin, x);
    xmax = std::max(xmax, x);
    ymin = std::min(ymin, y);
    ymax = std::max(ymax, y);
  }
  const double margin = 16.0;
  const double span_x = std::max(xmax - xmin, 1e-12);
  const double span_y = std::max(ymax - ymin, 1e-12);
  const double scale = std::min((options.width - 2 * margin) / span_x, (options.height - 2 * margin) / span_y);
  const double off_x = (options.width - scale * span_x) / 2.0;
  const double off_y = (options.height - scale * span_y) / 2.0;

  std::map<Label, std::size_t> colour;
  for (Label l : labels) {
    if (l != kNoise) colour.emplace(l, 0);
  }
  std::size_t next = 0;
  for (auto& [l, c] : colour) c = next++ % kPaletteSize;

  std::string svg;
  svg.reserve(96 * data.size() + 512);
  char buf[160];
  svg += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  std::snprintf(buf, sizeof(buf),
                "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"%d\" height=\"%d\" "
                "viewBox=\"0 0 %d %d\">\n",
                options.width, options.height, options.width, options.height);
  svg += buf;
  svg += "<rect width=\"100%\" height=\"100%\" fill=\"#ffffff\"/>\n";
  for (std::size_t i = 0; i < xy.size(); ++i) {
    const double sx = off_x + (xy[i].first - xmin) * scale;
    const double sy = options.height - (off_y + (xy[i].second - ymin) * scale);
    const char* fill = labels[i] == kNoise ? kNoiseColor : kPalette[colour.at(labels[i])];
    std::snprintf(buf, sizeof(buf), "<circle cx=\"%.2f\" cy=\"%.2f\" r=\"%.2f\" fill=\"%s\"/>\n", sx, sy,
                  options.marker_radius, fill);
    svg += buf;
  }
  svg += "</svg>\n";
  return svg;
}

void render_scatter(const Dataset& data, std::span<const Label> labels,
                    const std::filesystem::path& path, const PlotOptions& options) {
  const std::string svg = render_scatter(data, labels, options);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("plot: cannot write '" + path.string() + "'");
  out << svg;
}

}  // namespace saca
