#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <utility>

#include "saca/dataset.hpp"

namespace saca {

struct PlotOptions {
  // Select two coordinates to draw; required when dims > 3.
  std::optional<std::pair<std::size_t, std::size_t>> axes;
  int width = 640;
  int height = 640;
  double marker_radius = 2.5;
};

/// SVG 1.1 scatter plot, one circle per point coloured by label; kNoise is
/// drawn gray. 3-D data is shown as a fixed orthographic projection. Output
/// is byte-for-byte deterministic.
std::string render_scatter(const Dataset& data, std::span<const Label> labels,
                           const PlotOptions& options = {});

void render_scatter(const Dataset& data, std::span<const Label> labels,
                    const std::filesystem::path& path, const PlotOptions& options = {});

}  // namespace saca
