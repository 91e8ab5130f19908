#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "saca/dataset.hpp"

namespace saca {

struct LoadOptions {
  // Field separator; unset splits on commas and/or whitespace.
  std::optional<char> delimiter;
  bool has_header = false;
  // Zero-based column holding ground-truth labels.
  std::optional<std::size_t> label_column;
};

/// Reads delimited numeric text. Blank lines and lines starting with '#',
/// '%' or '@' are skipped, which also admits the data section of ARFF files.
/// Non-integer label tokens are mapped to integers in order of first appearance.
Dataset load_delimited(const std::filesystem::path& path, const LoadOptions& options = {});

/// Writes one row per point, coordinates followed by the truth label when present.
void write_delimited(const Dataset& data, const std::filesystem::path& path, char delimiter = ',');

struct PresetInfo {
  std::string name;
  std::size_t n_samples;
  std::size_t n_features;
  std::size_t n_clusters;
};

const std::vector<PresetInfo>& presets();

struct DatasetSpec {
  std::string name;
  std::uint64_t seed = 42;
};

/// Deterministic synthetic benchmark sets. Known names: noisy-circles, rings,
/// noisy-spiral, moons-stars, 3compound, unbalanced.
Dataset generate(const DatasetSpec& spec);

struct BlobSpec {
  std::size_t clusters = 2;
  std::size_t per_cluster = 50;
  std::size_t dims = 2;
  double separation = 20.0;  // minimum distance between any two centres
  double sigma = 1.0;
  std::uint64_t seed = 0;
};

/// Isotropic Gaussian blobs whose centres are pairwise at least
/// `separation` apart. Truth labels are 1..clusters.
Dataset gaussian_blobs(const BlobSpec& spec);

}  // namespace saca
