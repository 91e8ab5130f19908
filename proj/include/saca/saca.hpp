#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "saca/dataset.hpp"
#include "saca/geometry.hpp"
#include "saca/preprocessing.hpp"

namespace saca {

struct SacaConfig {
  int c = 1;  // attention selectivity coefficient
  bool use_center = false;
  double z_threshold = kDefaultZThreshold;
  bool exclude_outliers = false;
  // Seeds a shuffled BFS seed order; unset means lowest-index first. The
  // final labelling does not depend on it (ids are renumbered by first
  // occurrence).
  std::optional<std::uint64_t> seed;

  void validate() const;
};

/// Self-inclusive in-radius neighbour sets and their sizes (the weights).
struct NeighborGraph {
  std::vector<std::vector<std::uint32_t>> neighbors;  // each sorted ascending
  std::vector<std::size_t> weights;

  std::size_t size() const noexcept { return neighbors.size(); }
};

struct DensePartition {
  std::vector<std::size_t> core;   // weight > c
  std::vector<std::size_t> noise;  // weight <= c
};

struct CoreLabeling {
  std::vector<Label> labels;  // 1..k on core points, kNoise elsewhere
  int num_clusters = 0;
};

struct ClusterAssignment {
  std::vector<Label> labels;
  std::vector<std::size_t> pre_reassignment_noise;
  std::vector<std::size_t> core_indices;
  int num_clusters = 0;
  // Mean of the core points of each cluster (index c-1 for label c); filled when use_center.
  std::optional<std::vector<std::vector<double>>> centroids;

  // Diagnostics carried from the threshold stage.
  ThresholdStats threshold;
  OutlierReport outliers;
};

/// n_i = { j : (d_ij / sigma_opt) / 2 < T }.
NeighborGraph build_neighbor_graph(const DistanceMatrix& dist, const ThresholdStats& stats);

/// Splits points by the selectivity rule: weight <= c is sparse. Throws
/// DecreaseCError when no point is dense. Indices in `excluded` are forced
/// onto the sparse side.
DensePartition partition_dense_sparse(const NeighborGraph& graph, int c,
                                      std::span<const std::size_t> excluded = {});

/// Breadth-first labelling of the connected components of the neighbour
/// graph restricted to core points. Labels are renumbered 1..k by the first
/// core index of each component.
CoreLabeling label_cores(const NeighborGraph& graph, std::span<const std::size_t> core,
                         std::optional<std::uint64_t> seed = std::nullopt);

/// Gives every noise point the label of its nearest core point (ties to the
/// lower index) or, with use_center, of the nearest core centroid (ties to
/// the lower cluster id). Single pass against the fixed core set. Points in
/// `keep_excluded` stay kNoise.
ClusterAssignment reassign_noise(const CoreLabeling& cores, std::span<const std::size_t> noise,
                                 const DistanceMatrix& dist, const Dataset& data,
                                 bool use_center,
                                 std::span<const std::size_t> keep_excluded = {});

ClusterAssignment saca_cluster(const Dataset& data, const SacaConfig& config = {});

/// Single-linkage distance between two clusters.
struct ClusterMargin {
  Label first = 0;
  Label second = 0;
  double delta = 0.0;
};

/// Margins for every unordered pair of distinct clusters, ordered by
/// (first, second). Points labelled kNoise are ignored. Throws InputError
/// when fewer than two clusters are present.
std::vector<ClusterMargin> intercluster_margin(const Dataset& data, std::span<const Label> labels);

/// delta > 2 * T * sigma_opt for each margin. T is a count, so the comparison
/// is made against the neighbour radius it induces.
std::vector<bool> margin_condition_satisfied(std::span<const ClusterMargin> margins,
                                             const ThresholdStats& stats);

}  // namespace saca
