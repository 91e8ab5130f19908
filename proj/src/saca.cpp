#include "saca/saca.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <map>
#include <numeric>
#include <string>

#include "saca/errors.hpp"
#include "saca/random.hpp"

namespace saca {

void SacaConfig::validate() const {
  if (c < 1) throw InputError("config: selectivity coefficient C must be >= 1, got " + std::to_string(c));
  if (!(z_threshold > 0.0) || !std::isfinite(z_threshold)) {
    throw InputError("config: z-threshold must be a positive finite number");
  }
}

NeighborGraph build_neighbor_graph(const DistanceMatrix& dist, const ThresholdStats& stats) {
  if (!(stats.sigma_opt > 0.0) || stats.threshold < 1) {
    throw InputError("neighbour graph: threshold statistics are not initialised");
  }
  const std::size_t n = dist.size();
  const double sigma = stats.sigma_opt;
  const double t = static_cast<double>(stats.threshold) * (1.0 - kTieTolerance);

  NeighborGraph graph;
  graph.neighbors.resize(n);
  graph.weights.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto row = dist.row(i);
    auto& nbrs = graph.neighbors[i];
    for (std::size_t j = 0; j < n; ++j) {
      if ((row[j] / sigma) / 2.0 < t) nbrs.push_back(static_cast<std::uint32_t>(j));
    }
    graph.weights[i] = nbrs.size();
  }
  return graph;
}

DensePartition partition_dense_sparse(const NeighborGraph& graph, int c,
                                      std::span<const std::size_t> excluded) {
  if (c < 1) throw InputError("partition: C must be >= 1");
  std::vector<char> forced(graph.size(), 0);
  for (std::size_t i : excluded) {
    if (i < forced.size()) forced[i] = 1;
  }
  DensePartition part;
  for (std::size_t i = 0; i < graph.size(); ++i) {
    if (forced[i] || graph.weights[i] <= static_cast<std::size_t>(c)) {
      part.noise.push_back(i);
    } else {
      part.core.push_back(i);
    }
  }
  if (part.core.empty()) {
    throw DecreaseCError("all " + std::to_string(graph.size()) +
                         " points have at most C=" + std::to_string(c) + " neighbours");
  }
  return part;
}

CoreLabeling label_cores(const NeighborGraph& graph, std::span<const std::size_t> core,
                         std::optional<std::uint64_t> seed) {
  const std::size_t n = graph.size();
  std::vector<char> is_core(n, 0);
  for (std::size_t i : core) {
    if (i >= n) throw InputError("label_cores: core index out of range");
    is_core[i] = 1;
  }

  std::vector<std::size_t> order(core.begin(), core.end());
  std::sort(order.begin(), order.end());
  if (seed) {
    Random rng(*seed);
    for (std::size_t k = order.size(); k > 1; --k) {
      std::swap(order[k - 1], order[rng.below(k)]);
    }
  }

  // 0 = unlabelled core; provisional ids follow discovery order.
  std::vector<Label> provisional(n, 0);
  Label next = 0;
  std::deque<std::size_t> queue;
  for (std::size_t s : order) {
    if (provisional[s] != 0) continue;
    ++next;
    provisional[s] = next;
    queue.push_back(s);
    while (!queue.empty()) {
      const std::size_t i = queue.front();
      queue.pop_front();
      for (std::uint32_t j : graph.neighbors[i]) {
        if (is_core[j] && provisional[j] == 0) {
          provisional[j] = next;
          queue.push_back(j);
        }
      }
    }
  }

  // Renumber by first occurrence in index order.
  std::vector<Label> remap(static_cast<std::size_t>(next) + 1, 0);
  Label assigned = 0;
  CoreLabeling out;
  out.labels.assign(n, kNoise);
  for (std::size_t i = 0; i < n; ++i) {
    if (!is_core[i]) continue;
    Label& target = remap[static_cast<std::size_t>(provisional[i])];
    if (target == 0) target = ++assigned;
    out.labels[i] = target;
  }
  out.num_clusters = assigned;
  return out;
}

ClusterAssignment reassign_noise(const CoreLabeling& cores, std::span<const std::size_t> noise,
                                 const DistanceMatrix& dist, const Dataset& data, bool use_center,
                                 std::span<const std::size_t> keep_excluded) {
  const std::size_t n = dist.size();
  if (cores.labels.size() != n || data.size() != n) {
    throw InputError("reassign_noise: labels, distances and data disagree on size");
  }

  ClusterAssignment out;
  out.labels = cores.labels;
  out.num_clusters = cores.num_clusters;
  for (std::size_t i = 0; i < n; ++i) {
    if (cores.labels[i] != kNoise) out.core_indices.push_back(i);
  }
  out.pre_reassignment_noise.assign(noise.begin(), noise.end());
  std::sort(out.pre_reassignment_noise.begin(), out.pre_reassignment_noise.end());
  if (out.core_indices.empty()) throw DecreaseCError("no core points to reassign to");

  std::vector<char> keep(n, 0);
  for (std::size_t i : keep_excluded) {
    if (i < n) keep[i] = 1;
  }

  if (use_center) {
    const std::size_t k = static_cast<std::size_t>(cores.num_clusters);
    const std::size_t d = data.dims();
    std::vector<std::vector<double>> centroids(k, std::vector<double>(d, 0.0));
    std::vector<std::size_t> counts(k, 0);
    for (std::size_t i : out.core_indices) {
      const auto c = static_cast<std::size_t>(cores.labels[i] - 1);
      const auto p = data.point(i);
      for (std::size_t a = 0; a < d; ++a) centroids[c][a] += p[a];
      ++counts[c];
    }
    for (std::size_t c = 0; c < k; ++c) {
      for (double& x : centroids[c]) x /= static_cast<double>(counts[c]);
    }
    for (std::size_t i : out.pre_reassignment_noise) {
      if (keep[i]) continue;
      const auto p = data.point(i);
      double best = std::numeric_limits<double>::infinity();
      std::size_t best_c = 0;
      for (std::size_t c = 0; c < k; ++c) {
        const double dc = euclidean(p, centroids[c]);
        if (dc < best * (1.0 - kTieTolerance)) {  // near-ties keep the lower id
          best = dc;
          best_c = c;
        }
      }
      out.labels[i] = static_cast<Label>(best_c + 1);
    }
    out.centroids = std::move(centroids);
  } else {
    for (std::size_t i : out.pre_reassignment_noise) {
      if (keep[i]) continue;
      const auto row = dist.row(i);
      double best = std::numeric_limits<double>::infinity();
      std::size_t best_j = out.core_indices.front();
      for (std::size_t j : out.core_indices) {
        if (row[j] < best * (1.0 - kTieTolerance)) {
          best = row[j];
          best_j = j;
        }
      }
      out.labels[i] = cores.labels[best_j];
    }
  }
  return out;
}

ClusterAssignment saca_cluster(const Dataset& data, const SacaConfig& config) {
  config.validate();

  const DistanceMatrix dist = pairwise_distances(data);
  const std::vector<double> mins = nearest_neighbor_distances(dist);
  FilteredMins filtered = filter_outlier_mins(mins, config.z_threshold);
  const ThresholdStats stats = compute_threshold(filtered.filtered);

  std::vector<std::size_t> excluded;
  if (config.exclude_outliers && !filtered.removal_suppressed) {
    excluded = filtered.report.outlier_indices;
  }

  const NeighborGraph graph = build_neighbor_graph(dist, stats);
  const DensePartition part = partition_dense_sparse(graph, config.c, excluded);
  const CoreLabeling cores = label_cores(graph, part.core, config.seed);

  ClusterAssignment out = reassign_noise(cores, part.noise, dist, data, config.use_center, excluded);
  out.threshold = stats;
  out.outliers = std::move(filtered.report);
  return out;
}

std::vector<ClusterMargin> intercluster_margin(const Dataset& data, std::span<const Label> labels) {
  if (labels.size() != data.size()) throw InputError("margin: label count does not match data");
  std::map<Label, std::size_t> index;
  for (Label l : labels) {
    if (l != kNoise) index.emplace(l, 0);
  }
  if (index.size() < 2) throw InputError("margin: at least two clusters are required");
  std::size_t next = 0;
  for (auto& [label, slot] : index) slot = next++;

  const std::size_t k = index.size();
  std::vector<std::size_t> slot(labels.size(), k);
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (labels[i] != kNoise) slot[i] = index.at(labels[i]);
  }

  std::vector<double> best(k * k, std::numeric_limits<double>::infinity());
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (slot[i] == k) continue;
    const auto pi = data.point(i);
    for (std::size_t j = i + 1; j < labels.size(); ++j) {
      if (slot[j] == k || slot[j] == slot[i]) continue;
      const std::size_t a = std::min(slot[i], slot[j]);
      const std::size_t b = std::max(slot[i], slot[j]);
      best[a * k + b] = std::min(best[a * k + b], euclidean(pi, data.point(j)));
    }
  }

  std::vector<Label> by_slot(k);
  for (const auto& [label, s] : index) by_slot[s] = label;
  std::vector<ClusterMargin> margins;
  margins.reserve(k * (k - 1) / 2);
  for (std::size_t a = 0; a < k; ++a) {
    for (std::size_t b = a + 1; b < k; ++b) {
      margins.push_back({by_slot[a], by_slot[b], best[a * k + b]});
    }
  }
  return margins;
}

std::vector<bool> margin_condition_satisfied(std::span<const ClusterMargin> margins,
                                             const ThresholdStats& stats) {
  const double radius = stats.radius();
  std::vector<bool> out;
  out.reserve(margins.size());
  for (const auto& m : margins) out.push_back(m.delta > radius);
  return out;
}

}  // namespace saca
