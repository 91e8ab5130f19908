#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>

#include "saca/dataset.hpp"
#include "saca/geometry.hpp"

namespace saca {

// Internal indices. Points labelled kNoise are skipped; at least two
// clusters must remain or MetricUndefinedError is thrown.

/// Mean silhouette. Singleton clusters contribute 0, as does a point with a == b == 0.
double silhouette(const Dataset& data, std::span<const Label> labels);
double silhouette(const DistanceMatrix& dist, std::span<const Label> labels);

/// Between/within dispersion ratio. +infinity when within-cluster dispersion is zero.
double calinski_harabasz(const Dataset& data, std::span<const Label> labels);

/// Mean worst-case (s_i + s_j) / d(mu_i, mu_j). A pair with coincident
/// centroids scores +infinity.
double davies_bouldin(const Dataset& data, std::span<const Label> labels);

// External indices. Every label value, kNoise included, is treated as a
// cluster id. Lengths must match and be >= 2.

double adjusted_rand_index(std::span<const Label> truth, std::span<const Label> predicted);

/// Adjusted mutual information, hypergeometric expected MI, max(H(U), H(V)) normalisation.
double adjusted_mutual_information(std::span<const Label> truth, std::span<const Label> predicted);

/// 1 - H(predicted | truth) / H(predicted); 1 when H(predicted) = 0.
double completeness(std::span<const Label> truth, std::span<const Label> predicted);

enum class NoisePolicy {
  Drop,       // remove kNoise points before computing anything
  AsCluster,  // keep them as one extra cluster
};

struct EvaluationReport {
  // Absent when undefined for the labelling (fewer than two clusters).
  std::optional<double> silhouette;
  std::optional<double> calinski_harabasz;
  std::optional<double> davies_bouldin;
  // Absent without ground truth.
  std::optional<double> ari;
  std::optional<double> ami;
  std::optional<double> completeness;
  std::size_t dropped_points = 0;

  /// Flat JSON object keyed by metric name; absent or non-finite values are null.
  std::string to_json() const;
};

/// All six indices. External ones are computed when `truth` is non-empty.
EvaluationReport evaluate(const Dataset& data, std::span<const Label> predicted,
                          std::span<const Label> truth = {},
                          NoisePolicy policy = NoisePolicy::Drop);

}  // namespace saca
