#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "saca/dataset.hpp"
#include "saca/geometry.hpp"

namespace saca {

/// Classical DBSCAN. A point is core when at least `min_pts` points
/// (itself included) lie within `eps` (inclusive). Clusters are numbered
/// 1..k in order of their lowest core index; a border point joins the
/// first cluster that reaches it; unreachable points get kNoise.
std::vector<Label> dbscan(const Dataset& data, double eps, int min_pts);
std::vector<Label> dbscan(const DistanceMatrix& dist, double eps, int min_pts);

struct GridSearchResult {
  double eps = 0.0;
  int min_pts = 0;
  double ari = 0.0;
};

/// Exhaustive ARI search. Noise is scored as its own cluster. Ties go to the
/// smaller eps, then the smaller min_pts.
GridSearchResult dbscan_grid_search(const Dataset& data, std::span<const Label> truth,
                                    std::span<const double> eps_grid,
                                    std::span<const int> min_pts_grid);

/// `count` geometrically spaced radii from the smallest positive
/// nearest-neighbour distance up to the largest pairwise distance.
std::vector<double> default_eps_grid(const DistanceMatrix& dist, std::size_t count = 20);

/// {2, 4, 6, 8, 10}.
std::vector<int> default_min_pts_grid();

}  // namespace saca
