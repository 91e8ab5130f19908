#include "saca/dbscan.hpp"

#include <cmath>
#include <deque>
#include <limits>
#include <string>

#include "saca/errors.hpp"
#include "saca/metrics.hpp"

namespace saca {
namespace {

void validate(double eps, int min_pts) {
  if (!(eps > 0.0) || std::isnan(eps)) throw InputError("dbscan: eps must be > 0");
  if (min_pts < 1) throw InputError("dbscan: min_pts must be >= 1, got " + std::to_string(min_pts));
}

void region(const DistanceMatrix& dist, std::size_t i, double eps, std::vector<std::size_t>& out) {
  out.clear();
  const auto row = dist.row(i);
  for (std::size_t j = 0; j < row.size(); ++j) {
    if (row[j] <= eps) out.push_back(j);
  }
}

}  // namespace

std::vector<Label> dbscan(const DistanceMatrix& dist, double eps, int min_pts) {
  validate(eps, min_pts);
  const std::size_t n = dist.size();
  const auto need = static_cast<std::size_t>(min_pts);
  constexpr Label kUnvisited = 0;

  std::vector<Label> labels(n, kUnvisited);
  std::vector<std::size_t> nbrs, inner;
  std::deque<std::size_t> queue;
  Label cluster = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (labels[i] != kUnvisited) continue;
    region(dist, i, eps, nbrs);
    if (nbrs.size() < need) {
      labels[i] = kNoise;
      continue;
    }
    ++cluster;
    labels[i] = cluster;
    queue.assign(nbrs.begin(), nbrs.end());
    while (!queue.empty()) {
      const std::size_t j = queue.front();
      queue.pop_front();
      if (labels[j] == kNoise) labels[j] = cluster;  // border point
      if (labels[j] != kUnvisited) continue;
      labels[j] = cluster;
      region(dist, j, eps, inner);
      if (inner.size() >= need) queue.insert(queue.end(), inner.begin(), inner.end());
    }
  }
  return labels;
}

std::vector<Label> dbscan(const Dataset& data, double eps, int min_pts) {
  validate(eps, min_pts);
  return dbscan(pairwise_distances(data), eps, min_pts);
}

GridSearchResult dbscan_grid_search(const Dataset& data, std::span<const Label> truth,
                                    std::span<const double> eps_grid,
                                    std::span<const int> min_pts_grid) {
  if (eps_grid.empty() || min_pts_grid.empty()) throw InputError("grid search: empty parameter grid");
  if (truth.size() != data.size()) throw InputError("grid search: truth length does not match data");
  const DistanceMatrix dist = pairwise_distances(data);

  GridSearchResult best;
  bool have = false;
  for (double eps : eps_grid) {
    for (int min_pts : min_pts_grid) {
      const auto labels = dbscan(dist, eps, min_pts);
      const double ari = adjusted_rand_index(truth, labels);
      const bool better = !have || ari > best.ari ||
                          (ari == best.ari && (eps < best.eps || (eps == best.eps && min_pts < best.min_pts)));
      if (better) {
        best = {eps, min_pts, ari};
        have = true;
      }
    }
  }
  return best;
}

std::vector<double> default_eps_grid(const DistanceMatrix& dist, std::size_t count) {
  if (count == 0) throw InputError("eps grid: count must be >= 1");
  const auto mins = nearest_neighbor_distances(dist);
  double lo = std::numeric_limits<double>::infinity();
  for (double m : mins) {
    if (m > 0.0) lo = std::min(lo, m);
  }
  double hi = 0.0;
  for (double v : dist.values()) hi = std::max(hi, v);
  if (!std::isfinite(lo)) throw DegenerateDataError("eps grid: all points coincide");
  if (count == 1 || hi <= lo) return {hi};
  std::vector<double> grid(count);
  const double ratio = std::log(hi / lo);
  for (std::size_t k = 0; k < count; ++k) {
    grid[k] = lo * std::exp(ratio * static_cast<double>(k) / static_cast<double>(count - 1));
  }
  grid.back() = hi;
  return grid;
}

std::vector<int> default_min_pts_grid() { return {2, 4, 6, 8, 10}; }

}  // namespace saca
