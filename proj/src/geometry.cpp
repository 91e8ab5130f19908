#include "saca/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "saca/errors.hpp"

namespace saca {

double euclidean(std::span<const double> a, std::span<const double> b) noexcept {
  double sum = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) {
    const double delta = a[k] - b[k];
    sum += delta * delta;
  }
  return std::sqrt(sum);
}

DistanceMatrix DistanceMatrix::from_values(std::size_t n, std::vector<double> values) {
  if (values.size() != n * n) throw InputError("distance matrix: expected n*n values");
  for (std::size_t i = 0; i < n; ++i) {
    if (values[i * n + i] != 0.0) throw InputError("distance matrix: non-zero diagonal");
    for (std::size_t j = 0; j < n; ++j) {
      const double v = values[i * n + j];
      if (!std::isfinite(v) || v < 0.0) throw InputError("distance matrix: invalid entry");
      if (v != values[j * n + i]) throw InputError("distance matrix: not symmetric");
    }
  }
  return DistanceMatrix(n, std::move(values));
}

DistanceMatrix pairwise_distances(const Dataset& data) {
  const std::size_t n = data.size();
  std::vector<double> values(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    const auto pi = data.point(i);
    for (std::size_t j = i + 1; j < n; ++j) {
      const double d = euclidean(pi, data.point(j));
      values[i * n + j] = d;
      values[j * n + i] = d;
    }
  }
  return DistanceMatrix(n, std::move(values));
}

std::vector<double> nearest_neighbor_distances(const DistanceMatrix& dist) {
  const std::size_t n = dist.size();
  if (n < 2) throw InputError("nearest-neighbour distances need at least 2 points, got " + std::to_string(n));
  std::vector<double> mins(n, std::numeric_limits<double>::infinity());
  for (std::size_t i = 0; i < n; ++i) {
    const auto row = dist.row(i);
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < i; ++j) best = std::min(best, row[j]);
    for (std::size_t j = i + 1; j < n; ++j) best = std::min(best, row[j]);
    mins[i] = best;
  }
  return mins;
}

}  // namespace saca
