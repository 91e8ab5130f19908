#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "saca/dataset.hpp"

namespace saca {

double euclidean(std::span<const double> a, std::span<const double> b) noexcept;

/// Dense N x N Euclidean distance matrix. Symmetric with an exactly zero
/// diagonal: each pair is computed once and mirrored.
class DistanceMatrix {
 public:
  /// Wraps precomputed values, validating symmetry, zero diagonal and
  /// non-negative finite entries.
  static DistanceMatrix from_values(std::size_t n, std::vector<double> values);

  std::size_t size() const noexcept { return n_; }
  double operator()(std::size_t i, std::size_t j) const noexcept { return values_[i * n_ + j]; }
  std::span<const double> row(std::size_t i) const noexcept { return {values_.data() + i * n_, n_}; }
  std::span<const double> values() const noexcept { return values_; }

 private:
  friend DistanceMatrix pairwise_distances(const Dataset& data);
  DistanceMatrix(std::size_t n, std::vector<double> values) : n_(n), values_(std::move(values)) {}

  std::size_t n_ = 0;
  std::vector<double> values_;
};

DistanceMatrix pairwise_distances(const Dataset& data);

/// mins[i] = min_{j != i} dist(i, j). Requires N >= 2.
std::vector<double> nearest_neighbor_distances(const DistanceMatrix& dist);

}  // namespace saca
