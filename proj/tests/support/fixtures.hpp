// Random instances shared by the unit, property and acceptance tests.
#pragma once

#include <saca/dataset.hpp>
#include <saca/random.hpp>

#include <cmath>
#include <cstdint>
#include <map>
#include <vector>

#include "oracles.hpp"

namespace fixtures {

inline oracle::Points to_points(const saca::Dataset& data) {
  oracle::Points pts;
  for (std::size_t i = 0; i < data.size(); ++i) {
    const auto p = data.point(i);
    pts.emplace_back(p.begin(), p.end());
  }
  return pts;
}

inline saca::Dataset from_points(const oracle::Points& pts) { return saca::Dataset::from_rows(pts); }

inline std::vector<double> to_vector(std::span<const double> s) { return {s.begin(), s.end()}; }

// Small mixed instance: a few Gaussian clumps plus uniform scatter. Every
// fourth seed snaps coordinates to an integer grid so that exact distance
// ties and neighbour-radius boundaries show up.
inline oracle::Points random_instance(std::uint64_t seed, std::size_t max_n = 60) {
  saca::Random rng(seed);
  const std::size_t n = 8 + rng.below(max_n - 7);
  const std::size_t dims = 1 + rng.below(3);
  const std::size_t clumps = 1 + rng.below(4);
  const bool lattice = seed % 4 == 0;
  std::vector<std::vector<double>> centres(clumps, std::vector<double>(dims));
  for (auto& c : centres)
    for (double& x : c) x = rng.uniform(-20.0, 20.0);
  oracle::Points pts;
  while (pts.size() < n) {
    std::vector<double> p(dims);
    if (rng.uniform() < 0.2) {
      for (double& x : p) x = rng.uniform(-25.0, 25.0);
    } else {
      const auto& c = centres[rng.below(clumps)];
      for (std::size_t k = 0; k < dims; ++k) p[k] = rng.normal(c[k], 1.5);
    }
    if (lattice)
      for (double& x : p) x = std::round(x);
    pts.push_back(p);
  }
  // The library rejects inputs whose points are all duplicated; nudge one
  // point so such a draw still has a positive nearest-neighbour distance.
  if (lattice) pts[0][0] += 0.5;
  return pts;
}

inline oracle::Labels random_labels(saca::Random& rng, std::size_t n, std::size_t k, std::int32_t offset = 0) {
  oracle::Labels l(n);
  for (auto& x : l) x = static_cast<std::int32_t>(rng.below(k)) + offset;
  return l;
}

// Applies a random bijective renaming to a labelling (noise stays -1).
inline oracle::Labels rename(const oracle::Labels& l, saca::Random& rng) {
  std::map<std::int32_t, std::int32_t> m;
  for (auto x : l)
    if (x != saca::kNoise && !m.count(x)) m[x] = 0;
  std::vector<std::int32_t> ids;
  for (std::size_t i = 0; i < m.size(); ++i) ids.push_back(static_cast<std::int32_t>(100 + 7 * i));
  for (std::size_t i = ids.size(); i > 1; --i) std::swap(ids[i - 1], ids[rng.below(i)]);
  std::size_t k = 0;
  for (auto& [from, to] : m) to = ids[k++];
  oracle::Labels out;
  for (auto x : l) out.push_back(x == saca::kNoise ? x : m.at(x));
  return out;
}

}  // namespace fixtures
