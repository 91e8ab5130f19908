#include <catch2/catch_amalgamated.hpp>

#include <saca/errors.hpp>
#include <saca/geometry.hpp>

#include "fixtures.hpp"
#include "oracles.hpp"

using Catch::Approx;
using saca::Dataset;

TEST_CASE("distance of a 3-4-5 triangle", "[geometry]") {
  const auto d = saca::pairwise_distances(Dataset::from_rows({{0, 0}, {3, 4}}));
  CHECK(d(0, 1) == 5.0);
  CHECK(d(1, 0) == 5.0);
  CHECK(d(0, 0) == 0.0);
}

TEST_CASE("identical points are at distance zero", "[geometry]") {
  const auto d = saca::pairwise_distances(Dataset::from_rows({{1, 1}, {1, 1}}));
  CHECK(d(0, 1) == 0.0);
}

TEST_CASE("distance matrix matches a double-loop recomputation", "[geometry]") {
  saca::Random rng(11);
  oracle::Points pts(20, std::vector<double>(3));
  for (auto& p : pts)
    for (double& x : p) x = rng.uniform(-5, 5);
  const auto d = saca::pairwise_distances(fixtures::from_points(pts));
  const auto ref = oracle::distance_matrix(pts);
  for (std::size_t i = 0; i < pts.size(); ++i)
    for (std::size_t j = 0; j < pts.size(); ++j) CHECK(d(i, j) == Approx(ref[i][j]).margin(1e-12));
}

TEST_CASE("distance matrix is symmetric with zero diagonal and obeys the triangle inequality", "[geometry][property]") {
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const auto pts = fixtures::random_instance(seed, 40);
    const auto d = saca::pairwise_distances(fixtures::from_points(pts));
    const std::size_t n = d.size();
    for (std::size_t i = 0; i < n; ++i) {
      REQUIRE(d(i, i) == 0.0);
      for (std::size_t j = 0; j < n; ++j) {
        REQUIRE(d(i, j) == d(j, i));
        for (std::size_t k = 0; k < n; ++k) REQUIRE(d(i, k) <= d(i, j) + d(j, k) + 1e-12);
      }
    }
  }
}

TEST_CASE("nearest-neighbour distances on a line", "[geometry]") {
  const auto d = saca::pairwise_distances(Dataset::from_rows({{0}, {1}, {3}}));
  CHECK(saca::nearest_neighbor_distances(d) == std::vector<double>{1, 1, 2});
}

TEST_CASE("two identical points have zero nearest-neighbour distance", "[geometry]") {
  const auto d = saca::pairwise_distances(Dataset::from_rows({{2, 2}, {2, 2}}));
  CHECK(saca::nearest_neighbor_distances(d) == std::vector<double>{0, 0});
}

TEST_CASE("nearest-neighbour distances match a row-minimum scan", "[geometry]") {
  saca::Random rng(5);
  oracle::Points pts(30, std::vector<double>(2));
  for (auto& p : pts)
    for (double& x : p) x = rng.uniform(0, 10);
  const auto mins = saca::nearest_neighbor_distances(saca::pairwise_distances(fixtures::from_points(pts)));
  const auto ref = oracle::row_minima(oracle::distance_matrix(pts));
  REQUIRE(mins.size() == ref.size());
  for (std::size_t i = 0; i < mins.size(); ++i) CHECK(mins[i] == Approx(ref[i]).margin(1e-12));
}

TEST_CASE("distance matrices built from raw values are validated", "[geometry][errors]") {
  CHECK_THROWS_AS(saca::DistanceMatrix::from_values(2, {0, 1, 1}), saca::InputError);
  CHECK_THROWS_AS(saca::DistanceMatrix::from_values(2, {0, 1, 2, 0}), saca::InputError);
  CHECK_THROWS_AS(saca::DistanceMatrix::from_values(2, {1, 1, 1, 0}), saca::InputError);
  CHECK_THROWS_AS(saca::DistanceMatrix::from_values(2, {0, -1, -1, 0}), saca::InputError);
  const auto one = saca::DistanceMatrix::from_values(1, {0});
  CHECK_THROWS_AS(saca::nearest_neighbor_distances(one), saca::InputError);
}

TEST_CASE("datasets reject malformed input", "[dataset][errors]") {
  CHECK_THROWS_AS(Dataset({1, 2, 3}, 2), saca::InputError);
  CHECK_THROWS_AS(Dataset({1, 2}, 2), saca::InputError);
  CHECK_THROWS_AS(Dataset({1, 2, 3, 4}, 0), saca::InputError);
  CHECK_THROWS_AS(Dataset({1, std::nan(""), 3, 4}, 2), saca::InputError);
  CHECK_THROWS_AS(Dataset({1, 2, 3, 4}, 2, std::vector<saca::Label>{1}), saca::InputError);
  CHECK_THROWS_AS(Dataset::from_rows({{1, 2}, {3}}), saca::InputError);
}
