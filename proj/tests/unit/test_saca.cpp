#include <catch2/catch_amalgamated.hpp>

#include <saca/datasets.hpp>
#include <saca/errors.hpp>
#include <saca/geometry.hpp>
#include <saca/metrics.hpp>
#include <saca/saca.hpp>

#include <algorithm>
#include <limits>

#include "fixtures.hpp"
#include "oracles.hpp"

using saca::Dataset;
using saca::NeighborGraph;

namespace {

NeighborGraph graph_from_edges(std::size_t n, const std::vector<std::pair<std::uint32_t, std::uint32_t>>& edges) {
  NeighborGraph g;
  g.neighbors.resize(n);
  for (std::uint32_t i = 0; i < n; ++i) g.neighbors[i].push_back(i);
  for (auto [a, b] : edges) {
    g.neighbors[a].push_back(b);
    g.neighbors[b].push_back(a);
  }
  for (auto& nb : g.neighbors) std::sort(nb.begin(), nb.end());
  for (auto& nb : g.neighbors) g.weights.push_back(nb.size());
  return g;
}

NeighborGraph graph_with_weights(const std::vector<std::size_t>& w) {
  NeighborGraph g;
  g.weights = w;
  g.neighbors.resize(w.size());
  for (std::uint32_t i = 0; i < w.size(); ++i) g.neighbors[i].push_back(i);
  return g;
}

std::vector<std::size_t> all_indices(std::size_t n) {
  std::vector<std::size_t> v(n);
  for (std::size_t i = 0; i < n; ++i) v[i] = i;
  return v;
}

}  // namespace

TEST_CASE("neighbour sets for three points on a line", "[saca][graph]") {
  const auto data = Dataset::from_rows({{0}, {1}, {10}});
  const auto dist = saca::pairwise_distances(data);
  const auto stats = saca::compute_threshold(saca::nearest_neighbor_distances(dist));
  REQUIRE(stats.sigma_opt == 1.0);
  REQUIRE(stats.max_min_distance == 9.0);
  REQUIRE(stats.threshold == 5);
  REQUIRE(stats.radius() == 10.0);
  const auto g = saca::build_neighbor_graph(dist, stats);
  CHECK(g.neighbors[0] == std::vector<std::uint32_t>{0, 1});
  CHECK(g.neighbors[1] == std::vector<std::uint32_t>{0, 1, 2});
  CHECK(g.neighbors[2] == std::vector<std::uint32_t>{1, 2});
  CHECK(g.weights == std::vector<std::size_t>{2, 3, 2});

  const auto part = saca::partition_dense_sparse(g, 1);
  CHECK(part.core == std::vector<std::size_t>{0, 1, 2});
  CHECK(part.noise.empty());
}

TEST_CASE("points exactly one radius apart are not neighbours", "[saca][graph]") {
  saca::ThresholdStats stats;
  stats.sigma_opt = 1.0;
  stats.max_min_distance = 3.0;
  stats.threshold = 2;
  const auto at = saca::DistanceMatrix::from_values(2, {0, 4, 4, 0});
  CHECK(saca::build_neighbor_graph(at, stats).weights == std::vector<std::size_t>{1, 1});
  const auto inside = saca::DistanceMatrix::from_values(2, {0, 3.999, 3.999, 0});
  CHECK(saca::build_neighbor_graph(inside, stats).weights == std::vector<std::size_t>{2, 2});
}

TEST_CASE("neighbour sets match brute-force evaluation of the predicate", "[saca][graph]") {
  for (std::uint64_t seed = 100; seed < 140; ++seed) {
    const auto pts = fixtures::random_instance(seed);
    const auto dist = saca::pairwise_distances(fixtures::from_points(pts));
    const auto stats = saca::compute_threshold(saca::filter_outlier_mins(saca::nearest_neighbor_distances(dist)).filtered);
    const auto g = saca::build_neighbor_graph(dist, stats);
    const auto ref = oracle::neighbor_sets(oracle::distance_matrix(pts), oracle::threshold(pts));
    for (std::size_t i = 0; i < pts.size(); ++i) {
      REQUIRE(std::vector<std::size_t>(g.neighbors[i].begin(), g.neighbors[i].end()) == ref[i]);
      REQUIRE(g.weights[i] == ref[i].size());
    }
  }
}

TEST_CASE("selectivity rule prunes weights up to C", "[saca][prune]") {
  auto part = saca::partition_dense_sparse(graph_with_weights({2, 3, 2}), 1);
  CHECK(part.core == std::vector<std::size_t>{0, 1, 2});
  part = saca::partition_dense_sparse(graph_with_weights({1, 3, 3}), 1);
  CHECK(part.noise == std::vector<std::size_t>{0});
  CHECK(part.core == std::vector<std::size_t>{1, 2});
  part = saca::partition_dense_sparse(graph_with_weights({1, 3, 3}), 2, std::vector<std::size_t>{2});
  CHECK(part.core == std::vector<std::size_t>{1});
  CHECK(part.noise == std::vector<std::size_t>{0, 2});
}

TEST_CASE("all-sparse input asks for a smaller C", "[saca][prune][errors]") {
  for (int c = 1; c <= 4; ++c) {
    try {
      saca::partition_dense_sparse(graph_with_weights({1, 1}), c);
      FAIL("expected DecreaseCError");
    } catch (const saca::DecreaseCError& e) {
      CHECK_THAT(e.what(), Catch::Matchers::StartsWith("Decrease C"));
    }
  }
  CHECK_THROWS_AS(saca::partition_dense_sparse(graph_with_weights({2}), 0), saca::InputError);
  // Three evenly spaced points have weights 2, 3, 2.
  const auto data = Dataset::from_rows({{0}, {1}, {2}});
  saca::SacaConfig config;
  config.c = 3;
  CHECK_THROWS_AS(saca::saca_cluster(data, config), saca::DecreaseCError);
}

TEST_CASE("core labelling finds connected components", "[saca][label]") {
  const auto two = graph_from_edges(4, {{0, 1}, {2, 3}});
  auto l = saca::label_cores(two, all_indices(4));
  CHECK(l.labels == std::vector<saca::Label>{1, 1, 2, 2});
  CHECK(l.num_clusters == 2);

  const auto full = graph_from_edges(4, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}});
  l = saca::label_cores(full, all_indices(4));
  CHECK(l.labels == std::vector<saca::Label>{1, 1, 1, 1});

  // Non-core points neither receive a label nor bridge components.
  const auto chain = graph_from_edges(3, {{0, 1}, {1, 2}});
  l = saca::label_cores(chain, std::vector<std::size_t>{0, 2});
  CHECK(l.labels == std::vector<saca::Label>{1, saca::kNoise, 2});
}

TEST_CASE("core labelling matches a union-find oracle", "[saca][label]") {
  saca::Random rng(77);
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t n = 50;
    std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;
    const double p = rng.uniform(0.01, 0.06);
    for (std::uint32_t i = 0; i < n; ++i)
      for (std::uint32_t j = i + 1; j < n; ++j)
        if (rng.uniform() < p) edges.emplace_back(i, j);
    const auto g = graph_from_edges(n, edges);
    std::vector<std::size_t> core;
    std::vector<bool> is_core(n);
    for (std::size_t i = 0; i < n; ++i) {
      is_core[i] = rng.uniform() < 0.8;
      if (is_core[i]) core.push_back(i);
    }
    std::vector<std::vector<std::size_t>> nb;
    for (const auto& v : g.neighbors) nb.emplace_back(v.begin(), v.end());
    const auto ref = oracle::union_find_components(nb, is_core);
    const auto got = saca::label_cores(g, core);
    for (std::size_t i = 0; i < n; ++i) REQUIRE(got.labels[i] == (is_core[i] ? ref[i] : saca::kNoise));

    // A shuffled seed order yields the same labels after renumbering.
    const auto shuffled = saca::label_cores(g, core, 1234 + trial);
    REQUIRE(shuffled.labels == got.labels);
  }
}

TEST_CASE("noise joins the cluster of its nearest core point", "[saca][reassign]") {
  const auto data = Dataset::from_rows({{0}, {10}, {3}});
  const auto dist = saca::pairwise_distances(data);
  saca::CoreLabeling cores{{1, 2, saca::kNoise}, 2};
  const auto out = saca::reassign_noise(cores, std::vector<std::size_t>{2}, dist, data, false);
  CHECK(out.labels == std::vector<saca::Label>{1, 2, 1});
  CHECK(out.pre_reassignment_noise == std::vector<std::size_t>{2});
}

TEST_CASE("centroid reassignment uses cluster means", "[saca][reassign]") {
  // Core clusters centred at (0,0) and (10,0); the noise point at (4,0) is
  // nearer the second cluster's closest member (6.5,0) but nearer the first centroid.
  const auto data = Dataset::from_rows({{-1, 0}, {1, 0}, {6.5, 0}, {13.5, 0}, {4, 0}});
  const auto dist = saca::pairwise_distances(data);
  saca::CoreLabeling cores{{1, 1, 2, 2, saca::kNoise}, 2};
  const auto by_point = saca::reassign_noise(cores, std::vector<std::size_t>{4}, dist, data, false);
  CHECK(by_point.labels[4] == 2);
  const auto by_centre = saca::reassign_noise(cores, std::vector<std::size_t>{4}, dist, data, true);
  CHECK(by_centre.labels[4] == 1);
  REQUIRE(by_centre.centroids.has_value());
  CHECK((*by_centre.centroids)[0] == std::vector<double>{0, 0});
  CHECK((*by_centre.centroids)[1] == std::vector<double>{10, 0});
}

TEST_CASE("reassignment ties go to the lower index", "[saca][reassign]") {
  const auto data = Dataset::from_rows({{0}, {4}, {2}});
  const auto dist = saca::pairwise_distances(data);
  saca::CoreLabeling cores{{1, 2, saca::kNoise}, 2};
  CHECK(saca::reassign_noise(cores, std::vector<std::size_t>{2}, dist, data, false).labels[2] == 1);
  CHECK(saca::reassign_noise(cores, std::vector<std::size_t>{2}, dist, data, true).labels[2] == 1);
  const saca::CoreLabeling swapped{{2, 1, saca::kNoise}, 2};
  CHECK(saca::reassign_noise(swapped, std::vector<std::size_t>{2}, dist, data, false).labels[2] == 2);
  CHECK(saca::reassign_noise(swapped, std::vector<std::size_t>{2}, dist, data, true).labels[2] == 1);
}

TEST_CASE("reassignment is a single pass against the core set", "[saca][reassign]") {
  // Point 3 is closest to noise point 2, but reassigned points never recruit.
  const auto data = Dataset::from_rows({{0}, {20}, {8}, {11}});
  const auto dist = saca::pairwise_distances(data);
  saca::CoreLabeling cores{{1, 2, saca::kNoise, saca::kNoise}, 2};
  const auto out = saca::reassign_noise(cores, std::vector<std::size_t>{2, 3}, dist, data, false);
  CHECK(out.labels == std::vector<saca::Label>{1, 2, 1, 2});
}

TEST_CASE("excluded outliers keep the noise label", "[saca][reassign]") {
  const auto data = Dataset::from_rows({{0}, {10}, {3}, {50}});
  const auto dist = saca::pairwise_distances(data);
  saca::CoreLabeling cores{{1, 2, saca::kNoise, saca::kNoise}, 2};
  const auto out = saca::reassign_noise(cores, std::vector<std::size_t>{2, 3}, dist, data, false,
                                        std::vector<std::size_t>{3});
  CHECK(out.labels == std::vector<saca::Label>{1, 2, 1, saca::kNoise});
}

TEST_CASE("exclude_outliers removes flagged points from the clustering", "[saca]") {
  // A unit grid plus one far point whose nearest-neighbour distance is an outlier.
  std::vector<std::vector<double>> rows;
  for (int x = 0; x < 6; ++x)
    for (int y = 0; y < 6; ++y) rows.push_back({double(x), double(y)});
  rows.push_back({500, 500});
  const auto data = Dataset::from_rows(rows);
  saca::SacaConfig config;
  const auto kept = saca::saca_cluster(data, config);
  REQUIRE(kept.outliers.outlier_indices == std::vector<std::size_t>{rows.size() - 1});
  CHECK(kept.labels.back() != saca::kNoise);
  config.exclude_outliers = true;
  const auto dropped = saca::saca_cluster(data, config);
  CHECK(dropped.labels.back() == saca::kNoise);
  CHECK(dropped.num_clusters == 1);
}

TEST_CASE("two well separated blobs are recovered exactly", "[saca]") {
  saca::BlobSpec spec;
  spec.clusters = 2;
  spec.per_cluster = 50;
  spec.separation = 20.0;
  spec.seed = 7;
  const auto data = saca::gaussian_blobs(spec);
  const auto out = saca::saca_cluster(data);
  CHECK(out.num_clusters == 2);
  CHECK(saca::adjusted_rand_index(data.truth(), out.labels) == 1.0);
}

TEST_CASE("labels are numbered by first occurrence", "[saca]") {
  const auto data = Dataset::from_rows({{100}, {101}, {0}, {1}, {102}, {2}});
  const auto out = saca::saca_cluster(data);
  CHECK(out.labels == std::vector<saca::Label>{1, 1, 2, 2, 1, 2});
}

TEST_CASE("configuration is validated", "[saca][errors]") {
  const auto data = Dataset::from_rows({{0}, {1}, {3}});
  saca::SacaConfig config;
  config.c = 0;
  CHECK_THROWS_AS(saca::saca_cluster(data, config), saca::InputError);
  config.c = 1;
  config.z_threshold = -1.0;
  CHECK_THROWS_AS(saca::saca_cluster(data, config), saca::InputError);
  config.z_threshold = std::numeric_limits<double>::infinity();
  CHECK_THROWS_AS(saca::saca_cluster(data, config), saca::InputError);
}

TEST_CASE("all-duplicate input is degenerate", "[saca][errors]") {
  const auto data = Dataset::from_rows({{1, 1}, {1, 1}, {1, 1}});
  CHECK_THROWS_AS(saca::saca_cluster(data), saca::DegenerateDataError);
}

TEST_CASE("intercluster margins", "[saca][margin]") {
  const auto data = Dataset::from_rows({{0, 0}, {3, 4}});
  const auto m = saca::intercluster_margin(data, std::vector<saca::Label>{1, 2});
  REQUIRE(m.size() == 1);
  CHECK(m[0].first == 1);
  CHECK(m[0].second == 2);
  CHECK(m[0].delta == 5.0);

  const auto three = Dataset::from_rows({{0, 0}, {0, 1}, {3, 4}});
  const auto m2 = saca::intercluster_margin(three, std::vector<saca::Label>{1, 1, 2});
  REQUIRE(m2.size() == 1);
  CHECK(m2[0].delta == Catch::Approx(std::sqrt(9.0 + 9.0)));

  CHECK_THROWS_AS(saca::intercluster_margin(data, std::vector<saca::Label>{1, 1}), saca::InputError);
  CHECK_THROWS_AS(saca::intercluster_margin(data, std::vector<saca::Label>{1}), saca::InputError);
}

TEST_CASE("intercluster margins match a brute-force minimum", "[saca][margin]") {
  saca::Random rng(21);
  for (int trial = 0; trial < 10; ++trial) {
    oracle::Points pts;
    oracle::Labels labels;
    for (int c = 0; c < 3; ++c) {
      const double cx = rng.uniform(-10, 10), cy = rng.uniform(-10, 10);
      for (int i = 0; i < 15; ++i) {
        pts.push_back({rng.normal(cx, 1.0), rng.normal(cy, 1.0)});
        labels.push_back(c + 1);
      }
    }
    const auto m = saca::intercluster_margin(fixtures::from_points(pts), labels);
    REQUIRE(m.size() == 3);
    for (const auto& mm : m) {
      double best = std::numeric_limits<double>::infinity();
      for (std::size_t i = 0; i < pts.size(); ++i)
        for (std::size_t j = 0; j < pts.size(); ++j)
          if (labels[i] == mm.first && labels[j] == mm.second) best = std::min(best, oracle::distance(pts[i], pts[j]));
      CHECK(mm.delta == Catch::Approx(best).margin(1e-12));
    }
  }
}

TEST_CASE("margin condition compares against the neighbour radius", "[saca][margin]") {
  saca::ThresholdStats stats;
  stats.sigma_opt = 1.0;
  stats.threshold = 2;
  const std::vector<saca::ClusterMargin> m{{1, 2, 10.0}, {1, 3, 4.0}, {2, 3, 4.5}};
  CHECK(saca::margin_condition_satisfied(m, stats) == std::vector<bool>{true, false, true});
}

TEST_CASE("a blob pair with a wide margin satisfies the condition and is recovered", "[saca][margin]") {
  saca::BlobSpec spec;
  spec.clusters = 2;
  spec.per_cluster = 60;
  spec.dims = 2;
  spec.separation = 40.0;
  spec.seed = 3;
  const auto data = saca::gaussian_blobs(spec);
  const auto out = saca::saca_cluster(data);
  const auto margins = saca::intercluster_margin(data, data.truth());
  REQUIRE(margins.size() == 1);
  CHECK(margins[0].delta > 3.0 * out.threshold.radius());
  CHECK(saca::margin_condition_satisfied(margins, out.threshold) == std::vector<bool>{true});
  CHECK(saca::adjusted_rand_index(data.truth(), out.labels) == 1.0);
}

TEST_CASE("rings preset separates two rings by default and 36 blobs at C = 20", "[saca][preset][slow]") {
  const auto data = saca::generate({"rings", 42});
  const auto coarse = saca::saca_cluster(data);
  CHECK(coarse.num_clusters == 2);
  saca::SacaConfig fine;
  fine.c = 20;
  const auto detailed = saca::saca_cluster(data, fine);
  CHECK(detailed.num_clusters == 36);
  CHECK(saca::adjusted_rand_index(data.truth(), detailed.labels) >= 0.95);
}
