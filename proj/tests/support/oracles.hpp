// Slow, direct reference implementations used to cross-check the library.
// Nothing here calls into saca except the plain data types.
#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

namespace oracle {

using Points = std::vector<std::vector<double>>;
using Labels = std::vector<std::int32_t>;

double distance(const std::vector<double>& a, const std::vector<double>& b);
std::vector<std::vector<double>> distance_matrix(const Points& pts);
std::vector<double> row_minima(const std::vector<std::vector<double>>& d);

double median(std::vector<double> v);

struct ZScores {
  std::vector<double> scores;
  std::vector<std::size_t> flagged;
};
// Per-element evaluation, including the mean-absolute-deviation fallback.
ZScores modified_z(const std::vector<double>& v, double threshold);

struct Threshold {
  double sigma = 0.0;
  double big_l = 0.0;
  long long t = 0;
};
// Full pipeline from points: distances, minima, outlier removal, T.
Threshold threshold(const Points& pts, double z = 10.0);

// n_i = { j : (d_ij / sigma) / 2 < T } evaluated pair by pair.
std::vector<std::vector<std::size_t>> neighbor_sets(const std::vector<std::vector<double>>& d,
                                                    const Threshold& th);

// Connected components of the core-restricted neighbour graph via
// union-find; labels 1..k numbered by smallest member index, 0 off-core.
Labels union_find_components(const std::vector<std::vector<std::size_t>>& nbrs,
                             const std::vector<bool>& is_core);

// DBSCAN via the transitive closure of core-to-core reachability.
// Clusters are numbered by their lowest core index; a border point goes to
// the lowest-numbered cluster with a core point within eps.
Labels dbscan_closure(const std::vector<std::vector<double>>& d, double eps, int min_pts);

// ARI by enumerating all n(n-1)/2 point pairs.
double ari_pairs(const Labels& truth, const Labels& pred);
// AMI with max-entropy normalisation, expected MI from a log-factorial table.
double ami_table(const Labels& truth, const Labels& pred);
// 1 - H(pred | truth) / H(pred), grouping by class directly.
double completeness_entropy(const Labels& truth, const Labels& pred);

double silhouette(const Points& pts, const Labels& labels);
double davies_bouldin(const Points& pts, const Labels& labels);
double calinski_harabasz(const Points& pts, const Labels& labels);

// True when a and b induce the same partition.
bool same_partition(const Labels& a, const Labels& b);

}  // namespace oracle
