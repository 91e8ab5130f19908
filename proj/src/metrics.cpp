#include "saca/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "saca/errors.hpp"

namespace saca {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Dense 0..k-1 ids for the non-noise labels, in ascending label order.
struct Compacted {
  std::vector<std::size_t> ids;  // k for skipped points
  std::size_t k = 0;
};

Compacted compact_clusters(std::span<const Label> labels) {
  std::map<Label, std::size_t> index;
  for (Label l : labels) {
    if (l != kNoise) index.emplace(l, 0);
  }
  std::size_t next = 0;
  for (auto& [label, slot] : index) slot = next++;
  Compacted out;
  out.k = index.size();
  out.ids.resize(labels.size());
  for (std::size_t i = 0; i < labels.size(); ++i) {
    out.ids[i] = labels[i] == kNoise ? out.k : index.at(labels[i]);
  }
  return out;
}

Compacted require_clusters(std::span<const Label> labels, std::size_t n, const char* metric) {
  if (labels.size() != n) {
    throw InputError(std::string(metric) + ": " + std::to_string(labels.size()) + " labels for " +
                     std::to_string(n) + " points");
  }
  Compacted c = compact_clusters(labels);
  if (c.k < 2) {
    throw MetricUndefinedError(std::string(metric) + " is undefined for fewer than two clusters");
  }
  return c;
}

std::vector<std::vector<double>> centroids_of(const Dataset& data, const Compacted& c,
                                              std::vector<std::size_t>& counts) {
  const std::size_t d = data.dims();
  std::vector<std::vector<double>> mu(c.k, std::vector<double>(d, 0.0));
  counts.assign(c.k, 0);
  for (std::size_t i = 0; i < data.size(); ++i) {
    if (c.ids[i] == c.k) continue;
    const auto p = data.point(i);
    for (std::size_t a = 0; a < d; ++a) mu[c.ids[i]][a] += p[a];
    ++counts[c.ids[i]];
  }
  for (std::size_t k = 0; k < c.k; ++k) {
    for (double& x : mu[k]) x /= static_cast<double>(counts[k]);
  }
  return mu;
}

template <typename DistanceFn>
double silhouette_impl(std::size_t n, std::span<const Label> labels, DistanceFn&& distance) {
  const Compacted c = require_clusters(labels, n, "silhouette");
  std::vector<std::size_t> sizes(c.k, 0);
  for (std::size_t i = 0; i < n; ++i) {
    if (c.ids[i] != c.k) ++sizes[c.ids[i]];
  }

  std::vector<double> sums(c.k);
  double total = 0.0;
  std::size_t counted = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t own = c.ids[i];
    if (own == c.k) continue;
    ++counted;
    if (sizes[own] == 1) continue;
    std::fill(sums.begin(), sums.end(), 0.0);
    for (std::size_t j = 0; j < n; ++j) {
      if (j == i || c.ids[j] == c.k) continue;
      sums[c.ids[j]] += distance(i, j);
    }
    const double a = sums[own] / static_cast<double>(sizes[own] - 1);
    double b = kInf;
    for (std::size_t k = 0; k < c.k; ++k) {
      if (k != own) b = std::min(b, sums[k] / static_cast<double>(sizes[k]));
    }
    const double denom = std::max(a, b);
    if (denom > 0.0) total += (b - a) / denom;
  }
  return total / static_cast<double>(counted);
}

struct Contingency {
  std::vector<std::vector<double>> table;  // rows: truth, cols: predicted
  std::vector<double> rows;
  std::vector<double> cols;
  double n = 0.0;
};

Contingency contingency(std::span<const Label> truth, std::span<const Label> predicted,
                        const char* metric) {
  if (truth.size() != predicted.size()) {
    throw InputError(std::string(metric) + ": label sequences differ in length (" +
                     std::to_string(truth.size()) + " vs " + std::to_string(predicted.size()) + ")");
  }
  if (truth.size() < 2) throw InputError(std::string(metric) + ": at least 2 labels are required");
  std::map<Label, std::size_t> ti, pi;
  for (Label l : truth) ti.emplace(l, 0);
  for (Label l : predicted) pi.emplace(l, 0);
  std::size_t next = 0;
  for (auto& [l, s] : ti) s = next++;
  next = 0;
  for (auto& [l, s] : pi) s = next++;

  Contingency c;
  c.table.assign(ti.size(), std::vector<double>(pi.size(), 0.0));
  c.rows.assign(ti.size(), 0.0);
  c.cols.assign(pi.size(), 0.0);
  for (std::size_t i = 0; i < truth.size(); ++i) {
    const std::size_t r = ti.at(truth[i]);
    const std::size_t q = pi.at(predicted[i]);
    c.table[r][q] += 1.0;
    c.rows[r] += 1.0;
    c.cols[q] += 1.0;
  }
  c.n = static_cast<double>(truth.size());
  return c;
}

double pairs(double x) { return x * (x - 1.0) / 2.0; }

double entropy(const std::vector<double>& counts, double n) {
  double h = 0.0;
  for (double a : counts) {
    if (a > 0.0) h -= (a / n) * std::log(a / n);
  }
  return h;
}

double mutual_information(const Contingency& c) {
  double mi = 0.0;
  for (std::size_t r = 0; r < c.rows.size(); ++r) {
    for (std::size_t q = 0; q < c.cols.size(); ++q) {
      const double nij = c.table[r][q];
      if (nij > 0.0) mi += (nij / c.n) * std::log(c.n * nij / (c.rows[r] * c.cols[q]));
    }
  }
  return std::max(mi, 0.0);
}

// Expected mutual information under the hypergeometric (fixed marginals) model.
double expected_mutual_information(const Contingency& c) {
  const double n = c.n;
  const double lg_n = std::lgamma(n + 1.0);
  double emi = 0.0;
  for (double a : c.rows) {
    for (double b : c.cols) {
      const double lo = std::max(1.0, a + b - n);
      const double hi = std::min(a, b);
      const double fixed = std::lgamma(a + 1.0) + std::lgamma(b + 1.0) +
                           std::lgamma(n - a + 1.0) + std::lgamma(n - b + 1.0) - lg_n;
      for (double nij = lo; nij <= hi; nij += 1.0) {
        const double log_p = fixed - std::lgamma(nij + 1.0) - std::lgamma(a - nij + 1.0) -
                             std::lgamma(b - nij + 1.0) - std::lgamma(n - a - b + nij + 1.0);
        emi += (nij / n) * std::log(n * nij / (a * b)) * std::exp(log_p);
      }
    }
  }
  return emi;
}

// Each row and each column has exactly one non-zero cell.
bool is_relabelling(const Contingency& c) {
  if (c.rows.size() != c.cols.size()) return false;
  for (std::size_t r = 0; r < c.rows.size(); ++r) {
    std::size_t nonzero = 0;
    for (double v : c.table[r]) nonzero += v > 0.0;
    if (nonzero != 1) return false;
  }
  return true;
}

nlohmann::json metric_value(const std::optional<double>& v) {
  if (!v) return nullptr;
  if (std::isnan(*v)) return nullptr;
  if (std::isinf(*v)) return *v > 0 ? "inf" : "-inf";
  return *v;
}

}  // namespace

double silhouette(const Dataset& data, std::span<const Label> labels) {
  return silhouette_impl(data.size(), labels, [&](std::size_t i, std::size_t j) {
    return euclidean(data.point(i), data.point(j));
  });
}

double silhouette(const DistanceMatrix& dist, std::span<const Label> labels) {
  return silhouette_impl(dist.size(), labels, [&](std::size_t i, std::size_t j) { return dist(i, j); });
}

double calinski_harabasz(const Dataset& data, std::span<const Label> labels) {
  const Compacted c = require_clusters(labels, data.size(), "calinski_harabasz");
  std::vector<std::size_t> counts;
  const auto mu = centroids_of(data, c, counts);

  const std::size_t d = data.dims();
  std::vector<double> overall(d, 0.0);
  std::size_t n = 0;
  for (std::size_t i = 0; i < data.size(); ++i) {
    if (c.ids[i] == c.k) continue;
    const auto p = data.point(i);
    for (std::size_t a = 0; a < d; ++a) overall[a] += p[a];
    ++n;
  }
  if (n <= c.k) {
    throw MetricUndefinedError("calinski_harabasz is undefined when every point is its own cluster");
  }
  for (double& x : overall) x /= static_cast<double>(n);

  double between = 0.0;
  for (std::size_t k = 0; k < c.k; ++k) {
    double sq = 0.0;
    for (std::size_t a = 0; a < d; ++a) sq += (mu[k][a] - overall[a]) * (mu[k][a] - overall[a]);
    between += static_cast<double>(counts[k]) * sq;
  }
  double within = 0.0;
  for (std::size_t i = 0; i < data.size(); ++i) {
    if (c.ids[i] == c.k) continue;
    const auto p = data.point(i);
    for (std::size_t a = 0; a < d; ++a) within += (p[a] - mu[c.ids[i]][a]) * (p[a] - mu[c.ids[i]][a]);
  }
  if (within == 0.0) return kInf;
  return (between / static_cast<double>(c.k - 1)) / (within / static_cast<double>(n - c.k));
}

double davies_bouldin(const Dataset& data, std::span<const Label> labels) {
  const Compacted c = require_clusters(labels, data.size(), "davies_bouldin");
  std::vector<std::size_t> counts;
  const auto mu = centroids_of(data, c, counts);

  std::vector<double> scatter(c.k, 0.0);
  for (std::size_t i = 0; i < data.size(); ++i) {
    if (c.ids[i] == c.k) continue;
    scatter[c.ids[i]] += euclidean(data.point(i), mu[c.ids[i]]);
  }
  for (std::size_t k = 0; k < c.k; ++k) scatter[k] /= static_cast<double>(counts[k]);

  double total = 0.0;
  for (std::size_t i = 0; i < c.k; ++i) {
    double worst = 0.0;
    for (std::size_t j = 0; j < c.k; ++j) {
      if (j == i) continue;
      const double sep = euclidean(mu[i], mu[j]);
      const double r = sep > 0.0 ? (scatter[i] + scatter[j]) / sep : kInf;
      worst = std::max(worst, r);
    }
    total += worst;
  }
  return total / static_cast<double>(c.k);
}

double adjusted_rand_index(std::span<const Label> truth, std::span<const Label> predicted) {
  const Contingency c = contingency(truth, predicted, "adjusted_rand_index");
  double index = 0.0;
  for (const auto& row : c.table) {
    for (double v : row) index += pairs(v);
  }
  double sum_rows = 0.0, sum_cols = 0.0;
  for (double a : c.rows) sum_rows += pairs(a);
  for (double b : c.cols) sum_cols += pairs(b);
  const double expected = sum_rows * sum_cols / pairs(c.n);
  const double maximum = 0.5 * (sum_rows + sum_cols);
  const double denom = maximum - expected;
  // Both partitions trivial (one block, or all singletons): the index equals its expectation.
  if (denom == 0.0) return 1.0;
  return (index - expected) / denom;
}

double adjusted_mutual_information(std::span<const Label> truth, std::span<const Label> predicted) {
  const Contingency c = contingency(truth, predicted, "adjusted_mutual_information");
  if (c.rows.size() == 1 && c.cols.size() == 1) return 1.0;
  if (is_relabelling(c)) return 1.0;

  const double mi = mutual_information(c);
  const double emi = expected_mutual_information(c);
  const double normalizer = std::max(entropy(c.rows, c.n), entropy(c.cols, c.n));
  double denom = normalizer - emi;
  constexpr double eps = std::numeric_limits<double>::epsilon();
  denom = denom < 0.0 ? std::min(denom, -eps) : std::max(denom, eps);
  return (mi - emi) / denom;
}

double completeness(std::span<const Label> truth, std::span<const Label> predicted) {
  const Contingency c = contingency(truth, predicted, "completeness");
  const double h_pred = entropy(c.cols, c.n);
  if (h_pred == 0.0) return 1.0;
  double h_pred_given_truth = 0.0;
  for (std::size_t r = 0; r < c.rows.size(); ++r) {
    for (double nij : c.table[r]) {
      if (nij > 0.0) h_pred_given_truth -= (nij / c.n) * std::log(nij / c.rows[r]);
    }
  }
  return 1.0 - h_pred_given_truth / h_pred;
}

std::string EvaluationReport::to_json() const {
  nlohmann::ordered_json j;
  j["silhouette"] = metric_value(silhouette);
  j["calinski_harabasz"] = metric_value(calinski_harabasz);
  j["davies_bouldin"] = metric_value(davies_bouldin);
  j["ari"] = metric_value(ari);
  j["ami"] = metric_value(ami);
  j["completeness"] = metric_value(completeness);
  j["dropped_points"] = dropped_points;
  return j.dump();
}

EvaluationReport evaluate(const Dataset& data, std::span<const Label> predicted,
                          std::span<const Label> truth, NoisePolicy policy) {
  if (predicted.size() != data.size()) {
    throw InputError("evaluate: " + std::to_string(predicted.size()) + " labels for " +
                     std::to_string(data.size()) + " points");
  }
  if (!truth.empty() && truth.size() != data.size()) {
    throw InputError("evaluate: truth has " + std::to_string(truth.size()) + " labels for " +
                     std::to_string(data.size()) + " points");
  }

  EvaluationReport report;
  std::vector<std::size_t> kept;
  kept.reserve(data.size());
  for (std::size_t i = 0; i < data.size(); ++i) {
    if (policy == NoisePolicy::Drop && predicted[i] == kNoise) {
      ++report.dropped_points;
    } else {
      kept.push_back(i);
    }
  }
  if (kept.size() < 2) return report;

  std::vector<double> coords;
  coords.reserve(kept.size() * data.dims());
  std::vector<Label> pred, gt;
  // AsCluster gives noise an id no real cluster uses.
  Label noise_id = 0;
  for (Label l : predicted) noise_id = std::max(noise_id, l);
  ++noise_id;
  for (std::size_t i : kept) {
    const auto p = data.point(i);
    coords.insert(coords.end(), p.begin(), p.end());
    pred.push_back(predicted[i] == kNoise ? noise_id : predicted[i]);
    if (!truth.empty()) gt.push_back(truth[i]);
  }
  const Dataset sub(std::move(coords), data.dims());

  auto guarded = [](auto&& fn) -> std::optional<double> {
    try {
      return fn();
    } catch (const MetricUndefinedError&) {
      return std::nullopt;
    }
  };
  report.silhouette = guarded([&] { return saca::silhouette(sub, pred); });
  report.calinski_harabasz = guarded([&] { return saca::calinski_harabasz(sub, pred); });
  report.davies_bouldin = guarded([&] { return saca::davies_bouldin(sub, pred); });
  if (!gt.empty()) {
    report.ari = adjusted_rand_index(gt, pred);
    report.ami = adjusted_mutual_information(gt, pred);
    report.completeness = saca::completeness(gt, pred);
  }
  return report;
}

}  // namespace saca
