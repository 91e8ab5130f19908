#include "saca/preprocessing.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "saca/errors.hpp"

namespace saca {
namespace {

constexpr double kMadScale = 0.6745;
constexpr double kMeanAdScale = 1.253314;

}  // namespace

double median_of(std::span<const double> values) {
  if (values.empty()) throw InputError("median of an empty sample");
  std::vector<double> v(values.begin(), values.end());
  const std::size_t mid = v.size() / 2;
  std::nth_element(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(mid), v.end());
  const double upper = v[mid];
  if (v.size() % 2 == 1) return upper;
  const double lower = *std::max_element(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(mid));
  return 0.5 * (lower + upper);
}

OutlierReport modified_z_scores(std::span<const double> values, double z_threshold) {
  if (values.empty()) throw InputError("modified z-scores: empty input");
  if (!(z_threshold > 0.0)) throw InputError("modified z-scores: threshold must be positive");
  for (double v : values) {
    if (!std::isfinite(v)) throw InputError("modified z-scores: non-finite value");
  }

  OutlierReport report;
  report.median = median_of(values);

  std::vector<double> deviations(values.size());
  std::transform(values.begin(), values.end(), deviations.begin(),
                 [&](double v) { return std::abs(v - report.median); });
  report.mad = median_of(deviations);
  if (report.mad <= kTieTolerance * std::abs(report.median)) report.mad = 0.0;

  report.scores.resize(values.size(), 0.0);
  if (report.mad > 0.0) {
    for (std::size_t i = 0; i < values.size(); ++i) {
      report.scores[i] = kMadScale * (values[i] - report.median) / report.mad;
    }
  } else {
    report.fallback_used = true;
    double mean_ad = 0.0;
    for (double d : deviations) mean_ad += d;
    mean_ad /= static_cast<double>(deviations.size());
    if (mean_ad > 0.0) {
      for (std::size_t i = 0; i < values.size(); ++i) {
        report.scores[i] = (values[i] - report.median) / (kMeanAdScale * mean_ad);
      }
    }
  }

  for (std::size_t i = 0; i < report.scores.size(); ++i) {
    if (std::abs(report.scores[i]) > z_threshold) report.outlier_indices.push_back(i);
  }
  return report;
}

FilteredMins filter_outlier_mins(std::span<const double> mins, double z_threshold) {
  FilteredMins out;
  out.report = modified_z_scores(mins, z_threshold);
  const auto& flagged = out.report.outlier_indices;
  if (flagged.size() >= mins.size()) {
    out.removal_suppressed = true;
    out.filtered.assign(mins.begin(), mins.end());
    return out;
  }
  out.filtered.reserve(mins.size() - flagged.size());
  std::size_t next = 0;
  for (std::size_t i = 0; i < mins.size(); ++i) {
    if (next < flagged.size() && flagged[next] == i) {
      ++next;
      continue;
    }
    out.filtered.push_back(mins[i]);
  }
  return out;
}

ThresholdStats compute_threshold(std::span<const double> filtered_mins) {
  if (filtered_mins.empty()) throw InputError("threshold: no nearest-neighbour distances");
  double smallest_positive = std::numeric_limits<double>::infinity();
  double largest = 0.0;
  for (double v : filtered_mins) {
    if (!std::isfinite(v) || v < 0.0) throw InputError("threshold: invalid nearest-neighbour distance");
    if (v > 0.0) smallest_positive = std::min(smallest_positive, v);
    largest = std::max(largest, v);
  }
  if (!std::isfinite(smallest_positive)) {
    throw DegenerateDataError(
        "degenerate data: every point has an exact duplicate (all nearest-neighbour distances "
        "are zero), so no distance unit can be derived; remove duplicate points");
  }
  ThresholdStats stats;
  stats.sigma_opt = smallest_positive;
  stats.max_min_distance = largest;
  stats.threshold = static_cast<long long>(std::ceil((largest / smallest_positive) / 2.0 * (1.0 - kTieTolerance)));
  if (stats.threshold < 1) stats.threshold = 1;
  return stats;
}

}  // namespace saca
