#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace saca {

inline constexpr double kDefaultZThreshold = 10.0;
/// Relative slack for comparisons that are exact ties in exact arithmetic
/// (lattice data, rescaled inputs); ties resolve as they would without rounding.
inline constexpr double kTieTolerance = 1e-12;

/// Robust (median/MAD) standardisation of a sample.
struct OutlierReport {
  std::vector<double> scores;
  std::vector<std::size_t> outlier_indices;  // ascending; |score| > threshold
  double median = 0.0;
  double mad = 0.0;
  // MAD was zero and scores were computed from the mean absolute deviation.
  bool fallback_used = false;
};

double median_of(std::span<const double> values);

/// Modified Z-scores: 0.6745 * (x - median) / MAD.
///
/// When MAD is zero the scores fall back to (x - median) / (1.253314 * MeanAD),
/// MeanAD being the mean absolute deviation from the median. If that is also
/// zero every score is zero and nothing is flagged.
OutlierReport modified_z_scores(std::span<const double> values,
                                double z_threshold = kDefaultZThreshold);

struct FilteredMins {
  std::vector<double> filtered;
  OutlierReport report;
  // Removing the flagged entries would have emptied the sample, so nothing was removed.
  bool removal_suppressed = false;
};

FilteredMins filter_outlier_mins(std::span<const double> mins,
                                 double z_threshold = kDefaultZThreshold);

/// Distance unit, spread and integer neighbourhood threshold derived from
/// the (outlier-filtered) nearest-neighbour distances.
struct ThresholdStats {
  double sigma_opt = 0.0;         // smallest strictly positive entry
  double max_min_distance = 0.0;  // largest entry (L)
  long long threshold = 1;        // T = ceil((L / sigma_opt) / 2)

  /// Effective neighbour radius: d_ij < 2 * T * sigma_opt.
  double radius() const noexcept { return 2.0 * static_cast<double>(threshold) * sigma_opt; }
};

/// Throws DegenerateDataError if no entry is strictly positive.
ThresholdStats compute_threshold(std::span<const double> filtered_mins);

}  // namespace saca
