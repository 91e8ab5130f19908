#include "saca/saca.h"

#include <cstring>
#include <exception>
#include <new>
#include <optional>
#include <string>
#include <vector>

#include "saca/datasets.hpp"
#include "saca/dbscan.hpp"
#include "saca/errors.hpp"
#include "saca/metrics.hpp"
#include "saca/plot.hpp"
#include "saca/saca.hpp"

struct saca_dataset {
  saca::Dataset data;
};

struct saca_result {
  std::vector<saca::Label> labels;
  int32_t num_clusters = 0;
  bool from_saca = false;
  saca::ThresholdStats threshold;
  std::size_t outliers = 0;
  bool mad_fallback = false;
  std::size_t pruned = 0;
  std::size_t cores = 0;
};

namespace {

thread_local std::string g_last_error;

saca_status fail(saca_status status, const std::string& message) {
  g_last_error = message;
  return status;
}

// Runs `fn`, translating exceptions into status codes.
template <typename Fn>
saca_status guarded(Fn&& fn) {
  try {
    fn();
    return SACA_OK;
  } catch (const saca::DecreaseCError& e) {
    return fail(SACA_ERR_DECREASE_C, e.what());
  } catch (const saca::DegenerateDataError& e) {
    return fail(SACA_ERR_DEGENERATE, e.what());
  } catch (const saca::MetricUndefinedError& e) {
    return fail(SACA_ERR_METRIC_UNDEFINED, e.what());
  } catch (const saca::InputError& e) {
    return fail(SACA_ERR_INPUT, e.what());
  } catch (const std::bad_alloc&) {
    return fail(SACA_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(SACA_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail(SACA_ERR_INTERNAL, "unknown error");
  }
}

#define SACA_REQUIRE(ptr)                                               \
  do {                                                                  \
    if (!(ptr)) return fail(SACA_ERR_NULL_ARGUMENT, "null argument: " #ptr); \
  } while (0)

std::span<const saca::Label> view(const int32_t* labels, std::size_t n) {
  return {reinterpret_cast<const saca::Label*>(labels), n};
}

}  // namespace

extern "C" {

const char* saca_version(void) { return "0.1.0"; }

const char* saca_last_error(void) { return g_last_error.c_str(); }

const char* saca_status_name(saca_status status) {
  switch (status) {
    case SACA_OK: return "ok";
    case SACA_ERR_INPUT: return "input error";
    case SACA_ERR_DEGENERATE: return "degenerate data";
    case SACA_ERR_DECREASE_C: return "decrease C";
    case SACA_ERR_METRIC_UNDEFINED: return "metric undefined";
    case SACA_ERR_NULL_ARGUMENT: return "null argument";
    case SACA_ERR_BUFFER_TOO_SMALL: return "buffer too small";
    case SACA_ERR_INTERNAL: return "internal error";
  }
  return "unknown status";
}

saca_status saca_dataset_create(const double* coords, size_t n, size_t dims, const int32_t* truth,
                                saca_dataset** out) {
  SACA_REQUIRE(coords);
  SACA_REQUIRE(out);
  *out = nullptr;
  return guarded([&] {
    std::optional<std::vector<saca::Label>> labels;
    if (truth) labels.emplace(truth, truth + n);
    *out = new saca_dataset{saca::Dataset(std::vector<double>(coords, coords + n * dims), dims,
                                          std::move(labels))};
  });
}

void saca_load_options_default(saca_load_options* options) {
  if (!options) return;
  options->delimiter = 0;
  options->has_header = 0;
  options->label_column = -1;
}

saca_status saca_dataset_load(const char* path, const saca_load_options* options, saca_dataset** out) {
  SACA_REQUIRE(path);
  SACA_REQUIRE(out);
  *out = nullptr;
  return guarded([&] {
    saca::LoadOptions opts;
    if (options) {
      if (options->delimiter != 0) opts.delimiter = options->delimiter;
      opts.has_header = options->has_header != 0;
      if (options->label_column >= 0) opts.label_column = static_cast<std::size_t>(options->label_column);
    }
    *out = new saca_dataset{saca::load_delimited(path, opts)};
  });
}

saca_status saca_dataset_generate(const char* preset, uint64_t seed, saca_dataset** out) {
  SACA_REQUIRE(preset);
  SACA_REQUIRE(out);
  *out = nullptr;
  return guarded([&] { *out = new saca_dataset{saca::generate({preset, seed})}; });
}

size_t saca_preset_count(void) { return saca::presets().size(); }

const char* saca_preset_name(size_t index) {
  const auto& table = saca::presets();
  return index < table.size() ? table[index].name.c_str() : nullptr;
}

saca_status saca_dataset_generate_blobs(size_t clusters, size_t per_cluster, size_t dims,
                                        double separation, double sigma, uint64_t seed,
                                        saca_dataset** out) {
  SACA_REQUIRE(out);
  *out = nullptr;
  return guarded([&] {
    *out = new saca_dataset{saca::gaussian_blobs({clusters, per_cluster, dims, separation, sigma, seed})};
  });
}

saca_status saca_dataset_write(const saca_dataset* data, const char* path, char delimiter) {
  SACA_REQUIRE(data);
  SACA_REQUIRE(path);
  return guarded([&] { saca::write_delimited(data->data, path, delimiter ? delimiter : ','); });
}

void saca_dataset_destroy(saca_dataset* data) { delete data; }

size_t saca_dataset_size(const saca_dataset* data) { return data ? data->data.size() : 0; }

size_t saca_dataset_dims(const saca_dataset* data) { return data ? data->data.dims() : 0; }

int saca_dataset_has_truth(const saca_dataset* data) { return data && data->data.has_truth() ? 1 : 0; }

saca_status saca_dataset_truth(const saca_dataset* data, int32_t* out, size_t capacity) {
  SACA_REQUIRE(data);
  SACA_REQUIRE(out);
  if (!data->data.has_truth()) return fail(SACA_ERR_INPUT, "dataset has no truth labels");
  const auto truth = data->data.truth();
  if (capacity < truth.size()) return fail(SACA_ERR_BUFFER_TOO_SMALL, "truth buffer too small");
  std::memcpy(out, truth.data(), truth.size() * sizeof(int32_t));
  return SACA_OK;
}

saca_status saca_dataset_coords(const saca_dataset* data, double* out, size_t capacity) {
  SACA_REQUIRE(data);
  SACA_REQUIRE(out);
  const auto coords = data->data.coords();
  if (capacity < coords.size()) return fail(SACA_ERR_BUFFER_TOO_SMALL, "coordinate buffer too small");
  std::memcpy(out, coords.data(), coords.size() * sizeof(double));
  return SACA_OK;
}

void saca_config_default(saca_config* config) {
  if (!config) return;
  const saca::SacaConfig defaults;
  config->c = defaults.c;
  config->use_center = defaults.use_center ? 1 : 0;
  config->z_threshold = defaults.z_threshold;
  config->exclude_outliers = defaults.exclude_outliers ? 1 : 0;
  config->has_seed = 0;
  config->seed = 0;
}

saca_status saca_cluster(const saca_dataset* data, const saca_config* config, saca_result** out) {
  SACA_REQUIRE(data);
  SACA_REQUIRE(out);
  *out = nullptr;
  return guarded([&] {
    saca::SacaConfig cfg;
    if (config) {
      cfg.c = config->c;
      cfg.use_center = config->use_center != 0;
      cfg.z_threshold = config->z_threshold;
      cfg.exclude_outliers = config->exclude_outliers != 0;
      if (config->has_seed) cfg.seed = config->seed;
    }
    auto assignment = saca::saca_cluster(data->data, cfg);
    auto* result = new saca_result;
    result->labels = std::move(assignment.labels);
    result->num_clusters = assignment.num_clusters;
    result->from_saca = true;
    result->threshold = assignment.threshold;
    result->outliers = assignment.outliers.outlier_indices.size();
    result->mad_fallback = assignment.outliers.fallback_used;
    result->pruned = assignment.pre_reassignment_noise.size();
    result->cores = assignment.core_indices.size();
    *out = result;
  });
}

saca_status saca_dbscan(const saca_dataset* data, double eps, int32_t min_pts, saca_result** out) {
  SACA_REQUIRE(data);
  SACA_REQUIRE(out);
  *out = nullptr;
  return guarded([&] {
    auto* result = new saca_result;
    result->labels = saca::dbscan(data->data, eps, min_pts);
    for (saca::Label l : result->labels) result->num_clusters = std::max(result->num_clusters, l);
    *out = result;
  });
}

void saca_result_destroy(saca_result* result) { delete result; }

size_t saca_result_size(const saca_result* result) { return result ? result->labels.size() : 0; }

int32_t saca_result_num_clusters(const saca_result* result) { return result ? result->num_clusters : 0; }

saca_status saca_result_labels(const saca_result* result, int32_t* out, size_t capacity) {
  SACA_REQUIRE(result);
  SACA_REQUIRE(out);
  if (capacity < result->labels.size()) return fail(SACA_ERR_BUFFER_TOO_SMALL, "label buffer too small");
  std::memcpy(out, result->labels.data(), result->labels.size() * sizeof(int32_t));
  return SACA_OK;
}

saca_status saca_result_threshold(const saca_result* result, saca_threshold* out) {
  SACA_REQUIRE(result);
  SACA_REQUIRE(out);
  if (!result->from_saca) return fail(SACA_ERR_INPUT, "result was not produced by saca_cluster");
  out->sigma_opt = result->threshold.sigma_opt;
  out->max_min_distance = result->threshold.max_min_distance;
  out->threshold = result->threshold.threshold;
  out->radius = result->threshold.radius();
  return SACA_OK;
}

size_t saca_result_outlier_count(const saca_result* result) { return result ? result->outliers : 0; }

int saca_result_mad_fallback(const saca_result* result) { return result && result->mad_fallback ? 1 : 0; }

size_t saca_result_pruned_count(const saca_result* result) { return result ? result->pruned : 0; }

size_t saca_result_core_count(const saca_result* result) { return result ? result->cores : 0; }

saca_status saca_default_eps_grid(const saca_dataset* data, size_t count, double* out, size_t capacity,
                                  size_t* written) {
  SACA_REQUIRE(data);
  SACA_REQUIRE(out);
  SACA_REQUIRE(written);
  *written = 0;
  std::vector<double> grid;
  const saca_status status =
      guarded([&] { grid = saca::default_eps_grid(saca::pairwise_distances(data->data), count); });
  if (status != SACA_OK) return status;
  if (capacity < grid.size()) return fail(SACA_ERR_BUFFER_TOO_SMALL, "eps buffer too small");
  std::memcpy(out, grid.data(), grid.size() * sizeof(double));
  *written = grid.size();
  return SACA_OK;
}

saca_status saca_dbscan_grid_search(const saca_dataset* data, const int32_t* truth, const double* eps_grid,
                                    size_t eps_count, const int32_t* min_pts_grid, size_t min_pts_count,
                                    saca_grid_result* out) {
  SACA_REQUIRE(data);
  SACA_REQUIRE(truth);
  SACA_REQUIRE(eps_grid);
  SACA_REQUIRE(min_pts_grid);
  SACA_REQUIRE(out);
  return guarded([&] {
    std::vector<int> min_pts(min_pts_grid, min_pts_grid + min_pts_count);
    const auto best = saca::dbscan_grid_search(data->data, view(truth, data->data.size()),
                                               {eps_grid, eps_count}, min_pts);
    out->eps = best.eps;
    out->min_pts = best.min_pts;
    out->ari = best.ari;
  });
}

saca_status saca_evaluate(const saca_dataset* data, const int32_t* labels, size_t n, const int32_t* truth,
                          int noise_as_cluster, saca_evaluation* out) {
  SACA_REQUIRE(data);
  SACA_REQUIRE(labels);
  SACA_REQUIRE(out);
  return guarded([&] {
    const auto policy = noise_as_cluster ? saca::NoisePolicy::AsCluster : saca::NoisePolicy::Drop;
    const auto report = saca::evaluate(data->data, view(labels, n),
                                       truth ? view(truth, n) : std::span<const saca::Label>{}, policy);
    *out = saca_evaluation{};
    out->has_silhouette = report.silhouette.has_value();
    out->silhouette = report.silhouette.value_or(0.0);
    out->has_calinski_harabasz = report.calinski_harabasz.has_value();
    out->calinski_harabasz = report.calinski_harabasz.value_or(0.0);
    out->has_davies_bouldin = report.davies_bouldin.has_value();
    out->davies_bouldin = report.davies_bouldin.value_or(0.0);
    out->has_external = report.ari.has_value();
    out->ari = report.ari.value_or(0.0);
    out->ami = report.ami.value_or(0.0);
    out->completeness = report.completeness.value_or(0.0);
    out->dropped_points = report.dropped_points;
  });
}

saca_status saca_adjusted_rand_index(const int32_t* truth, const int32_t* predicted, size_t n, double* out) {
  SACA_REQUIRE(truth);
  SACA_REQUIRE(predicted);
  SACA_REQUIRE(out);
  return guarded([&] { *out = saca::adjusted_rand_index(view(truth, n), view(predicted, n)); });
}

saca_status saca_adjusted_mutual_information(const int32_t* truth, const int32_t* predicted, size_t n,
                                             double* out) {
  SACA_REQUIRE(truth);
  SACA_REQUIRE(predicted);
  SACA_REQUIRE(out);
  return guarded([&] { *out = saca::adjusted_mutual_information(view(truth, n), view(predicted, n)); });
}

saca_status saca_completeness(const int32_t* truth, const int32_t* predicted, size_t n, double* out) {
  SACA_REQUIRE(truth);
  SACA_REQUIRE(predicted);
  SACA_REQUIRE(out);
  return guarded([&] { *out = saca::completeness(view(truth, n), view(predicted, n)); });
}

saca_status saca_intercluster_margins(const saca_dataset* data, const int32_t* labels, size_t n,
                                      const saca_result* result, saca_margin* out, size_t capacity,
                                      size_t* written) {
  SACA_REQUIRE(data);
  SACA_REQUIRE(labels);
  SACA_REQUIRE(result);
  SACA_REQUIRE(written);
  *written = 0;
  if (!result->from_saca) return fail(SACA_ERR_INPUT, "result was not produced by saca_cluster");
  std::vector<saca::ClusterMargin> margins;
  std::vector<bool> ok;
  const saca_status status = guarded([&] {
    margins = saca::intercluster_margin(data->data, view(labels, n));
    ok = saca::margin_condition_satisfied(margins, result->threshold);
  });
  if (status != SACA_OK) return status;
  if (capacity < margins.size() || (!out && !margins.empty())) {
    *written = margins.size();
    return fail(SACA_ERR_BUFFER_TOO_SMALL, "margin buffer too small");
  }
  for (std::size_t k = 0; k < margins.size(); ++k) {
    out[k] = {margins[k].first, margins[k].second, margins[k].delta, ok[k] ? 1 : 0};
  }
  *written = margins.size();
  return SACA_OK;
}

saca_status saca_render_scatter(const saca_dataset* data, const int32_t* labels, size_t n, int axis_x,
                                int axis_y, const char* path) {
  SACA_REQUIRE(data);
  SACA_REQUIRE(path);
  if (!labels || n == 0) return fail(SACA_ERR_INPUT, "plot: no labels given");
  return guarded([&] {
    saca::PlotOptions options;
    if (axis_x >= 0 && axis_y >= 0) {
      options.axes = std::make_pair(static_cast<std::size_t>(axis_x), static_cast<std::size_t>(axis_y));
    }
    saca::render_scatter(data->data, view(labels, n), std::filesystem::path(path), options);
  });
}

}  // extern "C"
