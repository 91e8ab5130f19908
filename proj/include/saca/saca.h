/*
 * C interface to the SACA clustering library.
 *
 * Objects are opaque handles created by *_create / *_load / *_generate /
 * saca_cluster and released with the matching *_destroy function. Every
 * fallible call returns a saca_status; on failure a human-readable message
 * is available from saca_last_error() on the same thread until the next
 * failing call.
 */
#ifndef SACA_SACA_H
#define SACA_SACA_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(SACA_BUILDING_LIBRARY)
#    define SACA_API __declspec(dllexport)
#  else
#    define SACA_API __declspec(dllimport)
#  endif
#else
#  define SACA_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum saca_status {
  SACA_OK = 0,
  SACA_ERR_INPUT = 1,             /* malformed input, bad arguments, I/O failure */
  SACA_ERR_DEGENERATE = 2,        /* all nearest-neighbour distances are zero */
  SACA_ERR_DECREASE_C = 3,        /* every point pruned as sparse */
  SACA_ERR_METRIC_UNDEFINED = 4,  /* e.g. internal index with a single cluster */
  SACA_ERR_NULL_ARGUMENT = 5,
  SACA_ERR_BUFFER_TOO_SMALL = 6,
  SACA_ERR_INTERNAL = 7
} saca_status;

typedef struct saca_dataset saca_dataset;
typedef struct saca_result saca_result;

SACA_API const char* saca_version(void);
SACA_API const char* saca_last_error(void);
SACA_API const char* saca_status_name(saca_status status);

/* ---- datasets ---------------------------------------------------------- */

/* coords is row-major n x dims. truth may be NULL. */
SACA_API saca_status saca_dataset_create(const double* coords, size_t n, size_t dims,
                                         const int32_t* truth, saca_dataset** out);

typedef struct saca_load_options {
  char delimiter;        /* 0 = commas and/or whitespace */
  int has_header;
  int64_t label_column;  /* zero-based; negative = none */
} saca_load_options;

SACA_API void saca_load_options_default(saca_load_options* options);
SACA_API saca_status saca_dataset_load(const char* path, const saca_load_options* options,
                                       saca_dataset** out);

/* Named synthetic preset (see saca_preset_count / saca_preset_name). */
SACA_API saca_status saca_dataset_generate(const char* preset, uint64_t seed, saca_dataset** out);
SACA_API size_t saca_preset_count(void);
SACA_API const char* saca_preset_name(size_t index);

SACA_API saca_status saca_dataset_generate_blobs(size_t clusters, size_t per_cluster, size_t dims,
                                                 double separation, double sigma, uint64_t seed,
                                                 saca_dataset** out);

/* Delimited text, truth label (if any) as the final column. */
SACA_API saca_status saca_dataset_write(const saca_dataset* data, const char* path, char delimiter);

SACA_API void saca_dataset_destroy(saca_dataset* data);

SACA_API size_t saca_dataset_size(const saca_dataset* data);
SACA_API size_t saca_dataset_dims(const saca_dataset* data);
SACA_API int saca_dataset_has_truth(const saca_dataset* data);
/* Copies n labels into out; requires has_truth. */
SACA_API saca_status saca_dataset_truth(const saca_dataset* data, int32_t* out, size_t capacity);
SACA_API saca_status saca_dataset_coords(const saca_dataset* data, double* out, size_t capacity);

/* ---- clustering -------------------------------------------------------- */

typedef struct saca_config {
  int32_t c;            /* attention selectivity coefficient, >= 1 */
  int use_center;       /* reassign sparse points to the nearest centroid */
  double z_threshold;   /* modified z-score cut-off for nearest-neighbour distances */
  int exclude_outliers; /* flagged points keep label -1 */
  int has_seed;
  uint64_t seed;        /* shuffles the BFS seed order when has_seed */
} saca_config;

SACA_API void saca_config_default(saca_config* config);

SACA_API saca_status saca_cluster(const saca_dataset* data, const saca_config* config,
                                  saca_result** out);

SACA_API saca_status saca_dbscan(const saca_dataset* data, double eps, int32_t min_pts,
                                 saca_result** out);

SACA_API void saca_result_destroy(saca_result* result);

SACA_API size_t saca_result_size(const saca_result* result);
SACA_API int32_t saca_result_num_clusters(const saca_result* result);
/* Labels are 1..k; -1 marks noise (DBSCAN) or excluded outliers. */
SACA_API saca_status saca_result_labels(const saca_result* result, int32_t* out, size_t capacity);

typedef struct saca_threshold {
  double sigma_opt;
  double max_min_distance;
  int64_t threshold;
  double radius;
} saca_threshold;

/* Only meaningful for results produced by saca_cluster. */
SACA_API saca_status saca_result_threshold(const saca_result* result, saca_threshold* out);
SACA_API size_t saca_result_outlier_count(const saca_result* result);
SACA_API int saca_result_mad_fallback(const saca_result* result);
SACA_API size_t saca_result_pruned_count(const saca_result* result);
SACA_API size_t saca_result_core_count(const saca_result* result);

/* ---- baselines --------------------------------------------------------- */

typedef struct saca_grid_result {
  double eps;
  int32_t min_pts;
  double ari;
} saca_grid_result;

/* Fills at most `capacity` eps values (geometric, smallest positive
 * nearest-neighbour distance to largest pairwise distance); *written gets the count. */
SACA_API saca_status saca_default_eps_grid(const saca_dataset* data, size_t count, double* out,
                                           size_t capacity, size_t* written);

SACA_API saca_status saca_dbscan_grid_search(const saca_dataset* data, const int32_t* truth,
                                             const double* eps_grid, size_t eps_count,
                                             const int32_t* min_pts_grid, size_t min_pts_count,
                                             saca_grid_result* out);

/* ---- metrics ----------------------------------------------------------- */

typedef struct saca_evaluation {
  /* Each value is valid only when its has_* flag is set. */
  int has_silhouette;
  double silhouette;
  int has_calinski_harabasz;
  double calinski_harabasz;
  int has_davies_bouldin;
  double davies_bouldin;
  int has_external;
  double ari;
  double ami;
  double completeness;
  size_t dropped_points;
} saca_evaluation;

/* truth may be NULL. noise_as_cluster = 0 drops -1 labelled points first. */
SACA_API saca_status saca_evaluate(const saca_dataset* data, const int32_t* labels, size_t n,
                                   const int32_t* truth, int noise_as_cluster,
                                   saca_evaluation* out);

SACA_API saca_status saca_adjusted_rand_index(const int32_t* truth, const int32_t* predicted,
                                              size_t n, double* out);
SACA_API saca_status saca_adjusted_mutual_information(const int32_t* truth, const int32_t* predicted,
                                                      size_t n, double* out);
SACA_API saca_status saca_completeness(const int32_t* truth, const int32_t* predicted, size_t n,
                                       double* out);

/* ---- diagnostics ------------------------------------------------------- */

typedef struct saca_margin {
  int32_t first;
  int32_t second;
  double delta;
  int satisfied;  /* delta > neighbour radius of the given threshold */
} saca_margin;

/* Single-linkage margins between every pair of clusters in `labels`,
 * checked against the neighbour radius of `result`. */
SACA_API saca_status saca_intercluster_margins(const saca_dataset* data, const int32_t* labels,
                                               size_t n, const saca_result* result,
                                               saca_margin* out, size_t capacity, size_t* written);

/* ---- plotting ---------------------------------------------------------- */

/* SVG scatter plot. axis_x/axis_y < 0 selects the default view
 * (2-D as is, 3-D orthographic projection). */
SACA_API saca_status saca_render_scatter(const saca_dataset* data, const int32_t* labels, size_t n,
                                         int axis_x, int axis_y, const char* path);

#ifdef __cplusplus
}  /* extern "C" */
#endif

#endif  /* SACA_SACA_H */
