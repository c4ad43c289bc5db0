/* C interface to the flatsphere library.
 *
 * Objects are opaque handles created by fs_*_generate / fs_*_build /
 * fs_*_load and released with the matching fs_*_free. Every fallible call
 * returns an fs_status; on failure fs_last_error() describes the problem
 * (thread-local, valid until the next call on the same thread). Indices are
 * zero-based. Coordinates are passed as packed xyz triples.
 */
#ifndef FLATSPHERE_H
#define FLATSPHERE_H

#include <stddef.h>
#include <stdint.h>

#if defined(FLATSPHERE_BUILDING_LIBRARY)
#define FS_API __attribute__((visibility("default")))
#else
#define FS_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum fs_status {
  FS_OK = 0,
  FS_ERR_DOMAIN = 1,
  FS_ERR_UNSUPPORTED_DIMENSION = 2,
  FS_ERR_OVERFLOW = 3,
  FS_ERR_RANK_DEFICIENT = 4,
  FS_ERR_NOT_POSITIVE_DEFINITE = 5, /* Gramian singular: nodes fail the Riesz property */
  FS_ERR_VERIFICATION = 6,
  FS_ERR_DIMENSION_MISMATCH = 7,
  FS_ERR_INSUFFICIENT_DATA = 8,
  FS_ERR_RESOURCE = 9,
  FS_ERR_CONFIG = 10,
  FS_ERR_IO = 11,
  FS_ERR_FORMAT = 12,
  FS_ERR_INDEX = 13,
  FS_ERR_EIGENSOLVER = 14,
  FS_ERR_NULL_ARGUMENT = 15,
  FS_ERR_INTERNAL = 16
} fs_status;

typedef struct fs_points fs_points;
typedef struct fs_system fs_system;

/* Run parameters. Call fs_config_init before filling fields. Negative
 * epsilon / fraction mean "not given"; zero resolutions pick defaults. */
typedef struct fs_config {
  int m;
  int L;
  double epsilon;
  double fraction;
  double mesh_resolution;
  double probe_resolution;
  uint64_t seed;
  double tolerance;
} fs_config;

typedef struct fs_points_info {
  size_t n;
  int degree;
  int L;            /* -1 when unknown */
  double epsilon;
  uint64_t k_L;     /* 0 when L is unknown */
  double ratio;     /* n / k_L */
  double separation;        /* NaN for fewer than two points */
  double separation_scaled; /* separation * (degree + 1) */
} fs_points_info;

typedef struct fs_build_info {
  size_t n;
  double lambda_min;
  double lambda_max;
  double linf_inv_sqrt;
  double residual; /* ||A Delta A^* - I||_max */
} fs_build_info;

FS_API const char* fs_version(void);
FS_API const char* fs_last_error(void);
FS_API const char* fs_status_name(fs_status status);
FS_API void fs_string_free(char* text);

FS_API void fs_config_init(fs_config* config);
FS_API fs_status fs_config_epsilon(const fs_config* config, double* epsilon);

/* Harmonic and kernel primitives. */
FS_API fs_status fs_space_dimension(int m, int L, uint64_t* out);
FS_API fs_status fs_shrink_degree(int L, double epsilon, int* out);
FS_API fs_status fs_normalized_kernel(int m, int L, double epsilon, const double* z, const double* w, double* out);

/* Node sets. */
FS_API fs_status fs_points_generate(const fs_config* config, fs_points** out);
FS_API fs_status fs_points_create(int m, int degree, double epsilon, int L, const double* coords, size_t count,
                                  fs_points** out);
/* Deterministic spherical Fibonacci mesh (degree tag 0) of the given resolution. */
FS_API fs_status fs_mesh_generate(int m, double resolution, fs_points** out);
FS_API fs_status fs_points_load(const char* path, fs_points** out);
FS_API fs_status fs_points_save(const fs_points* points, const char* path);
FS_API fs_status fs_points_get_info(const fs_points* points, fs_points_info* info);
FS_API fs_status fs_points_coords(const fs_points* points, double* coords, size_t capacity);
FS_API void fs_points_free(fs_points* points);

/* Flat orthonormal systems. */
FS_API fs_status fs_system_build(const fs_points* points, const fs_config* config, fs_system** out,
                                 fs_build_info* info);
FS_API fs_status fs_system_load(const char* path, fs_system** out);
FS_API fs_status fs_system_save(const fs_system* system, const char* path);
FS_API size_t fs_system_size(const fs_system* system);
FS_API fs_status fs_system_evaluate(const fs_system* system, size_t index, const double* z, double* re, double* im);
FS_API fs_status fs_system_sup_norm(const fs_system* system, size_t index, double probe_resolution, double* out);
FS_API fs_status fs_system_eval_csv(const fs_system* system, const double* coords, size_t count, const char* path);
FS_API fs_status fs_system_export_matrices(const fs_system* system, const char* gram_path, const char* inv_sqrt_path);
FS_API void fs_system_free(fs_system* system);

/* Runs all checks and writes the JSON report to report_path (may be NULL).
 * *passed receives the overall status; *summary (may be NULL) receives a
 * human-readable text to be released with fs_string_free. */
FS_API fs_status fs_verify(const fs_system* system, const fs_config* config, const char* report_path, int* passed,
                           char** summary);

/* Sweep table as CSV. *failed_cells receives the number of error rows. */
FS_API fs_status fs_table(const fs_config* config, const int* degrees, size_t degree_count, const double* epsilons,
                          size_t epsilon_count, const char* csv_path, int* failed_cells);

#ifdef __cplusplus
}
#endif

#endif /* FLATSPHERE_H */
