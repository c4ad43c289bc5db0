#include "flatsphere/flatsphere.h"

#include <cmath>
#include <cstring>
#include <fstream>
#include <iostream>
#include <limits>
#include <new>
#include <optional>
#include <string>

#include "flatsphere/error.hpp"
#include "flatsphere/flat_system.hpp"
#include "flatsphere/gramian.hpp"
#include "flatsphere/harmonic.hpp"
#include "flatsphere/io.hpp"
#include "flatsphere/pipeline.hpp"
#include "flatsphere/points.hpp"

struct fs_points {
  flatsphere::PointSet points;
  double epsilon;
  std::optional<int> L;
};

struct fs_system {
  flatsphere::FlatSystem system;
};

namespace {

using namespace flatsphere;

thread_local std::string last_error;

fs_status status_of(ErrorCode code) {
  switch (code) {
    case ErrorCode::Domain: return FS_ERR_DOMAIN;
    case ErrorCode::UnsupportedDimension: return FS_ERR_UNSUPPORTED_DIMENSION;
    case ErrorCode::Overflow: return FS_ERR_OVERFLOW;
    case ErrorCode::RankDeficient: return FS_ERR_RANK_DEFICIENT;
    case ErrorCode::NotPositiveDefinite: return FS_ERR_NOT_POSITIVE_DEFINITE;
    case ErrorCode::VerificationFailed: return FS_ERR_VERIFICATION;
    case ErrorCode::DimensionMismatch: return FS_ERR_DIMENSION_MISMATCH;
    case ErrorCode::InsufficientData: return FS_ERR_INSUFFICIENT_DATA;
    case ErrorCode::ResourceLimit: return FS_ERR_RESOURCE;
    case ErrorCode::Config: return FS_ERR_CONFIG;
    case ErrorCode::Io: return FS_ERR_IO;
    case ErrorCode::Format: return FS_ERR_FORMAT;
    case ErrorCode::IndexOutOfRange: return FS_ERR_INDEX;
    case ErrorCode::Eigensolver: return FS_ERR_EIGENSOLVER;
  }
  return FS_ERR_INTERNAL;
}

template <class Body>
fs_status guarded(Body&& body) noexcept {
  try {
    last_error.clear();
    body();
    return FS_OK;
  } catch (const Error& e) {
    last_error = e.what();
    return status_of(e.code());
  } catch (const std::bad_alloc&) {
    last_error = "out of memory";
    return FS_ERR_RESOURCE;
  } catch (const std::exception& e) {
    last_error = e.what();
    return FS_ERR_INTERNAL;
  } catch (...) {
    last_error = "unknown error";
    return FS_ERR_INTERNAL;
  }
}

RunConfig to_run_config(const fs_config& c) {
  RunConfig r;
  r.m = c.m;
  r.L = c.L;
  if (c.epsilon >= 0.0) r.epsilon = c.epsilon;
  if (c.fraction >= 0.0) r.fraction = c.fraction;
  r.mesh_resolution = c.mesh_resolution;
  r.probe_resolution = c.probe_resolution;
  r.seed = c.seed;
  r.tolerance = c.tolerance;
  return r;
}

char* duplicate(const std::string& text) {
  char* out = static_cast<char*>(std::malloc(text.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, text.c_str(), text.size() + 1);
  return out;
}

bool ends_with(const std::string& text, const std::string& suffix) {
  return text.size() >= suffix.size() && text.compare(text.size() - suffix.size(), suffix.size(), suffix) == 0;
}

}  // namespace

extern "C" {

const char* fs_version(void) { return "0.1.0"; }

const char* fs_last_error(void) { return last_error.c_str(); }

const char* fs_status_name(fs_status status) {
  switch (status) {
    case FS_OK: return "ok";
    case FS_ERR_DOMAIN: return "domain";
    case FS_ERR_UNSUPPORTED_DIMENSION: return "unsupported-dimension";
    case FS_ERR_OVERFLOW: return "overflow";
    case FS_ERR_RANK_DEFICIENT: return "rank-deficient";
    case FS_ERR_NOT_POSITIVE_DEFINITE: return "not-positive-definite";
    case FS_ERR_VERIFICATION: return "verification-failed";
    case FS_ERR_DIMENSION_MISMATCH: return "dimension-mismatch";
    case FS_ERR_INSUFFICIENT_DATA: return "insufficient-data";
    case FS_ERR_RESOURCE: return "resource-limit";
    case FS_ERR_CONFIG: return "config";
    case FS_ERR_IO: return "io";
    case FS_ERR_FORMAT: return "format";
    case FS_ERR_INDEX: return "index-out-of-range";
    case FS_ERR_EIGENSOLVER: return "eigensolver";
    case FS_ERR_NULL_ARGUMENT: return "null-argument";
    case FS_ERR_INTERNAL: return "internal";
  }
  return "unknown";
}

void fs_string_free(char* text) { std::free(text); }

void fs_config_init(fs_config* config) {
  if (!config) return;
  config->m = 2;
  config->L = 20;
  config->epsilon = -1.0;
  config->fraction = -1.0;
  config->mesh_resolution = 0.0;
  config->probe_resolution = 0.0;
  config->seed = 1;
  config->tolerance = kDefaultBuildTolerance;
}

fs_status fs_config_epsilon(const fs_config* config, double* epsilon) {
  if (!config || !epsilon) return FS_ERR_NULL_ARGUMENT;
  return guarded([&] { *epsilon = to_run_config(*config).resolved_epsilon(); });
}

fs_status fs_space_dimension(int m, int L, uint64_t* out) {
  if (!out) return FS_ERR_NULL_ARGUMENT;
  return guarded([&] { *out = space_dimension(m, L); });
}

fs_status fs_shrink_degree(int L, double epsilon, int* out) {
  if (!out) return FS_ERR_NULL_ARGUMENT;
  return guarded([&] { *out = shrink_degree(L, epsilon); });
}

fs_status fs_normalized_kernel(int m, int L, double epsilon, const double* z, const double* w, double* out) {
  if (!z || !w || !out) return FS_ERR_NULL_ARGUMENT;
  return guarded([&] {
    if (m < 2) fail(ErrorCode::Domain, "sphere dimension must be >= 2");
    const Eigen::Map<const Eigen::VectorXd> zv(z, m + 1), wv(w, m + 1);
    *out = normalized_kernel(KernelSpec{m, L, epsilon, 1}, zv, wv);
  });
}

fs_status fs_points_generate(const fs_config* config, fs_points** out) {
  if (!config || !out) return FS_ERR_NULL_ARGUMENT;
  *out = nullptr;
  return guarded([&] {
    PointsRun run = generate_points(to_run_config(*config));
    *out = new fs_points{std::move(run.points), run.epsilon, run.L};
  });
}

fs_status fs_points_create(int m, int degree, double epsilon, int L, const double* coords, size_t count,
                           fs_points** out) {
  if (!out || (count > 0 && !coords)) return FS_ERR_NULL_ARGUMENT;
  *out = nullptr;
  return guarded([&] {
    if (m < 2) fail(ErrorCode::Domain, "sphere dimension must be >= 2");
    const Eigen::Map<const Eigen::MatrixXd> map(coords, m + 1, static_cast<Eigen::Index>(count));
    std::optional<int> target;
    if (L >= 0) target = L;
    *out = new fs_points{PointSet(m, degree, Eigen::MatrixXd(map)), epsilon, target};
  });
}

fs_status fs_mesh_generate(int m, double resolution, fs_points** out) {
  if (!out) return FS_ERR_NULL_ARGUMENT;
  *out = nullptr;
  return guarded([&] {
    CandidateMesh mesh = candidate_mesh(m, resolution);
    *out = new fs_points{PointSet(m, 0, std::move(mesh.points)), 0.0, std::nullopt};
  });
}

fs_status fs_points_load(const char* path, fs_points** out) {
  if (!path || !out) return FS_ERR_NULL_ARGUMENT;
  *out = nullptr;
  return guarded([&] {
    PointsDocument doc = points_from_json(read_file(path));
    *out = new fs_points{std::move(doc.points), doc.epsilon, doc.L};
  });
}

fs_status fs_points_save(const fs_points* points, const char* path) {
  if (!points || !path) return FS_ERR_NULL_ARGUMENT;
  return guarded([&] { write_file(path, points_to_json(points->points, points->epsilon, points->L)); });
}

fs_status fs_points_get_info(const fs_points* points, fs_points_info* info) {
  if (!points || !info) return FS_ERR_NULL_ARGUMENT;
  return guarded([&] {
    const PointSet& p = points->points;
    info->n = static_cast<size_t>(p.size());
    info->degree = p.degree();
    info->L = points->L.value_or(-1);
    info->epsilon = points->epsilon;
    info->k_L = points->L ? space_dimension(p.m(), *points->L) : 0;
    info->ratio = info->k_L ? static_cast<double>(info->n) / static_cast<double>(info->k_L)
                            : std::numeric_limits<double>::quiet_NaN();
    if (p.size() >= 2 && p.size() <= kSeparationCacheLimit) {
      const SeparationInfo sep = separation(p);
      info->separation = sep.separation;
      info->separation_scaled = sep.scaled;
    } else {
      info->separation = info->separation_scaled = std::numeric_limits<double>::quiet_NaN();
    }
  });
}

fs_status fs_points_coords(const fs_points* points, double* coords, size_t capacity) {
  if (!points || (!coords && capacity > 0)) return FS_ERR_NULL_ARGUMENT;
  return guarded([&] {
    const Eigen::MatrixXd& c = points->points.coords();
    if (capacity < static_cast<size_t>(c.size())) fail(ErrorCode::DimensionMismatch, "coordinate buffer too small");
    std::copy(c.data(), c.data() + c.size(), coords);
  });
}

void fs_points_free(fs_points* points) { delete points; }

fs_status fs_system_build(const fs_points* points, const fs_config* config, fs_system** out, fs_build_info* info) {
  if (!points || !config || !out) return FS_ERR_NULL_ARGUMENT;
  *out = nullptr;
  return guarded([&] {
    const RunConfig run = to_run_config(*config);
    double eps = points->epsilon;
    if (run.epsilon || run.fraction || !(eps > 0.0)) eps = run.resolved_epsilon();
    const KernelSpec spec{points->points.m(), run.L, eps, 1};
    SystemBuild build = build_system_detailed(points->points, spec, run.tolerance);
    if (info) {
      const Spectrum s = extreme_eigenvalues(build.gram);
      info->n = static_cast<size_t>(build.system.size());
      info->lambda_min = s.min;
      info->lambda_max = s.max;
      info->linf_inv_sqrt = linf_row_norm(build.inv_sqrt);
      info->residual = build.residual;
    }
    *out = new fs_system{std::move(build.system)};
  });
}

fs_status fs_system_load(const char* path, fs_system** out) {
  if (!path || !out) return FS_ERR_NULL_ARGUMENT;
  *out = nullptr;
  return guarded([&] { *out = new fs_system{system_from_json(read_file(path))}; });
}

fs_status fs_system_save(const fs_system* system, const char* path) {
  if (!system || !path) return FS_ERR_NULL_ARGUMENT;
  return guarded([&] { write_file(path, system_to_json(system->system)); });
}

size_t fs_system_size(const fs_system* system) {
  return system ? static_cast<size_t>(system->system.size()) : 0;
}

fs_status fs_system_evaluate(const fs_system* system, size_t index, const double* z, double* re, double* im) {
  if (!system || !z || !re || !im) return FS_ERR_NULL_ARGUMENT;
  return guarded([&] {
    const int dim = system->system.spec().m + 1;
    const std::complex<double> v =
        evaluate(system->system, static_cast<Eigen::Index>(index), Eigen::Map<const Eigen::VectorXd>(z, dim));
    *re = v.real();
    *im = v.imag();
  });
}

fs_status fs_system_sup_norm(const fs_system* system, size_t index, double probe_resolution, double* out) {
  if (!system || !out) return FS_ERR_NULL_ARGUMENT;
  return guarded([&] {
    const double res = probe_resolution > 0.0 ? probe_resolution : max_probe_resolution(system->system.spec().L);
    *out = sup_norm(system->system, static_cast<Eigen::Index>(index), res);
  });
}

fs_status fs_system_eval_csv(const fs_system* system, const double* coords, size_t count, const char* path) {
  if (!system || (count > 0 && !coords)) return FS_ERR_NULL_ARGUMENT;
  return guarded([&] {
    const Eigen::Map<const Eigen::MatrixXd> points(coords, 3, static_cast<Eigen::Index>(count));
    if (path) {
      std::ofstream out(path, std::ios::binary | std::ios::trunc);
      if (!out) fail(ErrorCode::Io, std::string("cannot open ") + path + " for writing");
      write_eval_csv(out, system->system, points);
      if (!out) fail(ErrorCode::Io, std::string("error while writing ") + path);
    } else {
      write_eval_csv(std::cout, system->system, points);
      std::cout.flush();
    }
  });
}

fs_status fs_system_export_matrices(const fs_system* system, const char* gram_path, const char* inv_sqrt_path) {
  if (!system) return FS_ERR_NULL_ARGUMENT;
  return guarded([&] {
    const FlatSystem& s = system->system;
    const Gramian gram = build_gram(s.points(), s.spec());
    auto write = [](const std::string& path, const Eigen::MatrixXd& m, const char* name) {
      write_file(path, ends_with(path, ".csv") ? matrix_to_csv(m) : matrix_to_json(m, name));
    };
    if (gram_path) write(gram_path, gram.entries, "gram");
    if (inv_sqrt_path) write(inv_sqrt_path, inv_sqrt(gram), "gram_inv_sqrt");
  });
}

void fs_system_free(fs_system* system) { delete system; }

fs_status fs_verify(const fs_system* system, const fs_config* config, const char* report_path, int* passed,
                    char** summary) {
  if (!system || !config || !passed) return FS_ERR_NULL_ARGUMENT;
  if (summary) *summary = nullptr;
  return guarded([&] {
    const VerificationReport report = verify_system(system->system, to_run_config(*config));
    if (report_path) write_file(report_path, report.to_json());
    *passed = report.passed() ? 1 : 0;
    if (summary) *summary = duplicate(report.summary());
  });
}

fs_status fs_table(const fs_config* config, const int* degrees, size_t degree_count, const double* epsilons,
                   size_t epsilon_count, const char* csv_path, int* failed_cells) {
  if (!config || !degrees || !epsilons) return FS_ERR_NULL_ARGUMENT;
  return guarded([&] {
    const std::vector<int> ls(degrees, degrees + degree_count);
    const std::vector<double> es(epsilons, epsilons + epsilon_count);
    int failures = 0;
    if (csv_path) {
      std::ofstream out(csv_path, std::ios::binary | std::ios::trunc);
      if (!out) fail(ErrorCode::Io, std::string("cannot open ") + csv_path + " for writing");
      failures = run_table(to_run_config(*config), ls, es, out);
    } else {
      failures = run_table(to_run_config(*config), ls, es, std::cout);
    }
    if (failed_cells) *failed_cells = failures;
  });
}

}  // extern "C"
