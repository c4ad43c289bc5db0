#pragma once

#include <optional>

#include <Eigen/Core>

#include "flatsphere/cutoff.hpp"
#include "flatsphere/points.hpp"

namespace flatsphere {

struct Spectrum {
  double min = 0.0;
  double max = 0.0;
};

/// Gram matrix of the normalized kernels b^eps_L(., z_j) at a node set.
struct Gramian {
  Eigen::MatrixXd entries;
  PointSet points;
  KernelSpec spec;
  std::optional<Spectrum> spectrum;  // set by certify()
};

/// Entries are the power-2 kernel at z_i.z_j divided by kernel_norm_sq, so
/// the diagonal is exactly 1.
Gramian build_gram(const PointSet& points, const KernelSpec& spec);

Spectrum extreme_eigenvalues(const Eigen::Ref<const Eigen::MatrixXd>& symmetric);
Spectrum extreme_eigenvalues(const Gramian& gram);

inline constexpr double kDefaultDefinitenessTolerance = 1e-8;

/// Stores the spectrum; throws ErrorCode::NotPositiveDefinite when
/// lambda_min <= tolerance * lambda_max.
const Spectrum& certify(Gramian& gram, double tolerance = kDefaultDefinitenessTolerance);

/// U diag(lambda^{-1/2}) U^T. `tolerance` is relative to lambda_max.
Eigen::MatrixXd inv_sqrt(const Eigen::Ref<const Eigen::MatrixXd>& symmetric,
                         double tolerance = kDefaultDefinitenessTolerance);
Eigen::MatrixXd inv_sqrt(const Gramian& gram, double tolerance = kDefaultDefinitenessTolerance);

/// max_i sum_j |a_ij|, the l-infinity operator norm.
double linf_row_norm(const Eigen::Ref<const Eigen::MatrixXd>& matrix);

/// |entry| ~ constant / (1 + L d)^exponent, fit in log-log space.
struct DecayFit {
  double exponent = 0.0;
  double constant = 0.0;
  double residual = 0.0;  // RMS of log residuals
  Eigen::Index samples = 0;
};

/// Least-squares fit of log|a_ij| against log(1 + L d(z_i, z_j)) over
/// off-diagonal entries with |a_ij| > 1e-14.
DecayFit offdiag_decay_fit(const Eigen::Ref<const Eigen::MatrixXd>& matrix, const PointSet& points, int L);

}  // namespace flatsphere
