#pragma once

#include <complex>
#include <vector>

#include <Eigen/Core>

#include "flatsphere/cutoff.hpp"
#include "flatsphere/gramian.hpp"
#include "flatsphere/points.hpp"

namespace flatsphere {

/// Orthonormal functions s_i(z) = sum_j A_ij b^eps_L(z, z_j) with
/// A = n^{-1/2} F Delta^{-1/2}, F_ij = zeta^{(i+1)(j+1)}, zeta = exp(2 pi i / n).
class FlatSystem {
 public:
  /// Wraps existing coefficients without verifying them.
  FlatSystem(PointSet points, const KernelSpec& spec, Eigen::MatrixXcd coefficients);

  const PointSet& points() const { return points_; }
  const KernelSpec& spec() const { return kernel_.spec(); }
  const BochnerRieszKernel& kernel() const { return kernel_; }
  const Eigen::MatrixXcd& coefficients() const { return coefficients_; }
  double norm_sq() const { return kernel_.norm_sq(); }
  Eigen::Index size() const { return points_.size(); }

  /// b^eps_L(z, z_j) for every node j, ascending.
  void kernel_row(const Eigen::Ref<const Eigen::VectorXd>& z, double* out) const;

  const Eigen::MatrixXd& coefficients_re() const { return re_; }
  const Eigen::MatrixXd& coefficients_im() const { return im_; }

 private:
  PointSet points_;
  BochnerRieszKernel kernel_;
  Eigen::MatrixXcd coefficients_;
  Eigen::MatrixXd re_;
  Eigen::MatrixXd im_;
};

/// n x n unitary-up-to-scale mixing matrix F_ij = zeta^{(i+1)(j+1)}.
Eigen::MatrixXcd dft_matrix(Eigen::Index n);

struct SystemBuild {
  FlatSystem system;
  Gramian gram;
  Eigen::MatrixXd inv_sqrt;
  double residual;  // ||A Delta A^* - I||_max
};

inline constexpr double kDefaultBuildTolerance = 1e-8;

/// Builds the system and checks A Delta A^* = I within `tolerance`
/// (ErrorCode::VerificationFailed otherwise). A singular Gramian raises
/// ErrorCode::NotPositiveDefinite.
SystemBuild build_system_detailed(const PointSet& points, const KernelSpec& spec,
                                  double tolerance = kDefaultBuildTolerance);
FlatSystem build_system(const PointSet& points, const KernelSpec& spec, double tolerance = kDefaultBuildTolerance);

/// ||A Delta A^* - I||_max.
double orthonormality_residual(const Eigen::MatrixXcd& coefficients, const Eigen::MatrixXd& gram);

/// s_i(z), summed over nodes in ascending order.
std::complex<double> evaluate(const FlatSystem& system, Eigen::Index i, const Eigen::Ref<const Eigen::VectorXd>& z);

inline constexpr Eigen::Index kMaxBatchEntries = 20'000'000;

/// Column q holds s_i at point q for all i; entries agree bit-for-bit with
/// evaluate().
Eigen::MatrixXcd evaluate_batch(const FlatSystem& system, const Eigen::Ref<const Eigen::MatrixXd>& points);

/// max over the probe mesh of |s_i| for every i (lower bounds for the sup
/// norms). Requires probe_resolution <= 1/(4L).
std::vector<double> sup_norms(const FlatSystem& system, double probe_resolution);
double sup_norm(const FlatSystem& system, Eigen::Index i, double probe_resolution);

/// max over the probe mesh of sum_j |b^eps_L(z, z_j)|.
double linf_to_Linf_bound(const FlatSystem& system, double probe_resolution);

/// Largest probe resolution accepted for degree L.
double max_probe_resolution(int L);

}  // namespace flatsphere
