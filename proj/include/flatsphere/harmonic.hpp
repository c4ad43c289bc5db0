#pragma once

#include <cstdint>
#include <vector>

#include <Eigen/Core>

namespace flatsphere {

/// The space E_L of spherical polynomials of degree <= L on S^m.
struct HarmonicSpace {
  int m = 2;
  int L = 0;

  std::uint64_t dimension() const;
};

/// Laplace-Beltrami eigenvalue l(l+m-1) of the degree-l harmonics on S^m.
double eigenvalue(int m, int l);

/// dim H_l on S^m. Throws ErrorCode::Overflow when the value does not fit.
std::uint64_t degree_dimension(int m, int l);

/// k_L = sum_{l<=L} dim H_l.
std::uint64_t space_dimension(int m, int L);

/// Surface area of the unit sphere S^m in R^{m+1}.
double sphere_area(int m);

/// Gegenbauer polynomial C_l^alpha(t) by forward recurrence. alpha == 0
/// returns the Chebyshev polynomial T_l(t).
double gegenbauer(double alpha, int l, double t);

/// Degree-l zonal kernel Z_l(t) = sum_j Y_{l,j}(z) Y_{l,j}(w) with t = z.w.
double zonal_kernel(int m, int l, double t);

/// Weighted sum sum_l c_l Z_l(t) of zonal kernels, evaluated in O(L) per
/// point via one Gegenbauer recurrence.
class ZonalKernelTable {
 public:
  ZonalKernelTable(int m, std::vector<double> coefficients);

  int m() const { return m_; }
  int max_degree() const { return static_cast<int>(coefficients_.size()) - 1; }
  const std::vector<double>& coefficients() const { return coefficients_; }
  double surface_area() const { return surface_area_; }

  /// Kernel value at inner product t, |t| <= 1.
  double operator()(double t) const;

  /// Value at t = 1: sum_l c_l dim(H_l) / omega_m.
  double diagonal() const;

 private:
  int m_;
  std::vector<double> coefficients_;
  double surface_area_;
  // c_l dim(H_l) / (omega_m C_l^alpha(1)), the coefficients against C_l^alpha.
  std::vector<double> gegenbauer_weights_;
};

/// Values of an L2-orthonormal real basis of H_l on S^2 at a unit vector,
/// ordered by order -l..l (negative orders carry sin, positive cos).
std::vector<double> real_basis_eval(int m, int l, const Eigen::Ref<const Eigen::VectorXd>& point);

/// All real basis functions of degree <= L on S^2 at `point`, laid out as
/// index l*l + l + order. Writes (L+1)^2 values into `out`.
void real_basis_upto(int L, const Eigen::Vector3d& point, double* out);

/// Checks |point| == 1 within 1e-12; throws ErrorCode::Domain otherwise.
void require_unit(const Eigen::Ref<const Eigen::VectorXd>& point);

}  // namespace flatsphere
