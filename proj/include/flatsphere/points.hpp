#pragma once

#include <cstdint>
#include <optional>

#include <Eigen/Core>

namespace flatsphere {

inline constexpr Eigen::Index kSeparationCacheLimit = 20'000;

/// Unit vectors on S^m stored column-wise, (m+1) x count.
class PointSet {
 public:
  PointSet() = default;
  /// Throws ErrorCode::Domain if any column is not a unit vector.
  PointSet(int m, int degree, Eigen::MatrixXd coords);

  int m() const { return m_; }
  int degree() const { return degree_; }
  Eigen::Index size() const { return coords_.cols(); }
  const Eigen::MatrixXd& coords() const { return coords_; }
  auto point(Eigen::Index j) const { return coords_.col(j); }

  /// Minimum pairwise geodesic distance; ErrorCode::InsufficientData for
  /// fewer than two points. Cached at construction for sets up to
  /// kSeparationCacheLimit points, recomputed per call above that.
  double separation() const;

 private:
  int m_ = 2;
  int degree_ = 0;
  Eigen::MatrixXd coords_;
  std::optional<double> separation_;
};

struct CandidateMesh {
  Eigen::MatrixXd points;  // 3 x count
  double resolution = 0.0;
  std::optional<std::uint64_t> seed;

  Eigen::Index size() const { return points.cols(); }
};

inline constexpr Eigen::Index kMaxMeshPoints = 4'000'000;

double geodesic_distance(const Eigen::Ref<const Eigen::VectorXd>& u,
                         const Eigen::Ref<const Eigen::VectorXd>& v);

/// Spherical Fibonacci lattice with ceil(8 / resolution^2) points (at least
/// 4). A seed applies a pseudo-random rotation to the whole lattice.
CandidateMesh candidate_mesh(int m, double resolution, std::optional<std::uint64_t> seed = std::nullopt);

/// Estimate of the mesh norm (covering radius) of `mesh` from `probes`
/// uniformly random probe points.
double mesh_norm_estimate(const CandidateMesh& mesh, int probes, std::uint64_t seed);

/// Greedy determinant maximisation: Householder QR with column pivoting on
/// the k x |mesh| matrix of basis values, k = (degree+1)^2. Pivots take the
/// largest residual column norm, lowest mesh index on exact ties.
PointSet approximate_fekete(int m, int degree, const CandidateMesh& mesh);

/// Default candidate resolution for Fekete selection at `degree`.
double default_mesh_resolution(int degree);

/// floor((1 - 2 eps) L); ErrorCode::Config unless 0 < eps < 1/2 and L >= 1.
int shrink_degree(int L, double epsilon);

/// eps with (1 - 2 eps)^m = fraction.
double target_fraction_to_epsilon(int m, double fraction);

struct SeparationInfo {
  double separation;
  double scaled;  // separation * (degree + 1)
};

SeparationInfo separation(const PointSet& points);

/// k x count matrix of real basis values of degree <= `degree` at S^2 points.
Eigen::MatrixXd basis_matrix(int degree, const Eigen::Ref<const Eigen::MatrixXd>& points);

/// Uniform random unit vectors on S^2 (3 x count), reproducible from seed.
Eigen::MatrixXd random_sphere_points(Eigen::Index count, std::uint64_t seed);

}  // namespace flatsphere
