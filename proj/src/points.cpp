#include "flatsphere/points.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>
#include <vector>

#include <Eigen/Geometry>

#include "flatsphere/error.hpp"
#include "flatsphere/harmonic.hpp"
#include "random.hpp"

namespace flatsphere {

namespace {

Eigen::Vector3d random_unit(detail::Rng& gen) {
  const double z = 2.0 * gen.uniform() - 1.0;
  const double phi = 2.0 * std::numbers::pi * gen.uniform();
  const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
  return {r * std::cos(phi), r * std::sin(phi), z};
}

void require_sphere2(int m) {
  if (m != 2) fail(ErrorCode::UnsupportedDimension, "point generation is only available on S^2");
}

double min_pair_distance(const Eigen::MatrixXd& coords) {
  double best_chord_sq = std::numeric_limits<double>::infinity();
  Eigen::Index bi = 0, bj = 1;
  for (Eigen::Index i = 0; i < coords.cols(); ++i) {
    for (Eigen::Index j = i + 1; j < coords.cols(); ++j) {
      const double chord_sq = (coords.col(i) - coords.col(j)).squaredNorm();
      if (chord_sq < best_chord_sq) {
        best_chord_sq = chord_sq;
        bi = i;
        bj = j;
      }
    }
  }
  return geodesic_distance(coords.col(bi), coords.col(bj));
}

}  // namespace

PointSet::PointSet(int m, int degree, Eigen::MatrixXd coords)
    : m_(m), degree_(degree), coords_(std::move(coords)) {
  if (m_ < 2) fail(ErrorCode::Domain, "sphere dimension must be >= 2");
  if (degree_ < 0) fail(ErrorCode::Domain, "point set degree must be >= 0");
  if (coords_.rows() != m_ + 1 && coords_.cols() > 0) {
    fail(ErrorCode::DimensionMismatch, "points on S^" + std::to_string(m_) + " need " +
                                           std::to_string(m_ + 1) + " coordinates");
  }
  if (coords_.cols() == 0) coords_.resize(m_ + 1, 0);
  for (Eigen::Index j = 0; j < coords_.cols(); ++j) require_unit(coords_.col(j));
  if (size() >= 2 && size() <= kSeparationCacheLimit) separation_ = min_pair_distance(coords_);
}

double PointSet::separation() const {
  if (size() < 2) fail(ErrorCode::InsufficientData, "separation needs at least two points");
  return separation_ ? *separation_ : min_pair_distance(coords_);
}

double geodesic_distance(const Eigen::Ref<const Eigen::VectorXd>& u,
                         const Eigen::Ref<const Eigen::VectorXd>& v) {
  if (u.size() != v.size()) fail(ErrorCode::DimensionMismatch, "points of different dimension");
  require_unit(u);
  require_unit(v);
  // Equals acos(clamp(u.v)) but keeps full accuracy near 0 and pi.
  return 2.0 * std::atan2((u - v).norm(), (u + v).norm());
}

CandidateMesh candidate_mesh(int m, double resolution, std::optional<std::uint64_t> seed) {
  require_sphere2(m);
  if (!(resolution > 0.0)) fail(ErrorCode::Domain, "mesh resolution must be positive");
  const double wanted = std::ceil(8.0 / (resolution * resolution));
  if (!(wanted <= static_cast<double>(kMaxMeshPoints))) {
    fail(ErrorCode::ResourceLimit, "mesh resolution " + std::to_string(resolution) + " needs more than " +
                                       std::to_string(kMaxMeshPoints) + " points");
  }
  const Eigen::Index count = std::max<Eigen::Index>(4, static_cast<Eigen::Index>(wanted));

  Eigen::Matrix3d rotation = Eigen::Matrix3d::Identity();
  if (seed) {
    detail::Rng gen(*seed);
    Eigen::Quaterniond q(gen.normal(), gen.normal(), gen.normal(), gen.normal());
    q.normalize();
    rotation = q.toRotationMatrix();
  }

  CandidateMesh mesh;
  mesh.resolution = resolution;
  mesh.seed = seed;
  mesh.points.resize(3, count);
  const double golden_angle = std::numbers::pi * (3.0 - std::sqrt(5.0));
  for (Eigen::Index i = 0; i < count; ++i) {
    const double z = 1.0 - (2.0 * static_cast<double>(i) + 1.0) / static_cast<double>(count);
    const double r = std::sqrt(std::max(0.0, (1.0 - z) * (1.0 + z)));
    const double phi = golden_angle * static_cast<double>(i);
    Eigen::Vector3d p(r * std::cos(phi), r * std::sin(phi), z);
    p = rotation * p;
    mesh.points.col(i) = p / p.norm();
  }
  return mesh;
}

double mesh_norm_estimate(const CandidateMesh& mesh, int probes, std::uint64_t seed) {
  detail::Rng gen(seed);
  double worst = 0.0;
  for (int p = 0; p < probes; ++p) {
    const Eigen::Vector3d probe = random_unit(gen);
    const double best_dot = (mesh.points.transpose() * probe).maxCoeff();
    worst = std::max(worst, std::acos(std::clamp(best_dot, -1.0, 1.0)));
  }
  return worst;
}

Eigen::MatrixXd random_sphere_points(Eigen::Index count, std::uint64_t seed) {
  detail::Rng gen(seed);
  Eigen::MatrixXd out(3, count);
  for (Eigen::Index j = 0; j < count; ++j) out.col(j) = random_unit(gen);
  return out;
}

Eigen::MatrixXd basis_matrix(int degree, const Eigen::Ref<const Eigen::MatrixXd>& points) {
  const Eigen::Index k = static_cast<Eigen::Index>(degree + 1) * (degree + 1);
  Eigen::MatrixXd values(k, points.cols());
  for (Eigen::Index j = 0; j < points.cols(); ++j) {
    real_basis_upto(degree, Eigen::Vector3d(points.col(j)), values.col(j).data());
  }
  return values;
}

double default_mesh_resolution(int degree) {
  return degree <= 0 ? 1.0 : 1.0 / (4.0 * degree);
}

PointSet approximate_fekete(int m, int degree, const CandidateMesh& mesh) {
  require_sphere2(m);
  if (degree < 0) fail(ErrorCode::Domain, "Fekete degree must be >= 0");
  const Eigen::Index k = static_cast<Eigen::Index>(space_dimension(m, degree));
  const Eigen::Index count = mesh.size();
  if (count < k) {
    fail(ErrorCode::RankDeficient, "mesh has " + std::to_string(count) + " candidates, need at least " +
                                       std::to_string(k));
  }

  Eigen::MatrixXd work = basis_matrix(degree, mesh.points);
  std::vector<Eigen::Index> order(count);
  for (Eigen::Index j = 0; j < count; ++j) order[j] = j;
  Eigen::VectorXd residual = work.colwise().squaredNorm().transpose();
  const double scale = residual.maxCoeff();
  Eigen::VectorXd reflector(k);

  for (Eigen::Index step = 0; step < k; ++step) {
    Eigen::Index pivot = step;
    for (Eigen::Index j = step + 1; j < count; ++j) {
      if (residual[j] > residual[pivot] || (residual[j] == residual[pivot] && order[j] < order[pivot])) {
        pivot = j;
      }
    }
    if (!(residual[pivot] > 1e-24 * scale)) {
      fail(ErrorCode::RankDeficient, "candidate mesh spans only " + std::to_string(step) + " of " +
                                         std::to_string(k) + " basis directions; refine the mesh");
    }
    if (pivot != step) {
      work.col(step).swap(work.col(pivot));
      std::swap(order[step], order[pivot]);
      std::swap(residual[step], residual[pivot]);
    }

    const Eigen::Index rows = k - step;
    auto head = work.col(step).segment(step, rows);
    const double alpha = head.norm();
    const double sign = head[0] >= 0.0 ? 1.0 : -1.0;
    auto v = reflector.head(rows);
    v = head;
    v[0] += sign * alpha;
    const double vnorm_sq = v.squaredNorm();
    head.setZero();
    head[0] = -sign * alpha;

    for (Eigen::Index j = step + 1; j < count; ++j) {
      double* col = work.col(j).data() + step;
      double dot = 0.0;
      for (Eigen::Index r = 0; r < rows; ++r) dot += v[r] * col[r];
      const double f = 2.0 * dot / vnorm_sq;
      double tail = 0.0;
      col[0] -= f * v[0];
      for (Eigen::Index r = 1; r < rows; ++r) {
        col[r] -= f * v[r];
        tail += col[r] * col[r];
      }
      residual[j] = tail;
    }
  }

  Eigen::MatrixXd selected(3, k);
  for (Eigen::Index j = 0; j < k; ++j) selected.col(j) = mesh.points.col(order[j]);
  return PointSet(m, degree, std::move(selected));
}

int shrink_degree(int L, double epsilon) {
  if (!(epsilon > 0.0 && epsilon < 0.5)) {
    fail(ErrorCode::Config, "epsilon must lie in (0, 1/2), got " + std::to_string(epsilon));
  }
  if (L < 1) fail(ErrorCode::Config, "target degree L must be >= 1");
  const double raw = (1.0 - 2.0 * epsilon) * L;
  // Absorb representation error so e.g. (1 - 2*0.2)*20 lands on 12.
  const int degree = static_cast<int>(std::floor(raw + 1e-9 * std::max(1.0, raw)));
  if (degree < 0) fail(ErrorCode::Config, "shrunk degree is negative");
  return degree;
}

double target_fraction_to_epsilon(int m, double fraction) {
  if (m < 2) fail(ErrorCode::Domain, "sphere dimension must be >= 2");
  if (!(fraction > 0.0 && fraction < 1.0)) fail(ErrorCode::Config, "target fraction must lie in (0,1)");
  return 0.5 * (1.0 - std::pow(fraction, 1.0 / m));
}

SeparationInfo separation(const PointSet& points) {
  const double sep = points.separation();
  return {sep, sep * (points.degree() + 1)};
}

}  // namespace flatsphere
