#include "flatsphere/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <numbers>
#include <string>
#include <vector>

#include <gsl/gsl_integration.h>

#include "flatsphere/cutoff.hpp"
#include "flatsphere/error.hpp"
#include "random.hpp"

namespace flatsphere {

namespace {

void require_sphere2(int m) {
  if (m != 2) fail(ErrorCode::UnsupportedDimension, "diagnostic oracles are only available on S^2");
}

}  // namespace

QuadratureRule gauss_sphere_rule(int m, int L) {
  require_sphere2(m);
  if (L < 0) fail(ErrorCode::Domain, "quadrature degree must be >= 0");
  const int exactness = 2 * L + 2;
  const int polar = (exactness + 2) / 2;  // ceil((D+1)/2)
  const int azimuthal = 2 * polar + 1;

  std::unique_ptr<gsl_integration_glfixed_table, decltype(&gsl_integration_glfixed_table_free)> table(
      gsl_integration_glfixed_table_alloc(static_cast<std::size_t>(polar)), &gsl_integration_glfixed_table_free);
  if (!table) fail(ErrorCode::ResourceLimit, "could not allocate Gauss-Legendre table");

  QuadratureRule rule;
  rule.exactness_degree = exactness;
  rule.nodes.resize(3, static_cast<Eigen::Index>(polar) * azimuthal);
  rule.weights.resize(rule.nodes.cols());
  Eigen::Index q = 0;
  for (int a = 0; a < polar; ++a) {
    double x = 0.0, w = 0.0;
    gsl_integration_glfixed_point(-1.0, 1.0, static_cast<std::size_t>(a), &x, &w, table.get());
    const double r = std::sqrt(std::max(0.0, (1.0 - x) * (1.0 + x)));
    for (int b = 0; b < azimuthal; ++b) {
      const double phi = 2.0 * std::numbers::pi * b / azimuthal;
      rule.nodes.col(q) << r * std::cos(phi), r * std::sin(phi), x;
      rule.nodes.col(q).normalize();
      rule.weights[q] = w * 2.0 * std::numbers::pi / azimuthal;
      ++q;
    }
  }
  return rule;
}

double brute_force_kernel(int m, int L, double epsilon, int power,
                          const Eigen::Ref<const Eigen::VectorXd>& z,
                          const Eigen::Ref<const Eigen::VectorXd>& w) {
  require_sphere2(m);
  if (L < 0) fail(ErrorCode::Domain, "degree must be >= 0");
  if (L > kOracleMaxDegree) {
    fail(ErrorCode::ResourceLimit, "brute-force kernel is capped at degree " + std::to_string(kOracleMaxDegree));
  }
  if (power != 1 && power != 2) fail(ErrorCode::Domain, "power must be 1 or 2");
  if (z.size() != 3 || w.size() != 3) fail(ErrorCode::DimensionMismatch, "S^2 points need 3 coordinates");
  require_unit(z);
  require_unit(w);

  const std::size_t k = static_cast<std::size_t>(L + 1) * (L + 1);
  std::vector<double> yz(k), yw(k);
  real_basis_upto(L, Eigen::Vector3d(z), yz.data());
  real_basis_upto(L, Eigen::Vector3d(w), yw.data());
  double sum = 0.0;
  for (int l = 0; l <= L; ++l) {
    double weight = 1.0;
    if (epsilon > 0.0 && L > 0) weight = std::pow(beta(epsilon, static_cast<double>(l) / L), power);
    double inner = 0.0;
    for (int j = l * l; j < (l + 1) * (l + 1); ++j) inner += yz[j] * yw[j];
    sum += weight * inner;
  }
  return sum;
}

double propbound_sum(const PointSet& points, int L, double N, const Eigen::Ref<const Eigen::MatrixXd>& probes) {
  if (probes.rows() != points.m() + 1) fail(ErrorCode::DimensionMismatch, "probe dimension mismatch");
  double best = 0.0;
  for (Eigen::Index p = 0; p < probes.cols(); ++p) {
    double sum = 0.0;
    for (Eigen::Index j = 0; j < points.size(); ++j) {
      sum += std::pow(1.0 + L * geodesic_distance(probes.col(p), points.point(j)), -N);
    }
    best = std::max(best, sum);
  }
  return best;
}

double sampling_ratio(const PointSet& points, int L, const Eigen::Ref<const Eigen::VectorXd>& coefficients,
                      const QuadratureRule& rule) {
  require_sphere2(points.m());
  const Eigen::Index k = static_cast<Eigen::Index>(L + 1) * (L + 1);
  if (coefficients.size() != k) fail(ErrorCode::DimensionMismatch, "coefficient vector must have (L+1)^2 entries");
  if (rule.exactness_degree < 2 * L) fail(ErrorCode::Domain, "quadrature rule is not exact to degree 2L");

  const Eigen::VectorXd at_nodes = basis_matrix(L, points.coords()).transpose() * coefficients;
  const Eigen::VectorXd at_rule = basis_matrix(L, rule.nodes).transpose() * coefficients;
  const double norm_sq = rule.weights.dot(at_rule.cwiseAbs2());
  if (!(norm_sq > 0.0)) fail(ErrorCode::Domain, "test function has zero norm");
  return sphere_area(2) * at_nodes.squaredNorm() / (static_cast<double>(k) * norm_sq);
}

double plancherel_polya(const PointSet& points, const HarmonicSpace& space, int trials, const QuadratureRule& rule,
                        std::uint64_t seed) {
  if (trials < 1) fail(ErrorCode::Domain, "need at least one trial");
  detail::Rng rng(seed);
  const Eigen::Index k = static_cast<Eigen::Index>(space.L + 1) * (space.L + 1);
  Eigen::VectorXd c(k);
  double best = 0.0;
  for (int t = 0; t < trials; ++t) {
    for (Eigen::Index i = 0; i < k; ++i) c[i] = rng.normal();
    best = std::max(best, sampling_ratio(points, space.L, c, rule));
  }
  return best;
}

}  // namespace flatsphere
