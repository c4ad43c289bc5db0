#include <random>

#include <Eigen/Dense>

#include "test_support.hpp"

#include "flatsphere/cutoff.hpp"
#include "flatsphere/diagnostics.hpp"
#include "flatsphere/points.hpp"

using namespace flatsphere;
using testing::kPi;

TEST_CASE("quadrature rule examples") {
  const QuadratureRule rule = gauss_sphere_rule(2, 4);
  CHECK(rule.exactness_degree == 10);
  const Eigen::Index polar = 6;
  CHECK(rule.nodes.cols() == polar * (2 * polar + 1));
  CHECK(rule.weights.sum() == doctest::Approx(4 * kPi).epsilon(1e-12));
  CHECK(rule.weights.minCoeff() > 0.0);
  CHECK((rule.nodes.colwise().norm().array() - 1.0).abs().maxCoeff() <= 1e-14);

  const Eigen::MatrixXd y = basis_matrix(3, rule.nodes);
  const auto integral = [&](int a, int b) { return (y.row(a).array() * y.row(b).array() * rule.weights.transpose().array()).sum(); };
  CHECK(integral(2, 2) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(std::abs(integral(7, 13)) <= 1e-12);
  CHECK_FS_ERROR(gauss_sphere_rule(3, 4), ErrorCode::UnsupportedDimension);
}

TEST_CASE("quadrature exactness") {
  for (int L = 0; L <= 6; ++L) {
    const QuadratureRule rule = gauss_sphere_rule(2, L);
    const Eigen::MatrixXd y = basis_matrix(L, rule.nodes);
    const Eigen::MatrixXd gram = y * rule.weights.asDiagonal() * y.transpose();
    CHECK((gram - Eigen::MatrixXd::Identity(y.rows(), y.rows())).cwiseAbs().maxCoeff() <= 1e-10);
    // Even powers of z up to the exactness degree.
    for (int e = 0; 2 * e <= rule.exactness_degree; ++e) {
      const double zk = (rule.nodes.row(2).array().pow(2 * e) * rule.weights.transpose().array()).sum();
      CHECK(zk == doctest::Approx(4 * kPi / (2 * e + 1)).epsilon(1e-12));
    }
  }
  // Spot check with random degree-(L+1) products at L = 10.
  const QuadratureRule rule = gauss_sphere_rule(2, 10);
  const Eigen::MatrixXd y = basis_matrix(11, rule.nodes);
  std::mt19937_64 rng(2);
  for (int trial = 0; trial < 200; ++trial) {
    const Eigen::Index a = static_cast<Eigen::Index>(rng() % 144), b = static_cast<Eigen::Index>(rng() % 144);
    const double value = (y.row(a).array() * y.row(b).array() * rule.weights.transpose().array()).sum();
    CHECK(std::abs(value - (a == b ? 1.0 : 0.0)) <= 1e-10);
  }
}

TEST_CASE("brute force kernel") {
  const Eigen::Vector3d z(0, 0, 1), w = testing::spherical(1.0, 2.0);
  CHECK(brute_force_kernel(2, 0, 0.2, 1, z, w) == doctest::Approx(1.0 / (4 * kPi)).epsilon(1e-15));
  const Eigen::MatrixXd zs = random_sphere_points(50, 41), ws = random_sphere_points(50, 42);
  for (int p : {1, 2}) {
    const KernelSpec spec{2, 6, 0.2, p};
    for (Eigen::Index q = 0; q < 50; ++q) {
      const double t = std::clamp(zs.col(q).dot(ws.col(q)), -1.0, 1.0);
      CHECK(std::abs(brute_force_kernel(2, 6, 0.2, p, zs.col(q), ws.col(q)) - br_kernel(spec, t)) <= 1e-10);
    }
    double diagonal = 0.0;
    for (int l = 0; l <= 6; ++l) diagonal += std::pow(beta(0.2, l / 6.0), p) * (2 * l + 1) / (4 * kPi);
    CHECK(brute_force_kernel(2, 6, 0.2, p, zs.col(0), zs.col(0)) == doctest::Approx(diagonal).epsilon(1e-12));
  }
  CHECK_FS_ERROR(brute_force_kernel(2, kOracleMaxDegree + 1, 0.2, 1, z, w), ErrorCode::ResourceLimit);
  CHECK_FS_ERROR(brute_force_kernel(3, 2, 0.2, 1, Eigen::Vector4d(0, 0, 0, 1), Eigen::Vector4d(0, 0, 0, 1)),
                 ErrorCode::UnsupportedDimension);
}

TEST_CASE("propbound examples") {
  const Eigen::Vector3d north(0, 0, 1);
  const PointSet single(2, 0, north);
  Eigen::MatrixXd probes(3, 101);
  probes.leftCols(100) = random_sphere_points(100, 3);
  probes.col(100) = north;
  for (int L : {1, 5, 20}) CHECK(propbound_sum(single, L, 3.0, probes) == doctest::Approx(1.0).epsilon(1e-15));

  Eigen::MatrixXd antipodal(3, 2);
  antipodal << 0, 0, 0, 0, 1, -1;
  const PointSet pair(2, 0, antipodal);
  Eigen::MatrixXd at_nodes = antipodal;
  CHECK(propbound_sum(pair, 1, 3.0, at_nodes) == doctest::Approx(1.0 + std::pow(1.0 + kPi, -3.0)).epsilon(1e-14));
}

TEST_CASE("propbound decreases in N") {
  const PointSet points(2, 0, random_sphere_points(60, 9));
  const Eigen::MatrixXd probes = random_sphere_points(500, 10);
  double previous = 1e300;
  for (double N : {2.5, 3.0, 4.0, 6.0}) {
    const double value = propbound_sum(points, 8, N, probes);
    CHECK(value <= previous);
    previous = value;
  }
}

TEST_CASE("sampling ratio closed forms") {
  const PointSet single(2, 0, Eigen::Vector3d(0.6, 0.0, 0.8));
  const QuadratureRule rule0 = gauss_sphere_rule(2, 0);
  Eigen::VectorXd constant(1);
  constant << 2.5;
  CHECK(sampling_ratio(single, 0, constant, rule0) == doctest::Approx(1.0).epsilon(1e-13));
  CHECK(plancherel_polya(single, HarmonicSpace{2, 0}, 10, rule0, 1) == doctest::Approx(1.0).epsilon(1e-13));
}

TEST_CASE("sampling ratio is rotation invariant") {
  const int L = 6;
  const QuadratureRule rule = gauss_sphere_rule(2, L);
  const Eigen::MatrixXd nodes = random_sphere_points(40, 13);
  const Eigen::Matrix3d r = testing::rotation(0.3, 1.1, -0.7);
  const Eigen::MatrixXd basis_at_nodes = basis_matrix(L, rule.nodes);
  const Eigen::MatrixXd basis_at_rotated = basis_matrix(L, r.transpose() * rule.nodes);
  std::mt19937_64 rng(14);
  std::normal_distribution<double> normal;
  for (int trial = 0; trial < 20; ++trial) {
    Eigen::VectorXd c(basis_at_nodes.rows());
    for (Eigen::Index k = 0; k < c.size(); ++k) c[k] = normal(rng);
    // Coefficients of phi(R^T x) by exact quadrature.
    const Eigen::VectorXd values = basis_at_rotated.transpose() * c;
    const Eigen::VectorXd rotated = basis_at_nodes * rule.weights.asDiagonal() * values;
    const double before = sampling_ratio(PointSet(2, 0, nodes), L, c, rule);
    const double after = sampling_ratio(PointSet(2, 0, r * nodes), L, rotated, rule);
    CHECK(after == doctest::Approx(before).epsilon(1e-10));
  }
}

TEST_CASE("plancherel estimate is reproducible and bounded for fekete nodes") {
  const int L = 8;
  const int degree = shrink_degree(L, 0.2);
  const PointSet points = approximate_fekete(2, degree, candidate_mesh(2, default_mesh_resolution(degree)));
  const QuadratureRule rule = gauss_sphere_rule(2, L);
  const double a = plancherel_polya(points, HarmonicSpace{2, L}, 200, rule, 7);
  const double b = plancherel_polya(points, HarmonicSpace{2, L}, 200, rule, 7);
  CHECK(a == b);
  CHECK(a > 0.0);
  CHECK(a < 2.0);
}
