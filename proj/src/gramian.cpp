#include "flatsphere/gramian.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <Eigen/Eigenvalues>

#include "flatsphere/error.hpp"

namespace flatsphere {

namespace {

void require_square(const Eigen::Ref<const Eigen::MatrixXd>& matrix) {
  if (matrix.rows() != matrix.cols()) fail(ErrorCode::DimensionMismatch, "matrix must be square");
}

Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> decompose(const Eigen::Ref<const Eigen::MatrixXd>& symmetric,
                                                         bool vectors) {
  require_square(symmetric);
  if (symmetric.rows() == 0) fail(ErrorCode::InsufficientData, "empty matrix");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(
      symmetric, vectors ? Eigen::ComputeEigenvectors : Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) fail(ErrorCode::Eigensolver, "symmetric eigensolver did not converge");
  return solver;
}

}  // namespace

Gramian build_gram(const PointSet& points, const KernelSpec& spec) {
  spec.validate();
  if (spec.m != points.m()) fail(ErrorCode::DimensionMismatch, "kernel and point set live on different spheres");
  if (spec.L < points.degree()) {
    fail(ErrorCode::DimensionMismatch, "kernel degree " + std::to_string(spec.L) +
                                           " is below the node degree " + std::to_string(points.degree()));
  }
  const BochnerRieszKernel kernel(spec);
  const Eigen::Index n = points.size();
  Gramian gram{Eigen::MatrixXd(n, n), points, spec.with_power(1), std::nullopt};
  const double inv_norm_sq = 1.0 / kernel.norm_sq();
  for (Eigen::Index i = 0; i < n; ++i) {
    gram.entries(i, i) = 1.0;
    for (Eigen::Index j = i + 1; j < n; ++j) {
      const double t = std::clamp(points.point(i).dot(points.point(j)), -1.0, 1.0);
      const double value = kernel.gram_value(t) * inv_norm_sq;
      gram.entries(i, j) = value;
      gram.entries(j, i) = value;
    }
  }
  return gram;
}

Spectrum extreme_eigenvalues(const Eigen::Ref<const Eigen::MatrixXd>& symmetric) {
  const auto solver = decompose(symmetric, false);
  const auto& values = solver.eigenvalues();
  return {values[0], values[values.size() - 1]};
}

Spectrum extreme_eigenvalues(const Gramian& gram) {
  if (gram.spectrum) return *gram.spectrum;
  return extreme_eigenvalues(gram.entries);
}

const Spectrum& certify(Gramian& gram, double tolerance) {
  const Spectrum s = extreme_eigenvalues(gram.entries);
  if (!(s.max > 0.0) || !(s.min > tolerance * s.max)) {
    fail(ErrorCode::NotPositiveDefinite,
         "Gramian is not positive definite (lambda_min " + std::to_string(s.min) + ", lambda_max " +
             std::to_string(s.max) + "): the nodes do not give a Riesz sequence; regenerate them or raise epsilon");
  }
  gram.spectrum = s;
  return *gram.spectrum;
}

Eigen::MatrixXd inv_sqrt(const Eigen::Ref<const Eigen::MatrixXd>& symmetric, double tolerance) {
  const auto solver = decompose(symmetric, true);
  const Eigen::VectorXd& values = solver.eigenvalues();
  const double lmin = values[0];
  const double lmax = values[values.size() - 1];
  if (!(lmax > 0.0) || !(lmin > tolerance * lmax)) {
    fail(ErrorCode::NotPositiveDefinite, "matrix is not positive definite (lambda_min " + std::to_string(lmin) +
                                             ", lambda_max " + std::to_string(lmax) + ")");
  }
  const Eigen::MatrixXd& vectors = solver.eigenvectors();
  const Eigen::VectorXd scale = values.array().rsqrt();
  Eigen::MatrixXd result = vectors * scale.asDiagonal() * vectors.transpose();
  // Symmetrize away the rounding asymmetry of the triple product.
  return 0.5 * (result + result.transpose());
}

Eigen::MatrixXd inv_sqrt(const Gramian& gram, double tolerance) { return inv_sqrt(gram.entries, tolerance); }

double linf_row_norm(const Eigen::Ref<const Eigen::MatrixXd>& matrix) {
  require_square(matrix);
  if (matrix.rows() == 0) return 0.0;
  return matrix.cwiseAbs().rowwise().sum().maxCoeff();
}

DecayFit offdiag_decay_fit(const Eigen::Ref<const Eigen::MatrixXd>& matrix, const PointSet& points, int L) {
  require_square(matrix);
  const Eigen::Index n = matrix.rows();
  if (n != points.size()) fail(ErrorCode::DimensionMismatch, "matrix and point set sizes differ");
  if (n < 8) fail(ErrorCode::InsufficientData, "decay fit needs at least 8 nodes");

  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  Eigen::Index count = 0;
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      if (i == j) continue;
      const double magnitude = std::abs(matrix(i, j));
      if (!(magnitude > 1e-14)) continue;
      const double x = std::log1p(L * geodesic_distance(points.point(i), points.point(j)));
      const double y = std::log(magnitude);
      sx += x;
      sy += y;
      sxx += x * x;
      sxy += x * y;
      ++count;
    }
  }
  if (count < 2) fail(ErrorCode::InsufficientData, "too few off-diagonal entries above 1e-14");
  const double mean_x = sx / count;
  const double mean_y = sy / count;
  const double var_x = sxx / count - mean_x * mean_x;
  if (!(var_x > 0.0)) fail(ErrorCode::InsufficientData, "off-diagonal distances do not vary");
  const double slope = (sxy / count - mean_x * mean_y) / var_x;
  const double intercept = mean_y - slope * mean_x;

  double ss = 0.0;
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      if (i == j) continue;
      const double magnitude = std::abs(matrix(i, j));
      if (!(magnitude > 1e-14)) continue;
      const double x = std::log1p(L * geodesic_distance(points.point(i), points.point(j)));
      const double r = std::log(magnitude) - (intercept + slope * x);
      ss += r * r;
    }
  }
  return {-slope, std::exp(intercept), std::sqrt(ss / count), count};
}

}  // namespace flatsphere
