#include "flatsphere/flat_system.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "flatsphere/error.hpp"

namespace flatsphere {

FlatSystem::FlatSystem(PointSet points, const KernelSpec& spec, Eigen::MatrixXcd coefficients)
    : points_(std::move(points)), kernel_(spec), coefficients_(std::move(coefficients)) {
  if (spec.m != points_.m()) fail(ErrorCode::DimensionMismatch, "kernel and point set live on different spheres");
  const Eigen::Index n = points_.size();
  if (n == 0) fail(ErrorCode::InsufficientData, "a flat system needs at least one node");
  if (coefficients_.rows() != n || coefficients_.cols() != n) {
    fail(ErrorCode::DimensionMismatch, "coefficient matrix must be " + std::to_string(n) + " x " + std::to_string(n));
  }
  re_ = coefficients_.real();
  im_ = coefficients_.imag();
}

void FlatSystem::kernel_row(const Eigen::Ref<const Eigen::VectorXd>& z, double* out) const {
  const Eigen::Index n = points_.size();
  for (Eigen::Index j = 0; j < n; ++j) {
    const double t = std::clamp(points_.point(j).dot(z), -1.0, 1.0);
    out[j] = kernel_.normalized(t);
  }
}

Eigen::MatrixXcd dft_matrix(Eigen::Index n) {
  Eigen::MatrixXcd f(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      // Reduce the exponent mod n before forming the angle.
      const Eigen::Index e = ((i + 1) * (j + 1)) % n;
      const double angle = 2.0 * std::numbers::pi * static_cast<double>(e) / static_cast<double>(n);
      f(i, j) = std::polar(1.0, angle);
    }
  }
  return f;
}

double orthonormality_residual(const Eigen::MatrixXcd& coefficients, const Eigen::MatrixXd& gram) {
  const Eigen::Index n = coefficients.rows();
  const Eigen::MatrixXcd product = coefficients * gram.cast<std::complex<double>>() * coefficients.adjoint();
  return (product - Eigen::MatrixXcd::Identity(n, n)).cwiseAbs().maxCoeff();
}

SystemBuild build_system_detailed(const PointSet& points, const KernelSpec& spec, double tolerance) {
  Gramian gram = build_gram(points, spec);
  certify(gram);
  Eigen::MatrixXd b = inv_sqrt(gram);
  const Eigen::Index n = points.size();
  Eigen::MatrixXcd a = dft_matrix(n) * b.cast<std::complex<double>>() / std::sqrt(static_cast<double>(n));
  const double residual = orthonormality_residual(a, gram.entries);
  if (!(residual <= tolerance)) {
    fail(ErrorCode::VerificationFailed, "orthonormality residual " + std::to_string(residual) +
                                            " exceeds tolerance " + std::to_string(tolerance));
  }
  FlatSystem system(points, spec, std::move(a));
  return SystemBuild{std::move(system), std::move(gram), std::move(b), residual};
}

FlatSystem build_system(const PointSet& points, const KernelSpec& spec, double tolerance) {
  return std::move(build_system_detailed(points, spec, tolerance).system);
}

namespace {

void require_index(const FlatSystem& system, Eigen::Index i) {
  if (i < 0 || i >= system.size()) {
    fail(ErrorCode::IndexOutOfRange, "function index " + std::to_string(i) + " outside [0, " +
                                         std::to_string(system.size()) + ")");
  }
}

void require_probe_point(const FlatSystem& system, const Eigen::Ref<const Eigen::VectorXd>& z) {
  if (z.size() != system.points().m() + 1) fail(ErrorCode::DimensionMismatch, "probe point has wrong dimension");
  require_unit(z);
}

// Accumulates row i of A against the kernel row, node index ascending.
// evaluate() and the batch path below perform the same operations in the
// same order.
std::complex<double> accumulate_one(const FlatSystem& system, Eigen::Index i, const double* row) {
  const Eigen::MatrixXd& re = system.coefficients_re();
  const Eigen::MatrixXd& im = system.coefficients_im();
  double acc_re = 0.0, acc_im = 0.0;
  for (Eigen::Index j = 0; j < system.size(); ++j) {
    acc_re += re(i, j) * row[j];
    acc_im += im(i, j) * row[j];
  }
  return {acc_re, acc_im};
}

void accumulate_all(const FlatSystem& system, const double* row, double* out_re, double* out_im) {
  const Eigen::MatrixXd& re = system.coefficients_re();
  const Eigen::MatrixXd& im = system.coefficients_im();
  const Eigen::Index n = system.size();
  std::fill(out_re, out_re + n, 0.0);
  std::fill(out_im, out_im + n, 0.0);
  for (Eigen::Index j = 0; j < n; ++j) {
    const double k = row[j];
    const double* cr = re.col(j).data();
    const double* ci = im.col(j).data();
    for (Eigen::Index i = 0; i < n; ++i) {
      out_re[i] += cr[i] * k;
      out_im[i] += ci[i] * k;
    }
  }
}

CandidateMesh probe_mesh(const FlatSystem& system, double probe_resolution) {
  if (!(probe_resolution > 0.0)) fail(ErrorCode::Domain, "probe resolution must be positive");
  if (probe_resolution > max_probe_resolution(system.spec().L)) {
    fail(ErrorCode::Domain, "probe resolution " + std::to_string(probe_resolution) +
                                " is too coarse for degree " + std::to_string(system.spec().L) +
                                " (need <= 1/(4L))");
  }
  return candidate_mesh(system.points().m(), probe_resolution);
}

}  // namespace

double max_probe_resolution(int L) { return L <= 0 ? 1.0 : 1.0 / (4.0 * L); }

std::complex<double> evaluate(const FlatSystem& system, Eigen::Index i, const Eigen::Ref<const Eigen::VectorXd>& z) {
  require_index(system, i);
  require_probe_point(system, z);
  std::vector<double> row(system.size());
  system.kernel_row(z, row.data());
  return accumulate_one(system, i, row.data());
}

Eigen::MatrixXcd evaluate_batch(const FlatSystem& system, const Eigen::Ref<const Eigen::MatrixXd>& points) {
  const Eigen::Index n = system.size();
  const Eigen::Index q = points.cols();
  if (q > 0 && n > kMaxBatchEntries / q) {
    fail(ErrorCode::ResourceLimit, "batch of " + std::to_string(n) + " x " + std::to_string(q) +
                                       " values exceeds the evaluation cap");
  }
  Eigen::MatrixXcd out(n, q);
  std::vector<double> row(n), vr(n), vi(n);
  for (Eigen::Index p = 0; p < q; ++p) {
    require_probe_point(system, points.col(p));
    system.kernel_row(points.col(p), row.data());
    accumulate_all(system, row.data(), vr.data(), vi.data());
    for (Eigen::Index i = 0; i < n; ++i) out(i, p) = {vr[i], vi[i]};
  }
  return out;
}

std::vector<double> sup_norms(const FlatSystem& system, double probe_resolution) {
  const CandidateMesh mesh = probe_mesh(system, probe_resolution);
  const Eigen::Index n = system.size();
  std::vector<double> best(n, 0.0), row(n), vr(n), vi(n);
  for (Eigen::Index p = 0; p < mesh.size(); ++p) {
    system.kernel_row(mesh.points.col(p), row.data());
    accumulate_all(system, row.data(), vr.data(), vi.data());
    for (Eigen::Index i = 0; i < n; ++i) best[i] = std::max(best[i], std::abs(std::complex<double>(vr[i], vi[i])));
  }
  return best;
}

double sup_norm(const FlatSystem& system, Eigen::Index i, double probe_resolution) {
  require_index(system, i);
  const CandidateMesh mesh = probe_mesh(system, probe_resolution);
  std::vector<double> row(system.size());
  double best = 0.0;
  for (Eigen::Index p = 0; p < mesh.size(); ++p) {
    system.kernel_row(mesh.points.col(p), row.data());
    best = std::max(best, std::abs(accumulate_one(system, i, row.data())));
  }
  return best;
}

double linf_to_Linf_bound(const FlatSystem& system, double probe_resolution) {
  const CandidateMesh mesh = probe_mesh(system, probe_resolution);
  std::vector<double> row(system.size());
  double best = 0.0;
  for (Eigen::Index p = 0; p < mesh.size(); ++p) {
    system.kernel_row(mesh.points.col(p), row.data());
    double sum = 0.0;
    for (double v : row) sum += std::abs(v);
    best = std::max(best, sum);
  }
  return best;
}

}  // namespace flatsphere
