#include "flatsphere/cutoff.hpp"

#include <cmath>
#include <string>

#include "flatsphere/error.hpp"

namespace flatsphere {

namespace {

double flat_step(double t) {
  return t > 0.0 ? std::exp(-1.0 / t) : 0.0;
}

double clamp_inner(double t) {
  return t > 1.0 ? 1.0 : (t < -1.0 ? -1.0 : t);
}

}  // namespace

double beta(double epsilon, double x) {
  if (!(epsilon > 0.0 && epsilon <= 1.0)) {
    fail(ErrorCode::Domain, "cutoff epsilon must lie in (0,1], got " + std::to_string(epsilon));
  }
  if (!(x >= 0.0)) fail(ErrorCode::Domain, "cutoff argument must be >= 0");
  if (x <= 1.0 - epsilon) return 1.0;
  if (x >= 1.0) return 0.0;
  const double t = (1.0 - x) / epsilon;
  const double up = flat_step(t);
  return up / (up + flat_step(1.0 - t));
}

void KernelSpec::validate() const {
  if (m < 2) fail(ErrorCode::Domain, "kernel sphere dimension must be >= 2");
  if (L < 0) fail(ErrorCode::Domain, "kernel degree must be >= 0");
  if (!(epsilon >= 0.0 && epsilon <= 1.0)) fail(ErrorCode::Domain, "kernel epsilon must lie in [0,1]");
  if (power != 1 && power != 2) fail(ErrorCode::Domain, "kernel power must be 1 or 2");
}

double cutoff_weight(const KernelSpec& spec, int l) {
  if (l < 0 || l > spec.L) return 0.0;
  if (spec.epsilon == 0.0 || spec.L == 0) return 1.0;
  const double b = beta(spec.epsilon, static_cast<double>(l) / spec.L);
  return spec.power == 1 ? b : b * b;
}

ZonalKernelTable kernel_table(const KernelSpec& spec) {
  spec.validate();
  std::vector<double> weights(static_cast<std::size_t>(spec.L) + 1);
  for (int l = 0; l <= spec.L; ++l) weights[l] = cutoff_weight(spec, l);
  return ZonalKernelTable(spec.m, std::move(weights));
}

double br_kernel(const KernelSpec& spec, double t) {
  if (!(std::abs(t) <= 1.0)) fail(ErrorCode::Domain, "kernel argument outside [-1,1]");
  return kernel_table(spec)(t);
}

double kernel_norm_sq(const KernelSpec& spec) {
  spec.validate();
  double sum = 0.0;
  for (int l = 0; l <= spec.L; ++l) {
    const double w = cutoff_weight(spec, l);
    sum += w * w * static_cast<double>(degree_dimension(spec.m, l));
  }
  return sum / sphere_area(spec.m);
}

double normalized_kernel(const KernelSpec& spec,
                         const Eigen::Ref<const Eigen::VectorXd>& z,
                         const Eigen::Ref<const Eigen::VectorXd>& w) {
  if (z.size() != spec.m + 1 || w.size() != spec.m + 1) {
    fail(ErrorCode::DimensionMismatch, "point dimension does not match the kernel");
  }
  require_unit(z);
  require_unit(w);
  const KernelSpec base = spec.with_power(1);
  return br_kernel(base, clamp_inner(z.dot(w))) / std::sqrt(kernel_norm_sq(base));
}

double decay_envelope(int m, int L, double N, double d) {
  return std::pow(static_cast<double>(L), m) / std::pow(1.0 + L * d, N);
}

BochnerRieszKernel::BochnerRieszKernel(const KernelSpec& spec)
    : spec_(spec.with_power(1)),
      kernel_(kernel_table(spec_)),
      gram_(kernel_table(spec_.with_power(2))),
      norm_sq_(kernel_norm_sq(spec_)),
      inv_norm_(1.0 / std::sqrt(norm_sq_)) {}

}  // namespace flatsphere
