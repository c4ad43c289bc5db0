#pragma once

#include <Eigen/Core>

#include "flatsphere/harmonic.hpp"

namespace flatsphere {

/// Smooth nonincreasing cutoff: 1 on [0, 1-eps], 0 on (1, inf), and the
/// exponential-flat glue f((1-x)/eps) in between, f(t) = g(t)/(g(t)+g(1-t)),
/// g(t) = exp(-1/t).
double beta(double epsilon, double x);

/// Parameters of a Bochner-Riesz type kernel on S^m. `epsilon == 0` selects
/// the indicator cutoff, i.e. the reproducing kernel of E_L. `power` is the
/// exponent applied to the cutoff weights (1 for B^eps_L, 2 for the kernel
/// whose values are Gram inner products).
struct KernelSpec {
  int m = 2;
  int L = 0;
  double epsilon = 0.2;
  int power = 1;

  void validate() const;
  KernelSpec with_power(int p) const {
    KernelSpec copy = *this;
    copy.power = p;
    return copy;
  }
};

/// Weight beta(eps, l/L)^power of degree l (degree ratio, l/L := 0 for L == 0).
double cutoff_weight(const KernelSpec& spec, int l);

ZonalKernelTable kernel_table(const KernelSpec& spec);

/// B^eps_L(z,w) as a function of t = z.w, with weights raised to spec.power.
double br_kernel(const KernelSpec& spec, double t);

/// ||B(., w)||_2^2 = sum_l weight_l^2 dim(H_l) / omega_m.
double kernel_norm_sq(const KernelSpec& spec);

/// b^eps_L(z,w) = B^eps_L(z,w) / sqrt(kernel_norm_sq), with power 1.
double normalized_kernel(const KernelSpec& spec,
                         const Eigen::Ref<const Eigen::VectorXd>& z,
                         const Eigen::Ref<const Eigen::VectorXd>& w);

/// L^m / (1 + L d)^N.
double decay_envelope(int m, int L, double N, double d);

/// Precomputed kernel pair used by the Gramian and the flat system: the
/// power-1 kernel, the power-2 (Gram) kernel and the normalization.
class BochnerRieszKernel {
 public:
  explicit BochnerRieszKernel(const KernelSpec& spec);

  const KernelSpec& spec() const { return spec_; }
  double value(double t) const { return kernel_(t); }
  double gram_value(double t) const { return gram_(t); }
  double norm_sq() const { return norm_sq_; }
  double normalized(double t) const { return kernel_(t) * inv_norm_; }

 private:
  KernelSpec spec_;
  ZonalKernelTable kernel_;
  ZonalKernelTable gram_;
  double norm_sq_;
  double inv_norm_;
};

}  // namespace flatsphere
