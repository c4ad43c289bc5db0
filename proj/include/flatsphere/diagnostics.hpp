#pragma once

#include <cstdint>

#include <Eigen/Core>

#include "flatsphere/harmonic.hpp"
#include "flatsphere/points.hpp"

namespace flatsphere {

/// Cubature on S^2: nodes (3 x count) with positive weights.
struct QuadratureRule {
  Eigen::MatrixXd nodes;
  Eigen::VectorXd weights;
  int exactness_degree = 0;
};

/// Gauss-Legendre in cos(theta) times equispaced azimuth, exact for
/// spherical polynomials of degree <= 2L + 2.
QuadratureRule gauss_sphere_rule(int m, int L);

inline constexpr int kOracleMaxDegree = 12;

/// sum over the explicit real basis of degree <= L of beta(eps, l/L)^p Y(z) Y(w).
/// Shares no code with the zonal kernel path. eps == 0 is the indicator.
double brute_force_kernel(int m, int L, double epsilon, int power,
                          const Eigen::Ref<const Eigen::VectorXd>& z,
                          const Eigen::Ref<const Eigen::VectorXd>& w);

/// max over probes of sum_j (1 + L d(z, z_j))^{-N}.
double propbound_sum(const PointSet& points, int L, double N, const Eigen::Ref<const Eigen::MatrixXd>& probes);

/// (omega / k_L) sum_j phi(z_j)^2 / ||phi||^2 for phi = sum_k c_k Y_k of degree
/// <= L, with ||phi||^2 taken by `rule`. The omega factor normalises the
/// measure to total mass one, so a single node with L = 0 gives 1.
double sampling_ratio(const PointSet& points, int L, const Eigen::Ref<const Eigen::VectorXd>& coefficients,
                      const QuadratureRule& rule);

/// Maximum of sampling_ratio over `trials` Gaussian random members of E_L.
double plancherel_polya(const PointSet& points, const HarmonicSpace& space, int trials, const QuadratureRule& rule,
                        std::uint64_t seed);

}  // namespace flatsphere
