#include "flatsphere/harmonic.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "flatsphere/error.hpp"

namespace flatsphere {

namespace {

void require_dimension(int m) {
  if (m < 2) fail(ErrorCode::Domain, "sphere dimension must be >= 2, got " + std::to_string(m));
}

void require_degree(int l) {
  if (l < 0) fail(ErrorCode::Domain, "degree must be >= 0, got " + std::to_string(l));
}

using u128 = unsigned __int128;

u128 checked_binomial(int n, int k) {
  if (k > n - k) k = n - k;
  u128 value = 1;
  for (int i = 1; i <= k; ++i) {
    const u128 next = value * static_cast<u128>(n - k + i);
    if (next / static_cast<u128>(n - k + i) != value) {
      fail(ErrorCode::Overflow, "binomial coefficient overflows");
    }
    value = next / static_cast<u128>(i);
  }
  return value;
}

}  // namespace

std::uint64_t HarmonicSpace::dimension() const { return space_dimension(m, L); }

double eigenvalue(int m, int l) {
  require_dimension(m);
  require_degree(l);
  return static_cast<double>(l) * static_cast<double>(l + m - 1);
}

std::uint64_t degree_dimension(int m, int l) {
  require_dimension(m);
  require_degree(l);
  // dim H_l = (2l+m-1) * C(l+m-2, m-2) / (m-1)
  const u128 binom = checked_binomial(l + m - 2, m - 2);
  const u128 factor = static_cast<u128>(2 * static_cast<long long>(l) + m - 1);
  const u128 product = binom * factor;
  if (product / factor != binom) fail(ErrorCode::Overflow, "degree dimension overflows");
  const u128 dim = product / static_cast<u128>(m - 1);
  if (dim > static_cast<u128>(UINT64_MAX)) fail(ErrorCode::Overflow, "degree dimension overflows");
  return static_cast<std::uint64_t>(dim);
}

std::uint64_t space_dimension(int m, int L) {
  require_dimension(m);
  require_degree(L);
  std::uint64_t total = 0;
  for (int l = 0; l <= L; ++l) {
    if (__builtin_add_overflow(total, degree_dimension(m, l), &total)) {
      fail(ErrorCode::Overflow, "space dimension overflows");
    }
  }
  return total;
}

double sphere_area(int m) {
  require_dimension(m);
  const double half = 0.5 * (m + 1);
  return 2.0 * std::pow(std::numbers::pi, half) / std::tgamma(half);
}

double gegenbauer(double alpha, int l, double t) {
  require_degree(l);
  if (!(std::abs(t) <= 1.0)) fail(ErrorCode::Domain, "gegenbauer argument outside [-1,1]");
  if (alpha < 0.0) fail(ErrorCode::Domain, "gegenbauer parameter must be >= 0");
  if (l == 0) return 1.0;
  if (alpha == 0.0) {
    double prev = 1.0, cur = t;
    for (int n = 2; n <= l; ++n) {
      const double next = 2.0 * t * cur - prev;
      prev = cur;
      cur = next;
    }
    return cur;
  }
  double prev = 1.0, cur = 2.0 * alpha * t;
  for (int n = 2; n <= l; ++n) {
    const double next = (2.0 * t * (n + alpha - 1.0) * cur - (n + 2.0 * alpha - 2.0) * prev) / n;
    prev = cur;
    cur = next;
  }
  return cur;
}

double zonal_kernel(int m, int l, double t) {
  require_dimension(m);
  require_degree(l);
  if (!(std::abs(t) <= 1.0)) fail(ErrorCode::Domain, "zonal kernel argument outside [-1,1]");
  const double alpha = 0.5 * (m - 1);
  const double scale = static_cast<double>(degree_dimension(m, l)) / sphere_area(m);
  return scale * gegenbauer(alpha, l, t) / gegenbauer(alpha, l, 1.0);
}

ZonalKernelTable::ZonalKernelTable(int m, std::vector<double> coefficients)
    : m_(m), coefficients_(std::move(coefficients)), surface_area_(0.0) {
  require_dimension(m);
  if (coefficients_.empty()) fail(ErrorCode::Domain, "zonal kernel table needs at least one coefficient");
  surface_area_ = sphere_area(m);
  const double alpha = 0.5 * (m - 1);
  gegenbauer_weights_.resize(coefficients_.size());
  for (std::size_t l = 0; l < coefficients_.size(); ++l) {
    if (coefficients_[l] < 0.0) fail(ErrorCode::Domain, "zonal kernel coefficients must be nonnegative");
    const int deg = static_cast<int>(l);
    gegenbauer_weights_[l] = coefficients_[l] * static_cast<double>(degree_dimension(m, deg)) /
                             (surface_area_ * gegenbauer(alpha, deg, 1.0));
  }
}

double ZonalKernelTable::operator()(double t) const {
  if (!(std::abs(t) <= 1.0)) fail(ErrorCode::Domain, "kernel argument outside [-1,1]");
  const double alpha = 0.5 * (m_ - 1);
  const std::size_t count = gegenbauer_weights_.size();
  double sum = gegenbauer_weights_[0];
  if (count == 1) return sum;
  double prev = 1.0, cur = 2.0 * alpha * t;
  sum += gegenbauer_weights_[1] * cur;
  for (std::size_t n = 2; n < count; ++n) {
    const double next = (2.0 * t * (n + alpha - 1.0) * cur - (n + 2.0 * alpha - 2.0) * prev) / n;
    prev = cur;
    cur = next;
    sum += gegenbauer_weights_[n] * cur;
  }
  return sum;
}

double ZonalKernelTable::diagonal() const {
  double sum = 0.0;
  for (std::size_t l = 0; l < coefficients_.size(); ++l) {
    sum += coefficients_[l] * static_cast<double>(degree_dimension(m_, static_cast<int>(l)));
  }
  return sum / surface_area_;
}

void require_unit(const Eigen::Ref<const Eigen::VectorXd>& point) {
  const double norm = point.norm();
  if (!(std::abs(norm - 1.0) <= 1e-12)) {
    fail(ErrorCode::Domain, "point is not a unit vector (norm " + std::to_string(norm) + ")");
  }
}

void real_basis_upto(int L, const Eigen::Vector3d& point, double* out) {
  require_degree(L);
  const double cos_theta = std::clamp(point.z(), -1.0, 1.0);
  const double sin_theta = std::sqrt(std::max(0.0, (1.0 - cos_theta) * (1.0 + cos_theta)));
  const double phi = std::atan2(point.y(), point.x());

  // Fully normalized associated Legendre values, column by column in order.
  std::vector<double> column(static_cast<std::size_t>(L) + 1);
  double diag = 1.0 / std::sqrt(4.0 * std::numbers::pi);
  for (int order = 0; order <= L; ++order) {
    if (order > 0) diag *= std::sqrt((2.0 * order + 1.0) / (2.0 * order)) * sin_theta;
    column[order] = diag;
    if (order + 1 <= L) column[order + 1] = std::sqrt(2.0 * order + 3.0) * cos_theta * diag;
    for (int l = order + 2; l <= L; ++l) {
      const double a = std::sqrt((4.0 * l * l - 1.0) / (static_cast<double>(l) * l - static_cast<double>(order) * order));
      const double a_prev = std::sqrt((4.0 * (l - 1.0) * (l - 1.0) - 1.0) /
                                      ((l - 1.0) * (l - 1.0) - static_cast<double>(order) * order));
      column[l] = a * (cos_theta * column[l - 1] - column[l - 2] / a_prev);
    }
    if (order == 0) {
      for (int l = 0; l <= L; ++l) out[l * l + l] = column[l];
    } else {
      const double c = std::sqrt(2.0) * std::cos(order * phi);
      const double s = std::sqrt(2.0) * std::sin(order * phi);
      for (int l = order; l <= L; ++l) {
        out[l * l + l + order] = c * column[l];
        out[l * l + l - order] = s * column[l];
      }
    }
  }
}

std::vector<double> real_basis_eval(int m, int l, const Eigen::Ref<const Eigen::VectorXd>& point) {
  if (m != 2) fail(ErrorCode::UnsupportedDimension, "explicit real basis is only available on S^2");
  require_degree(l);
  if (point.size() != 3) fail(ErrorCode::DimensionMismatch, "S^2 points need 3 coordinates");
  require_unit(point);
  std::vector<double> all(static_cast<std::size_t>(l + 1) * (l + 1));
  real_basis_upto(l, Eigen::Vector3d(point), all.data());
  return std::vector<double>(all.begin() + l * l, all.end());
}

}  // namespace flatsphere
