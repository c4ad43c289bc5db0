#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>

namespace flatsphere::detail {

// mt19937_64 output is specified by the standard; the std distributions are
// not, so draws are built from raw bits to stay reproducible across libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  double uniform() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

  double normal() {
    double u = uniform();
    while (u == 0.0) u = uniform();
    const double v = uniform();
    return std::sqrt(-2.0 * std::log(u)) * std::cos(2.0 * std::numbers::pi * v);
  }

 private:
  std::mt19937_64 gen_;
};

}  // namespace flatsphere::detail
