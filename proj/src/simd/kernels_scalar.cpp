#include <cmath>

#include "pgst/simd/kernels.hpp"

namespace pgst::simd::scalar {

void cos_sum(std::span<const double> theta, std::span<const double> weight, std::int64_t t0,
             std::span<double> out) {
  for (std::size_t i = 0; i < out.size(); ++i) {
    const double t = static_cast<double>(t0 + static_cast<std::int64_t>(i));
    double acc = 0.0;
    for (std::size_t k = 0; k < theta.size(); ++k) {
      // t * theta = p + e exactly; cos(p + e) = cos p - e sin p to O(e^2).
      const double p = t * theta[k];
      const double e = std::fma(t, theta[k], -p);
      acc += weight[k] * (std::cos(p) - e * std::sin(p));
    }
    out[i] = acc;
  }
}

void coin_reflect(std::span<const std::uint32_t> offsets, std::span<const double> coeff,
                  std::span<std::complex<double>> state) {
  for (std::size_t u = 0; u + 1 < offsets.size(); ++u) {
    std::complex<double> s = 0.0;
    for (std::uint32_t a = offsets[u]; a < offsets[u + 1]; ++a) s += coeff[a] * state[a];
    for (std::uint32_t a = offsets[u]; a < offsets[u + 1]; ++a) {
      state[a] = 2.0 * coeff[a] * s - state[a];
    }
  }
}

}  // namespace pgst::simd::scalar
