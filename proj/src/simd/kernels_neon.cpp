// AArch64 variant. Mirrors kernels_avx2.cpp with two lanes per register.

#include <arm_neon.h>

#include <cmath>
#include <vector>

#include "pgst/simd/kernels.hpp"
#include "trig_reduction.hpp"

namespace pgst::simd::neon {
namespace {

using namespace pgst::simd::detail;

inline float64x2_t horner(const double* c, int terms, float64x2_t z) {
  float64x2_t acc = vdupq_n_f64(c[terms - 1]);
  for (int n = terms - 2; n >= 0; --n) acc = vfmaq_f64(vdupq_n_f64(c[n]), acc, z);
  return acc;
}

inline float64x2_t reduced_cos(float64x2_t t, float64x2_t a_hi, float64x2_t a_lo) {
  const float64x2_t j = vrndnq_f64(vmulq_f64(t, a_hi));
  // fma(t, a_hi, -j) then + t * a_lo
  const float64x2_t r = vfmaq_f64(vfmaq_f64(vnegq_f64(j), t, a_hi), t, a_lo);
  const float64x2_t x = vfmaq_f64(vmulq_f64(r, vdupq_n_f64(kPiOver2Lo)), r, vdupq_n_f64(kPiOver2Hi));
  const float64x2_t z = vmulq_f64(x, x);
  const float64x2_t c = horner(kCos, kCosTerms, z);
  const float64x2_t s = vmulq_f64(x, horner(kSin, kSinTerms, z));

  const float64x2_t floor_quarter = vrndmq_f64(vmulq_f64(j, vdupq_n_f64(0.25)));
  const float64x2_t q = vfmsq_f64(j, floor_quarter, vdupq_n_f64(4.0));
  const uint64x2_t is1 = vceqq_f64(q, vdupq_n_f64(1.0));
  const uint64x2_t is2 = vceqq_f64(q, vdupq_n_f64(2.0));
  const uint64x2_t is3 = vceqq_f64(q, vdupq_n_f64(3.0));
  const float64x2_t v = vbslq_f64(vorrq_u64(is1, is3), s, c);
  return vbslq_f64(vorrq_u64(is1, is2), vnegq_f64(v), v);
}

}  // namespace

void cos_sum(std::span<const double> theta, std::span<const double> weight, std::int64_t t0,
             std::span<double> out) {
  const std::size_t k_count = theta.size();
  std::vector<double> a_hi(k_count);
  std::vector<double> a_lo(k_count);
  for (std::size_t k = 0; k < k_count; ++k) {
    a_hi[k] = theta[k] * kTwoOverPiHi;
    a_lo[k] = std::fma(theta[k], kTwoOverPiHi, -a_hi[k]) + theta[k] * kTwoOverPiLo;
  }
  const double lane_init[2] = {0.0, 1.0};
  const float64x2_t lane = vld1q_f64(lane_init);
  const std::size_t n = out.size();
  for (std::size_t i = 0; i < n; i += 2) {
    const float64x2_t t = vaddq_f64(vdupq_n_f64(static_cast<double>(t0 + static_cast<std::int64_t>(i))), lane);
    float64x2_t acc = vdupq_n_f64(0.0);
    for (std::size_t k = 0; k < k_count; ++k) {
      const float64x2_t v = reduced_cos(t, vdupq_n_f64(a_hi[k]), vdupq_n_f64(a_lo[k]));
      acc = vfmaq_f64(acc, vdupq_n_f64(weight[k]), v);
    }
    if (i + 2 <= n) {
      vst1q_f64(out.data() + i, acc);
    } else {
      out[i] = vgetq_lane_f64(acc, 0);
    }
  }
}

void coin_reflect(std::span<const std::uint32_t> offsets, std::span<const double> coeff,
                  std::span<std::complex<double>> state) {
  auto* x = reinterpret_cast<double*>(state.data());
  for (std::size_t u = 0; u + 1 < offsets.size(); ++u) {
    float64x2_t s = vdupq_n_f64(0.0);
    for (std::uint32_t a = offsets[u]; a < offsets[u + 1]; ++a) {
      s = vfmaq_f64(s, vdupq_n_f64(coeff[a]), vld1q_f64(x + 2 * a));
    }
    for (std::uint32_t a = offsets[u]; a < offsets[u + 1]; ++a) {
      // 2 c s - x
      const float64x2_t xa = vld1q_f64(x + 2 * a);
      vst1q_f64(x + 2 * a, vnegq_f64(vfmsq_f64(xa, vdupq_n_f64(2.0 * coeff[a]), s)));
    }
  }
}

}  // namespace pgst::simd::neon
