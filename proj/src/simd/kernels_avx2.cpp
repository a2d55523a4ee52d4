// Compiled with -mavx2 -mfma; only reached after a runtime CPU check.

#include <immintrin.h>

#include <cmath>
#include <vector>

#include "pgst/simd/kernels.hpp"
#include "trig_reduction.hpp"

namespace pgst::simd::avx2 {
namespace {

using namespace pgst::simd::detail;

inline __m256d horner(const double* c, int terms, __m256d z) {
  __m256d acc = _mm256_set1_pd(c[terms - 1]);
  for (int n = terms - 2; n >= 0; --n) acc = _mm256_fmadd_pd(acc, z, _mm256_set1_pd(c[n]));
  return acc;
}

// cos(t * theta) with theta * 2/pi = a_hi + a_lo.
inline __m256d reduced_cos(__m256d t, __m256d a_hi, __m256d a_lo) {
  const __m256d j = _mm256_round_pd(_mm256_mul_pd(t, a_hi), _MM_FROUND_TO_NEAREST_INT | _MM_FROUND_NO_EXC);
  const __m256d r = _mm256_fmadd_pd(t, a_lo, _mm256_fmsub_pd(t, a_hi, j));
  const __m256d x = _mm256_fmadd_pd(r, _mm256_set1_pd(kPiOver2Hi), _mm256_mul_pd(r, _mm256_set1_pd(kPiOver2Lo)));
  const __m256d z = _mm256_mul_pd(x, x);
  const __m256d c = horner(kCos, kCosTerms, z);
  const __m256d s = _mm256_mul_pd(x, horner(kSin, kSinTerms, z));

  const __m256d quarter = _mm256_mul_pd(j, _mm256_set1_pd(0.25));
  const __m256d q = _mm256_fnmadd_pd(_mm256_floor_pd(quarter), _mm256_set1_pd(4.0), j);
  const __m256d is1 = _mm256_cmp_pd(q, _mm256_set1_pd(1.0), _CMP_EQ_OQ);
  const __m256d is2 = _mm256_cmp_pd(q, _mm256_set1_pd(2.0), _CMP_EQ_OQ);
  const __m256d is3 = _mm256_cmp_pd(q, _mm256_set1_pd(3.0), _CMP_EQ_OQ);
  const __m256d use_sin = _mm256_or_pd(is1, is3);
  const __m256d negate = _mm256_or_pd(is1, is2);
  const __m256d v = _mm256_blendv_pd(c, s, use_sin);
  return _mm256_xor_pd(v, _mm256_and_pd(negate, _mm256_set1_pd(-0.0)));
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

  const __m256d lane = _mm256_set_pd(3.0, 2.0, 1.0, 0.0);
  const std::size_t n = out.size();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d t = _mm256_add_pd(_mm256_set1_pd(static_cast<double>(t0 + static_cast<std::int64_t>(i))), lane);
    __m256d acc = _mm256_setzero_pd();
    for (std::size_t k = 0; k < k_count; ++k) {
      const __m256d v = reduced_cos(t, _mm256_set1_pd(a_hi[k]), _mm256_set1_pd(a_lo[k]));
      acc = _mm256_fmadd_pd(_mm256_set1_pd(weight[k]), v, acc);
    }
    _mm256_storeu_pd(out.data() + i, acc);
  }
  if (i < n) {
    // Pad the tail into one more vector so every element uses the same arithmetic.
    alignas(32) double buf[4];
    const __m256d t = _mm256_add_pd(_mm256_set1_pd(static_cast<double>(t0 + static_cast<std::int64_t>(i))), lane);
    __m256d acc = _mm256_setzero_pd();
    for (std::size_t k = 0; k < k_count; ++k) {
      const __m256d v = reduced_cos(t, _mm256_set1_pd(a_hi[k]), _mm256_set1_pd(a_lo[k]));
      acc = _mm256_fmadd_pd(_mm256_set1_pd(weight[k]), v, acc);
    }
    _mm256_store_pd(buf, acc);
    for (std::size_t r = 0; i + r < n; ++r) out[i + r] = buf[r];
  }
}

void coin_reflect(std::span<const std::uint32_t> offsets, std::span<const double> coeff,
                  std::span<std::complex<double>> state) {
  auto* x = reinterpret_cast<double*>(state.data());
  const double* c = coeff.data();
  for (std::size_t u = 0; u + 1 < offsets.size(); ++u) {
    const std::uint32_t begin = offsets[u];
    const std::uint32_t end = offsets[u + 1];

    // Pairs of complex amplitudes per register: (re0, im0, re1, im1).
    __m256d acc = _mm256_setzero_pd();
    std::uint32_t a = begin;
    for (; a + 2 <= end; a += 2) {
      const __m256d cc = _mm256_permute4x64_pd(_mm256_castpd128_pd256(_mm_loadu_pd(c + a)), 0x50);
      acc = _mm256_fmadd_pd(cc, _mm256_loadu_pd(x + 2 * a), acc);
    }
    __m128d s = _mm_add_pd(_mm256_castpd256_pd128(acc), _mm256_extractf128_pd(acc, 1));
    if (a < end) s = _mm_fmadd_pd(_mm_set1_pd(c[a]), _mm_loadu_pd(x + 2 * a), s);

    const __m256d s2 = _mm256_broadcast_pd(&s);
    a = begin;
    for (; a + 2 <= end; a += 2) {
      const __m256d cc = _mm256_permute4x64_pd(_mm256_castpd128_pd256(_mm_loadu_pd(c + a)), 0x50);
      const __m256d cc2 = _mm256_add_pd(cc, cc);
      _mm256_storeu_pd(x + 2 * a, _mm256_fmsub_pd(cc2, s2, _mm256_loadu_pd(x + 2 * a)));
    }
    if (a < end) {
      const __m128d c2 = _mm_set1_pd(2.0 * c[a]);
      _mm_storeu_pd(x + 2 * a, _mm_fmsub_pd(c2, s, _mm_loadu_pd(x + 2 * a)));
    }
  }
}

}  // namespace pgst::simd::avx2
