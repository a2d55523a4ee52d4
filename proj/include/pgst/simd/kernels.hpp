#pragma once

// Data-parallel inner loops, each with a scalar reference and vector
// variants selected at runtime.
//
// Selection: PGST_SIMD=scalar|avx2|neon|auto (default auto). A request for
// an ISA that is not compiled in or not supported by the CPU falls back to
// the best available one.

#include <complex>
#include <cstdint>
#include <span>

namespace pgst::simd {

enum class Isa { kScalar, kAvx2, kNeon };

const char* to_string(Isa isa) noexcept;

/// out[i] = sum_k weight[k] * cos((t0 + i) * theta[k]).
using CosSumFn = void (*)(std::span<const double> theta, std::span<const double> weight,
                          std::int64_t t0, std::span<double> out);

/// For every vertex u, with block x = state[offsets[u], offsets[u+1]) and real
/// coefficients c on the same range: x <- 2 c (c . x) - x.
using CoinReflectFn = void (*)(std::span<const std::uint32_t> offsets,
                               std::span<const double> coeff,
                               std::span<std::complex<double>> state);

struct KernelTable {
  Isa isa;
  CosSumFn cos_sum;
  CoinReflectFn coin_reflect;
};

/// nullptr when the ISA is not compiled in or the CPU lacks it.
const KernelTable* kernels_for(Isa isa) noexcept;

Isa best_available_isa() noexcept;

/// Table chosen once per process from PGST_SIMD and CPU support.
const KernelTable& active_kernels();

namespace scalar {
void cos_sum(std::span<const double> theta, std::span<const double> weight, std::int64_t t0,
             std::span<double> out);
void coin_reflect(std::span<const std::uint32_t> offsets, std::span<const double> coeff,
                  std::span<std::complex<double>> state);
}  // namespace scalar

#if defined(PGST_HAVE_AVX2)
namespace avx2 {
void cos_sum(std::span<const double> theta, std::span<const double> weight, std::int64_t t0,
             std::span<double> out);
void coin_reflect(std::span<const std::uint32_t> offsets, std::span<const double> coeff,
                  std::span<std::complex<double>> state);
}  // namespace avx2
#endif

#if defined(PGST_HAVE_NEON)
namespace neon {
void cos_sum(std::span<const double> theta, std::span<const double> weight, std::int64_t t0,
             std::span<double> out);
void coin_reflect(std::span<const std::uint32_t> offsets, std::span<const double> coeff,
                  std::span<std::complex<double>> state);
}  // namespace neon
#endif

}  // namespace pgst::simd
