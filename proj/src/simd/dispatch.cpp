#include <cstdlib>
#include <string_view>

#include "pgst/simd/kernels.hpp"

namespace pgst::simd {
namespace {

constexpr KernelTable kScalarTable{Isa::kScalar, &scalar::cos_sum, &scalar::coin_reflect};
#if defined(PGST_HAVE_AVX2)
constexpr KernelTable kAvx2Table{Isa::kAvx2, &avx2::cos_sum, &avx2::coin_reflect};
#endif
#if defined(PGST_HAVE_NEON)
constexpr KernelTable kNeonTable{Isa::kNeon, &neon::cos_sum, &neon::coin_reflect};
#endif

bool cpu_has_avx2() noexcept {
#if defined(PGST_HAVE_AVX2) && (defined(__x86_64__) || defined(__i386__))
  __builtin_cpu_init();
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

const KernelTable& select_from_env() {
  const char* env = std::getenv("PGST_SIMD");
  const std::string_view want = env ? env : "auto";
  const KernelTable* table = nullptr;
  if (want == "scalar") table = kernels_for(Isa::kScalar);
  if (want == "avx2") table = kernels_for(Isa::kAvx2);
  if (want == "neon") table = kernels_for(Isa::kNeon);
  if (table == nullptr) table = kernels_for(best_available_isa());
  return *table;
}

}  // namespace

const char* to_string(Isa isa) noexcept {
  switch (isa) {
    case Isa::kScalar: return "scalar";
    case Isa::kAvx2: return "avx2";
    case Isa::kNeon: return "neon";
  }
  return "unknown";
}

const KernelTable* kernels_for(Isa isa) noexcept {
  switch (isa) {
    case Isa::kScalar:
      return &kScalarTable;
    case Isa::kAvx2:
#if defined(PGST_HAVE_AVX2)
      if (cpu_has_avx2()) return &kAvx2Table;
#endif
      return nullptr;
    case Isa::kNeon:
#if defined(PGST_HAVE_NEON)
      return &kNeonTable;
#else
      return nullptr;
#endif
  }
  return nullptr;
}

Isa best_available_isa() noexcept {
  if (kernels_for(Isa::kAvx2)) return Isa::kAvx2;
  if (kernels_for(Isa::kNeon)) return Isa::kNeon;
  return Isa::kScalar;
}

const KernelTable& active_kernels() {
  static const KernelTable& table = select_from_env();
  return table;
}

}  // namespace pgst::simd
