// SPDX-License-Identifier: Apache-2.0
#include <cstdlib>
#include <string_view>

#include "loraseq/kernels.hpp"

namespace loraseq::kernels {

namespace {

bool cpu_has_avx2_fma() noexcept {
#if defined(LORASEQ_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
  __builtin_cpu_init();
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

KernelTable select() noexcept {
  const char* forced = std::getenv("LORASEQ_ISA");
  if (forced != nullptr && std::string_view(forced) == "scalar") return scalar_kernels();
  if (auto t = avx2_kernels()) return *t;
  if (auto t = neon_kernels()) return *t;
  return scalar_kernels();
}

}  // namespace

std::string_view isa_name(Isa isa) noexcept {
  switch (isa) {
    case Isa::scalar: return "scalar";
    case Isa::avx2: return "avx2";
    case Isa::neon: return "neon";
  }
  return "unknown";
}

const KernelTable& scalar_kernels() noexcept {
  static const KernelTable table{Isa::scalar, &detail::dot_scalar, &detail::axpy_scalar,
                                 &detail::scale_scalar};
  return table;
}

std::optional<KernelTable> avx2_kernels() noexcept {
#if defined(LORASEQ_HAVE_AVX2)
  if (cpu_has_avx2_fma()) {
    return KernelTable{Isa::avx2, &detail::dot_avx2, &detail::axpy_avx2, &detail::scale_avx2};
  }
#endif
  return std::nullopt;
}

std::optional<KernelTable> neon_kernels() noexcept {
#if defined(LORASEQ_HAVE_NEON)
  // Advanced SIMD is mandatory on AArch64.
  return KernelTable{Isa::neon, &detail::dot_neon, &detail::axpy_neon, &detail::scale_neon};
#else
  return std::nullopt;
#endif
}

const KernelTable& active() noexcept {
  static const KernelTable table = select();
  return table;
}

}  // namespace loraseq::kernels
