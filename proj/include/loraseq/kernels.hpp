// SPDX-License-Identifier: Apache-2.0
#pragma once

// Inner-loop kernels behind every matrix product. Each kernel has a portable
// scalar reference implementation plus SIMD variants (AVX2+FMA on x86-64,
// NEON on AArch64). The variant is picked once at startup from the running
// CPU; setting LORASEQ_ISA=scalar in the environment forces the reference
// path.

#include <cstddef>
#include <optional>
#include <string_view>

namespace loraseq::kernels {

enum class Isa { scalar, avx2, neon };

std::string_view isa_name(Isa isa) noexcept;

struct KernelTable {
  Isa isa;
  /// sum_i x[i] * y[i]
  double (*dot)(const double* x, const double* y, std::size_t n);
  /// y[i] += alpha * x[i]
  void (*axpy)(double alpha, const double* x, double* y, std::size_t n);
  /// y[i] *= alpha
  void (*scale)(double alpha, double* y, std::size_t n);
};

const KernelTable& scalar_kernels() noexcept;

/// SIMD tables, present only when compiled in *and* supported by this CPU.
std::optional<KernelTable> avx2_kernels() noexcept;
std::optional<KernelTable> neon_kernels() noexcept;

/// The table used by the matrix routines.
const KernelTable& active() noexcept;

namespace detail {
double dot_scalar(const double* x, const double* y, std::size_t n);
void axpy_scalar(double alpha, const double* x, double* y, std::size_t n);
void scale_scalar(double alpha, double* y, std::size_t n);

#if defined(LORASEQ_HAVE_AVX2)
double dot_avx2(const double* x, const double* y, std::size_t n);
void axpy_avx2(double alpha, const double* x, double* y, std::size_t n);
void scale_avx2(double alpha, double* y, std::size_t n);
#endif

#if defined(LORASEQ_HAVE_NEON)
double dot_neon(const double* x, const double* y, std::size_t n);
void axpy_neon(double alpha, const double* x, double* y, std::size_t n);
void scale_neon(double alpha, double* y, std::size_t n);
#endif
}  // namespace detail

}  // namespace loraseq::kernels
