#pragma once

// Inner loops over interleaved complex<double> buffers.
//
// Every kernel has a scalar reference implementation. SIMD variants are
// compiled into their own translation units and picked once at startup from
// what the CPU reports. The gemm variants accumulate in the same order as the
// scalar reference and are bit-identical to it; the reductions (dot,
// diff_norm_sq) split the sum across lanes and agree to a few ulp.

#include <complex>
#include <cstddef>
#include <span>

namespace qclone::kernels {

using cplx = std::complex<double>;

enum class Isa { scalar, avx2 };

struct KernelTable {
  Isa isa;
  const char* name;
  /// c[m x n] = a[m x k] * b[k x n], all row-major. c must not alias a or b.
  void (*gemm)(std::size_t m, std::size_t n, std::size_t k, const cplx* a,
               const cplx* b, cplx* c);
  /// sum_i conj(x_i) * y_i
  cplx (*dot)(std::size_t n, const cplx* x, const cplx* y);
  /// sum_i |x_i - y_i|^2
  double (*diff_norm_sq)(std::size_t n, const cplx* x, const cplx* y);
  /// y += alpha * x
  void (*axpy)(std::size_t n, cplx alpha, const cplx* x, cplx* y);
};

const KernelTable& scalar_table();

/// nullptr when the build has no AVX2 path or the CPU lacks AVX2.
const KernelTable* avx2_table();

/// Best table for this CPU, chosen on first use and fixed thereafter.
const KernelTable& active();

inline cplx dot(std::span<const cplx> x, std::span<const cplx> y) {
  return active().dot(x.size(), x.data(), y.data());
}

inline double diff_norm_sq(std::span<const cplx> x, std::span<const cplx> y) {
  return active().diff_norm_sq(x.size(), x.data(), y.data());
}

}  // namespace qclone::kernels
