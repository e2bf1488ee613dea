#pragma once

#include "qclone/kernels.hpp"

namespace qclone::kernels::detail {

void gemm_scalar(std::size_t m, std::size_t n, std::size_t k, const cplx* a,
                 const cplx* b, cplx* c);
cplx dot_scalar(std::size_t n, const cplx* x, const cplx* y);
double diff_norm_sq_scalar(std::size_t n, const cplx* x, const cplx* y);
void axpy_scalar(std::size_t n, cplx alpha, const cplx* x, cplx* y);

#if defined(QCLONE_HAVE_AVX2)
void gemm_avx2(std::size_t m, std::size_t n, std::size_t k, const cplx* a,
               const cplx* b, cplx* c);
cplx dot_avx2(std::size_t n, const cplx* x, const cplx* y);
double diff_norm_sq_avx2(std::size_t n, const cplx* x, const cplx* y);
void axpy_avx2(std::size_t n, cplx alpha, const cplx* x, cplx* y);
#endif

}  // namespace qclone::kernels::detail
