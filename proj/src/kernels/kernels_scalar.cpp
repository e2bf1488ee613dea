#include "kernels_impl.hpp"

namespace qclone::kernels::detail {

// Complex products are spelled out in real arithmetic so that the SIMD paths
// can reproduce the exact same rounding sequence.

void gemm_scalar(std::size_t m, std::size_t n, std::size_t k, const cplx* a,
                 const cplx* b, cplx* c) {
  for (std::size_t i = 0; i < m * n; ++i) c[i] = cplx{0.0, 0.0};
  for (std::size_t i = 0; i < m; ++i) {
    cplx* crow = c + i * n;
    for (std::size_t l = 0; l < k; ++l) {
      const double sr = a[i * k + l].real();
      const double si = a[i * k + l].imag();
      const cplx* brow = b + l * n;
      for (std::size_t j = 0; j < n; ++j) {
        const double br = brow[j].real();
        const double bi = brow[j].imag();
        const double pr = sr * br - si * bi;
        const double pi = sr * bi + si * br;
        crow[j] = cplx{crow[j].real() + pr, crow[j].imag() + pi};
      }
    }
  }
}

cplx dot_scalar(std::size_t n, const cplx* x, const cplx* y) {
  double re = 0.0;
  double im = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double xr = x[i].real(), xi = x[i].imag();
    const double yr = y[i].real(), yi = y[i].imag();
    re += xr * yr + xi * yi;
    im += xr * yi - xi * yr;
  }
  return {re, im};
}

double diff_norm_sq_scalar(std::size_t n, const cplx* x, const cplx* y) {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double dr = x[i].real() - y[i].real();
    const double di = x[i].imag() - y[i].imag();
    acc += dr * dr + di * di;
  }
  return acc;
}

void axpy_scalar(std::size_t n, cplx alpha, const cplx* x, cplx* y) {
  const double ar = alpha.real(), ai = alpha.imag();
  for (std::size_t i = 0; i < n; ++i) {
    const double xr = x[i].real(), xi = x[i].imag();
    const double pr = ar * xr - ai * xi;
    const double pi = ar * xi + ai * xr;
    y[i] = cplx{y[i].real() + pr, y[i].imag() + pi};
  }
}

}  // namespace qclone::kernels::detail
