// Compiled with -mavx2 (and without -mfma): each product and sum is rounded
// separately, matching the scalar reference.

#include <immintrin.h>

#include "kernels_impl.hpp"

namespace qclone::kernels::detail {

namespace {

// [sr, si] * [br0, bi0, br1, bi1] for two interleaved complex numbers.
inline __m256d cmul_broadcast(__m256d vsr, __m256d vsi, __m256d b) {
  const __m256d bswap = _mm256_permute_pd(b, 0x5);
  const __m256d t1 = _mm256_mul_pd(vsr, b);
  const __m256d t2 = _mm256_mul_pd(vsi, bswap);
  return _mm256_addsub_pd(t1, t2);
}

inline double hsum(__m256d v) {
  alignas(32) double lanes[4];
  _mm256_store_pd(lanes, v);
  return (lanes[0] + lanes[1]) + (lanes[2] + lanes[3]);
}

}  // namespace

void gemm_avx2(std::size_t m, std::size_t n, std::size_t k, const cplx* a,
               const cplx* b, cplx* c) {
  for (std::size_t i = 0; i < m * n; ++i) c[i] = cplx{0.0, 0.0};
  for (std::size_t i = 0; i < m; ++i) {
    double* crow = reinterpret_cast<double*>(c + i * n);
    for (std::size_t l = 0; l < k; ++l) {
      const double sr = a[i * k + l].real();
      const double si = a[i * k + l].imag();
      const __m256d vsr = _mm256_set1_pd(sr);
      const __m256d vsi = _mm256_set1_pd(si);
      const double* brow = reinterpret_cast<const double*>(b + l * n);
      std::size_t j = 0;
      for (; j + 2 <= n; j += 2) {
        const __m256d bv = _mm256_loadu_pd(brow + 2 * j);
        const __m256d cv = _mm256_loadu_pd(crow + 2 * j);
        _mm256_storeu_pd(crow + 2 * j,
                         _mm256_add_pd(cv, cmul_broadcast(vsr, vsi, bv)));
      }
      for (; j < n; ++j) {
        const double br = brow[2 * j], bi = brow[2 * j + 1];
        const double pr = sr * br - si * bi;
        const double pi = sr * bi + si * br;
        crow[2 * j] += pr;
        crow[2 * j + 1] += pi;
      }
    }
  }
}

cplx dot_avx2(std::size_t n, const cplx* x, const cplx* y) {
  const double* xd = reinterpret_cast<const double*>(x);
  const double* yd = reinterpret_cast<const double*>(y);
  __m256d acc_re = _mm256_setzero_pd();
  __m256d acc_im = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const __m256d xv = _mm256_loadu_pd(xd + 2 * i);
    const __m256d yv = _mm256_loadu_pd(yd + 2 * i);
    acc_re = _mm256_add_pd(acc_re, _mm256_mul_pd(xv, yv));
    acc_im = _mm256_add_pd(acc_im,
                           _mm256_mul_pd(xv, _mm256_permute_pd(yv, 0x5)));
  }
  alignas(32) double im_lanes[4];
  _mm256_store_pd(im_lanes, acc_im);
  double re = hsum(acc_re);
  double im = (im_lanes[0] - im_lanes[1]) + (im_lanes[2] - im_lanes[3]);
  for (; i < n; ++i) {
    const double xr = x[i].real(), xi = x[i].imag();
    const double yr = y[i].real(), yi = y[i].imag();
    re += xr * yr + xi * yi;
    im += xr * yi - xi * yr;
  }
  return {re, im};
}

double diff_norm_sq_avx2(std::size_t n, const cplx* x, const cplx* y) {
  const double* xd = reinterpret_cast<const double*>(x);
  const double* yd = reinterpret_cast<const double*>(y);
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const __m256d d =
        _mm256_sub_pd(_mm256_loadu_pd(xd + 2 * i), _mm256_loadu_pd(yd + 2 * i));
    acc = _mm256_add_pd(acc, _mm256_mul_pd(d, d));
  }
  double total = hsum(acc);
  for (; i < n; ++i) {
    const double dr = x[i].real() - y[i].real();
    const double di = x[i].imag() - y[i].imag();
    total += dr * dr + di * di;
  }
  return total;
}

void axpy_avx2(std::size_t n, cplx alpha, const cplx* x, cplx* y) {
  const double ar = alpha.real(), ai = alpha.imag();
  const __m256d var = _mm256_set1_pd(ar);
  const __m256d vai = _mm256_set1_pd(ai);
  const double* xd = reinterpret_cast<const double*>(x);
  double* yd = reinterpret_cast<double*>(y);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const __m256d xv = _mm256_loadu_pd(xd + 2 * i);
    const __m256d yv = _mm256_loadu_pd(yd + 2 * i);
    _mm256_storeu_pd(yd + 2 * i,
                     _mm256_add_pd(yv, cmul_broadcast(var, vai, xv)));
  }
  for (; i < n; ++i) {
    const double xr = xd[2 * i], xi = xd[2 * i + 1];
    yd[2 * i] += ar * xr - ai * xi;
    yd[2 * i + 1] += ar * xi + ai * xr;
  }
}

}  // namespace qclone::kernels::detail
