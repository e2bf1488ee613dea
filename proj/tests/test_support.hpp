#pragma once

// Shared helpers for the unit tests: seeded random inputs and independent
// reference computations.

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "qclone/matrix.hpp"
#include "qclone/state.hpp"

namespace qtest {

using qclone::ComplexMatrix;
using qclone::cplx;

inline std::mt19937_64& rng() {
  static std::mt19937_64 engine(42);
  return engine;
}

inline double uniform(double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng());
}

inline cplx gaussian_c() {
  std::normal_distribution<double> g;
  return {g(rng()), g(rng())};
}

inline ComplexMatrix random_matrix(std::size_t r, std::size_t c) {
  ComplexMatrix m(r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) m(i, j) = gaussian_c();
  return m;
}

inline qclone::PureQubit random_state() {
  return qclone::pure_state(gaussian_c(), gaussian_c());
}

inline qclone::PureQubit random_real_state() {
  return qclone::real_state(uniform(0.0, 1.0), uniform(0.0, 1.0) < 0.5 ? -1.0 : 1.0);
}

inline qclone::PureQubit random_equator_state() {
  return qclone::pure_state(1.0, std::polar(1.0, uniform(0.0, 6.283185307179586)));
}

/// Random n x n density operator: A A^dagger / Tr.
inline ComplexMatrix random_density(std::size_t n) {
  const ComplexMatrix a = random_matrix(n, n);
  ComplexMatrix rho(n, n);
  cplx tr = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      cplx s = 0.0;
      for (std::size_t k = 0; k < n; ++k) s += a(i, k) * std::conj(a(j, k));
      rho(i, j) = s;
    }
    tr += rho(i, i);
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) rho(i, j) /= tr;
  return rho;
}

/// Naive triple-loop product, independent of the kernel tables.
inline ComplexMatrix naive_product(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j) {
      cplx s = 0.0;
      for (std::size_t k = 0; k < a.cols(); ++k) s += a(i, k) * b(k, j);
      c(i, j) = s;
    }
  return c;
}

inline double max_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
  return qclone::max_abs_diff(a, b);
}

}  // namespace qtest
