#include <cmath>
#include <cstring>
#include <vector>

#include "doctest.h"
#include "qclone/kernels.hpp"
#include "test_support.hpp"

using qclone::cplx;
namespace k = qclone::kernels;

namespace {

std::vector<cplx> random_vec(std::size_t n) {
  std::vector<cplx> v(n);
  for (auto& x : v) x = qtest::gaussian_c();
  return v;
}

bool bit_equal(const std::vector<cplx>& a, const std::vector<cplx>& b) {
  return a.size() == b.size() &&
         std::memcmp(a.data(), b.data(), a.size() * sizeof(cplx)) == 0;
}

// Sizes around the vector width, including empty and odd tails.
const std::size_t kSizes[] = {0, 1, 2, 3, 4, 5, 7, 8, 9, 16, 31, 64};

}  // namespace

TEST_CASE("active table is one of the known ones") {
  const k::KernelTable& t = k::active();
  CHECK((t.isa == k::Isa::scalar || t.isa == k::Isa::avx2));
  if (k::avx2_table() != nullptr) CHECK(t.isa == k::Isa::avx2);
  MESSAGE("active kernels: " << t.name);
}

TEST_CASE("scalar reference against plain complex arithmetic") {
  const k::KernelTable& s = k::scalar_table();
  for (std::size_t n : kSizes) {
    const auto x = random_vec(n);
    const auto y = random_vec(n);
    cplx dot = 0.0;
    double dist = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      dot += std::conj(x[i]) * y[i];
      dist += std::norm(x[i] - y[i]);
    }
    CHECK(std::abs(s.dot(n, x.data(), y.data()) - dot) <= 1e-13 * (1.0 + n));
    CHECK(std::abs(s.diff_norm_sq(n, x.data(), y.data()) - dist) <= 1e-13 * (1.0 + n));
  }
}

TEST_CASE("SIMD kernels are equivalent to the scalar reference") {
  const k::KernelTable* simd = k::avx2_table();
  if (simd == nullptr) {
    MESSAGE("no SIMD kernels on this machine; nothing to compare");
    return;
  }
  const k::KernelTable& ref = k::scalar_table();

  SUBCASE("gemm is bit-identical") {
    for (std::size_t m : {1, 2, 3, 8}) {
      for (std::size_t n : kSizes) {
        if (n == 0) continue;
        for (std::size_t kk : {1, 2, 5}) {
          const auto a = random_vec(m * kk);
          const auto b = random_vec(kk * n);
          std::vector<cplx> c_ref(m * n), c_simd(m * n, cplx{7.0, 7.0});
          ref.gemm(m, n, kk, a.data(), b.data(), c_ref.data());
          simd->gemm(m, n, kk, a.data(), b.data(), c_simd.data());
          CHECK(bit_equal(c_ref, c_simd));
        }
      }
    }
  }
  SUBCASE("axpy is bit-identical") {
    for (std::size_t n : kSizes) {
      const auto x = random_vec(n);
      auto y_ref = random_vec(n);
      auto y_simd = y_ref;
      const cplx alpha = qtest::gaussian_c();
      ref.axpy(n, alpha, x.data(), y_ref.data());
      simd->axpy(n, alpha, x.data(), y_simd.data());
      CHECK(bit_equal(y_ref, y_simd));
    }
  }
  SUBCASE("reductions agree to a few ulp") {
    for (std::size_t n : kSizes) {
      const auto x = random_vec(n);
      const auto y = random_vec(n);
      double mag = 0.0;
      for (std::size_t i = 0; i < n; ++i) mag += std::abs(x[i]) * std::abs(y[i]);
      const double bound = 8.0 * n * 2.2e-16 * (mag + 1.0);
      CHECK(std::abs(ref.dot(n, x.data(), y.data()) - simd->dot(n, x.data(), y.data())) <=
            bound);
      double dist = 0.0;
      for (std::size_t i = 0; i < n; ++i) dist += std::norm(x[i] - y[i]);
      CHECK(std::abs(ref.diff_norm_sq(n, x.data(), y.data()) -
                     simd->diff_norm_sq(n, x.data(), y.data())) <=
            8.0 * n * 2.2e-16 * (dist + 1.0));
    }
  }
  SUBCASE("identical inputs give exactly zero distance") {
    const auto x = random_vec(13);
    CHECK(simd->diff_norm_sq(13, x.data(), x.data()) == 0.0);
    CHECK(ref.diff_norm_sq(13, x.data(), x.data()) == 0.0);
  }
}
