#include "kernels_impl.hpp"

namespace qclone::kernels {

namespace {

constexpr KernelTable kScalar{Isa::scalar, "scalar", &detail::gemm_scalar,
                              &detail::dot_scalar,
                              &detail::diff_norm_sq_scalar,
                              &detail::axpy_scalar};

#if defined(QCLONE_HAVE_AVX2)
constexpr KernelTable kAvx2{Isa::avx2, "avx2", &detail::gemm_avx2,
                            &detail::dot_avx2, &detail::diff_norm_sq_avx2,
                            &detail::axpy_avx2};

bool cpu_has_avx2() {
#if defined(__GNUC__) || defined(__clang__)
  __builtin_cpu_init();
  return __builtin_cpu_supports("avx2");
#else
  return false;
#endif
}
#endif

}  // namespace

const KernelTable& scalar_table() { return kScalar; }

const KernelTable* avx2_table() {
#if defined(QCLONE_HAVE_AVX2)
  static const bool supported = cpu_has_avx2();
  return supported ? &kAvx2 : nullptr;
#else
  return nullptr;
#endif
}

const KernelTable& active() {
  static const KernelTable& chosen =
      avx2_table() != nullptr ? *avx2_table() : kScalar;
  return chosen;
}

}  // namespace qclone::kernels
