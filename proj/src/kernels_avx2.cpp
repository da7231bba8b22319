// AVX2 variants of the row kernels. Compiled with -mavx2 -ffp-contract=off in
// its own translation unit; only reached after the cpuid check. mul and add
// stay separate (no FMA) so each lane matches the scalar reference bit for bit.

#if defined(__x86_64__) || defined(_M_X64)

#include <immintrin.h>

#include <cstddef>

namespace smax::kernels::detail {

bool avx2_available() { return __builtin_cpu_supports("avx2"); }

void axpy_avx2(double* r, const double* x, double a, std::size_t len) {
  const __m256d va = _mm256_set1_pd(a);
  std::size_t i = 0;
  for (; i + 4 <= len; i += 4) {
    __m256d vr = _mm256_loadu_pd(r + i);
    __m256d vx = _mm256_loadu_pd(x + i);
    vr = _mm256_add_pd(vr, _mm256_mul_pd(va, vx));
    _mm256_storeu_pd(r + i, vr);
  }
  for (; i < len; ++i) r[i] += a * x[i];
}

void scale_avx2(double* r, double a, std::size_t len) {
  const __m256d va = _mm256_set1_pd(a);
  std::size_t i = 0;
  for (; i + 4 <= len; i += 4) {
    _mm256_storeu_pd(r + i, _mm256_mul_pd(_mm256_loadu_pd(r + i), va));
  }
  for (; i < len; ++i) r[i] *= a;
}

}  // namespace smax::kernels::detail

#endif
