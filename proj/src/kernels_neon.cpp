// NEON variants; baseline on aarch64, so no runtime feature probe is needed.
// vmulq + vaddq keep mul and add separate to stay bit-identical with scalar.

#if defined(__aarch64__)

#include <arm_neon.h>

#include <cstddef>

namespace smax::kernels::detail {

void axpy_neon(double* r, const double* x, double a, std::size_t len) {
  const float64x2_t va = vdupq_n_f64(a);
  std::size_t i = 0;
  for (; i + 2 <= len; i += 2) {
    float64x2_t vr = vld1q_f64(r + i);
    float64x2_t vx = vld1q_f64(x + i);
    vr = vaddq_f64(vr, vmulq_f64(va, vx));
    vst1q_f64(r + i, vr);
  }
  for (; i < len; ++i) r[i] += a * x[i];
}

void scale_neon(double* r, double a, std::size_t len) {
  const float64x2_t va = vdupq_n_f64(a);
  std::size_t i = 0;
  for (; i + 2 <= len; i += 2) {
    vst1q_f64(r + i, vmulq_f64(vld1q_f64(r + i), va));
  }
  for (; i < len; ++i) r[i] *= a;
}

}  // namespace smax::kernels::detail

#endif
