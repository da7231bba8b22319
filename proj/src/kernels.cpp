#include "smax/kernels.hpp"

namespace smax::kernels {

void axpy_scalar(double* r, const double* x, double a, std::size_t len) {
  for (std::size_t i = 0; i < len; ++i) r[i] += a * x[i];
}

void scale_scalar(double* r, double a, std::size_t len) {
  for (std::size_t i = 0; i < len; ++i) r[i] *= a;
}

#if defined(__x86_64__) || defined(_M_X64)
namespace detail {
void axpy_avx2(double* r, const double* x, double a, std::size_t len);
void scale_avx2(double* r, double a, std::size_t len);
bool avx2_available();
}  // namespace detail
#endif

#if defined(__aarch64__)
namespace detail {
void axpy_neon(double* r, const double* x, double a, std::size_t len);
void scale_neon(double* r, double a, std::size_t len);
}  // namespace detail
#endif

namespace {

using AxpyFn = void (*)(double*, const double*, double, std::size_t);
using ScaleFn = void (*)(double*, double, std::size_t);

struct Dispatch {
  AxpyFn axpy = axpy_scalar;
  ScaleFn scale = scale_scalar;
  std::string name = "scalar";

  Dispatch() {
#if defined(__x86_64__) || defined(_M_X64)
    if (detail::avx2_available()) {
      axpy = detail::axpy_avx2;
      scale = detail::scale_avx2;
      name = "avx2";
    }
#elif defined(__aarch64__)
    axpy = detail::axpy_neon;
    scale = detail::scale_neon;
    name = "neon";
#endif
  }
};

const Dispatch& dispatch() {
  static const Dispatch d;
  return d;
}

}  // namespace

void axpy(double* r, const double* x, double a, std::size_t len) {
  dispatch().axpy(r, x, a, len);
}

void scale(double* r, double a, std::size_t len) { dispatch().scale(r, a, len); }

const std::string& active_variant() { return dispatch().name; }

}  // namespace smax::kernels
