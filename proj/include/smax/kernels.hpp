#pragma once

#include <cstddef>
#include <string>

namespace smax::kernels {

// Dense row primitives behind the simplex pivots. Every variant performs the
// same elementwise IEEE operations in the same per-element order, so SIMD and
// scalar results are bit-identical; the equivalence tests assert exactly that.

/// r[i] += a * x[i] for i in [0, len).
void axpy(double* r, const double* x, double a, std::size_t len);

/// r[i] *= a for i in [0, len).
void scale(double* r, double a, std::size_t len);

/// Always-scalar reference implementations (the oracle side of the
/// equivalence tests; also the fallback on CPUs without SIMD support).
void axpy_scalar(double* r, const double* x, double a, std::size_t len);
void scale_scalar(double* r, double a, std::size_t len);

/// Name of the variant selected at runtime: "scalar", "avx2" or "neon".
const std::string& active_variant();

}  // namespace smax::kernels
