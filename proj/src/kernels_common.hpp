#pragma once
// Shared scalar loop bodies for the gate kernels; included by both the scalar
// and AVX2 translation units (AVX2 falls back to these for small strides).
#include <cstddef>
#include <cstdint>
#include <utility>

namespace vdsp::kern::detail {

inline void u1q_scalar_range(double* a, std::size_t base, std::size_t count,
                             std::size_t st, const double m[4]) {
  for (std::size_t i = base; i < base + count; ++i) {
    double x = a[i], y = a[i + st];
    a[i] = m[0] * x + m[1] * y;
    a[i + st] = m[2] * x + m[3] * y;
  }
}

inline void u2q_scalar_range(double* a, std::size_t base, std::size_t count,
                             std::size_t s0, std::size_t s1, const double m[16]) {
  for (std::size_t i = base; i < base + count; ++i) {
    double x0 = a[i], x1 = a[i + s1], x2 = a[i + s0], x3 = a[i + s0 + s1];
    a[i] = m[0] * x0 + m[1] * x1 + m[2] * x2 + m[3] * x3;
    a[i + s1] = m[4] * x0 + m[5] * x1 + m[6] * x2 + m[7] * x3;
    a[i + s0] = m[8] * x0 + m[9] * x1 + m[10] * x2 + m[11] * x3;
    a[i + s0 + s1] = m[12] * x0 + m[13] * x1 + m[14] * x2 + m[15] * x3;
  }
}

inline void swap_scalar_range(double* a, std::size_t base, std::size_t count,
                              std::size_t st) {
  for (std::size_t i = base; i < base + count; ++i) std::swap(a[i], a[i + st]);
}

}  // namespace vdsp::kern::detail
