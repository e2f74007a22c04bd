// AVX2 gate kernels. Same operation order as the scalar kernels and compiled
// with -ffp-contract=off, so results are bit-identical to the scalar path.
#include <immintrin.h>

#include <cstddef>

#include "kernels_common.hpp"

namespace vdsp::kern::detail {

void u1q_avx2(double* a, int n, int q, const double* m) {
  const std::size_t dim = std::size_t(1) << n;
  const std::size_t st = std::size_t(1) << (n - 1 - q);
  if (st < 4) {
    for (std::size_t base = 0; base < dim; base += st << 1)
      u1q_scalar_range(a, base, st, st, m);
    return;
  }
  const __m256d m00 = _mm256_set1_pd(m[0]), m01 = _mm256_set1_pd(m[1]);
  const __m256d m10 = _mm256_set1_pd(m[2]), m11 = _mm256_set1_pd(m[3]);
  for (std::size_t base = 0; base < dim; base += st << 1)
    for (std::size_t i = base; i < base + st; i += 4) {
      __m256d x = _mm256_loadu_pd(a + i);
      __m256d y = _mm256_loadu_pd(a + i + st);
      _mm256_storeu_pd(a + i, _mm256_add_pd(_mm256_mul_pd(m00, x), _mm256_mul_pd(m01, y)));
      _mm256_storeu_pd(a + i + st,
                       _mm256_add_pd(_mm256_mul_pd(m10, x), _mm256_mul_pd(m11, y)));
    }
}

void cx_avx2(double* a, int n, int qc, int qt) {
  const std::size_t dim = std::size_t(1) << n;
  const std::size_t sc = std::size_t(1) << (n - 1 - qc);
  const std::size_t st = std::size_t(1) << (n - 1 - qt);
  const std::size_t hi = sc > st ? sc : st, lo = sc > st ? st : sc;
  for (std::size_t h = 0; h < dim; h += hi << 1)
    for (std::size_t v = h; v < h + hi; v += lo << 1) {
      const std::size_t base = v + sc;
      if (lo < 4) {
        swap_scalar_range(a, base, lo, st);
        continue;
      }
      for (std::size_t i = base; i < base + lo; i += 4) {
        __m256d x = _mm256_loadu_pd(a + i);
        __m256d y = _mm256_loadu_pd(a + i + st);
        _mm256_storeu_pd(a + i, y);
        _mm256_storeu_pd(a + i + st, x);
      }
    }
}

void u2q_avx2(double* a, int n, int q0, int q1, const double* m) {
  const std::size_t dim = std::size_t(1) << n;
  const std::size_t s0 = std::size_t(1) << (n - 1 - q0);
  const std::size_t s1 = std::size_t(1) << (n - 1 - q1);
  if (s1 < 4) {
    for (std::size_t h = 0; h < dim; h += s0 << 1)
      for (std::size_t v = h; v < h + s0; v += s1 << 1)
        u2q_scalar_range(a, v, s1, s0, s1, m);
    return;
  }
  __m256d mm[16];
  for (int k = 0; k < 16; ++k) mm[k] = _mm256_set1_pd(m[k]);
  for (std::size_t h = 0; h < dim; h += s0 << 1)
    for (std::size_t v = h; v < h + s0; v += s1 << 1)
      for (std::size_t i = v; i < v + s1; i += 4) {
        __m256d x0 = _mm256_loadu_pd(a + i);
        __m256d x1 = _mm256_loadu_pd(a + i + s1);
        __m256d x2 = _mm256_loadu_pd(a + i + s0);
        __m256d x3 = _mm256_loadu_pd(a + i + s0 + s1);
        // left-to-right add chain matches the scalar kernel's rounding
        auto row = [&](int r) {
          __m256d acc = _mm256_mul_pd(mm[4 * r + 0], x0);
          acc = _mm256_add_pd(acc, _mm256_mul_pd(mm[4 * r + 1], x1));
          acc = _mm256_add_pd(acc, _mm256_mul_pd(mm[4 * r + 2], x2));
          return _mm256_add_pd(acc, _mm256_mul_pd(mm[4 * r + 3], x3));
        };
        __m256d r0 = row(0), r1 = row(1), r2 = row(2), r3 = row(3);
        _mm256_storeu_pd(a + i, r0);
        _mm256_storeu_pd(a + i + s1, r1);
        _mm256_storeu_pd(a + i + s0, r2);
        _mm256_storeu_pd(a + i + s0 + s1, r3);
      }
}

}  // namespace vdsp::kern::detail
