#include "vdsp/kernels.hpp"

#include <cmath>
#include <stdexcept>

#include "kernels_common.hpp"

namespace vdsp::kern {

namespace detail {

using U1qFn = void (*)(double*, int, int, const double*);
using CxFn = void (*)(double*, int, int, int);
using U2qFn = void (*)(double*, int, int, int, const double*);

void u1q_scalar(double* a, int n, int q, const double* m) {
  const std::size_t dim = std::size_t(1) << n;
  const std::size_t st = std::size_t(1) << (n - 1 - q);
  for (std::size_t base = 0; base < dim; base += st << 1)
    u1q_scalar_range(a, base, st, st, m);
}

void cx_scalar(double* a, int n, int qc, int qt) {
  const std::size_t dim = std::size_t(1) << n;
  const std::size_t sc = std::size_t(1) << (n - 1 - qc);
  const std::size_t st = std::size_t(1) << (n - 1 - qt);
  const std::size_t hi = sc > st ? sc : st, lo = sc > st ? st : sc;
  for (std::size_t h = 0; h < dim; h += hi << 1)
    for (std::size_t v = h; v < h + hi; v += lo << 1) {
      // offset so the control bit is 1 and the target bit is 0
      std::size_t base = v + sc;
      swap_scalar_range(a, base, lo, st);
    }
}

void u2q_scalar(double* a, int n, int q0, int q1, const double* m) {
  const std::size_t dim = std::size_t(1) << n;
  const std::size_t s0 = std::size_t(1) << (n - 1 - q0);
  const std::size_t s1 = std::size_t(1) << (n - 1 - q1);
  for (std::size_t h = 0; h < dim; h += s0 << 1)
    for (std::size_t v = h; v < h + s0; v += s1 << 1)
      u2q_scalar_range(a, v, s1, s0, s1, m);
}

#ifdef VDSP_BUILD_AVX2
void u1q_avx2(double* a, int n, int q, const double* m);
void cx_avx2(double* a, int n, int qc, int qt);
void u2q_avx2(double* a, int n, int q0, int q1, const double* m);
#endif

struct Funcs {
  U1qFn u1q;
  CxFn cx;
  U2qFn u2q;
};

Funcs g_funcs = {u1q_scalar, cx_scalar, u2q_scalar};
Impl g_impl = Impl::Scalar;

void select(Impl impl) {
  if (impl == Impl::Auto) impl = avx2_available() ? Impl::Avx2 : Impl::Scalar;
#ifdef VDSP_BUILD_AVX2
  if (impl == Impl::Avx2 && avx2_available()) {
    g_funcs = {u1q_avx2, cx_avx2, u2q_avx2};
    g_impl = Impl::Avx2;
    return;
  }
#endif
  g_funcs = {u1q_scalar, cx_scalar, u2q_scalar};
  g_impl = Impl::Scalar;
}

struct AutoInit {
  AutoInit() { select(Impl::Auto); }
} g_auto_init;

}  // namespace detail

bool avx2_available() {
#ifdef VDSP_BUILD_AVX2
  return __builtin_cpu_supports("avx2");
#else
  return false;
#endif
}

void set_impl(Impl impl) { detail::select(impl); }
Impl active_impl() { return detail::g_impl; }

void apply_u1q(double* a, int n, int q, const double m[4]) {
  if (q < 0 || q >= n) throw std::out_of_range("apply_u1q: qubit out of range");
  detail::g_funcs.u1q(a, n, q, m);
}

void apply_ry(double* a, int n, int q, double theta) {
  const double c = std::cos(theta / 2), s = std::sin(theta / 2);
  const double m[4] = {c, -s, s, c};
  apply_u1q(a, n, q, m);
}

void apply_cx(double* a, int n, int qc, int qt) {
  if (qc < 0 || qc >= n || qt < 0 || qt >= n || qc == qt)
    throw std::out_of_range("apply_cx: bad qubits");
  detail::g_funcs.cx(a, n, qc, qt);
}

void apply_u2q(double* a, int n, int q0, int q1, const double m[16]) {
  if (q0 < 0 || q1 <= q0 || q1 >= n) throw std::out_of_range("apply_u2q: bad qubits");
  detail::g_funcs.u2q(a, n, q0, q1, m);
}

}  // namespace vdsp::kern
