#pragma once
// Gate-application kernels on raw amplitude arrays. Scalar reference
// implementations plus AVX2 variants selected at runtime; both produce
// bit-identical results (no FMA, same operation order).
//
// Qubit 0 is the most significant bit: stride(q) = 2^(n-1-q).
#include <cstddef>
#include <cstdint>

namespace vdsp::kern {

enum class Impl { Auto, Scalar, Avx2 };

// Force an implementation (used by equivalence tests); Auto re-dispatches.
void set_impl(Impl impl);
Impl active_impl();
bool avx2_available();

// 2x2 matrix m is row-major {m00, m01, m10, m11}.
void apply_u1q(double* a, int n, int q, const double m[4]);
void apply_ry(double* a, int n, int q, double theta);
void apply_cx(double* a, int n, int qc, int qt);
// 4x4 row-major m on ordered pair (q0, q1), q0 < q1; basis order of the pair
// is (bit_q0, bit_q1) = 00, 01, 10, 11.
void apply_u2q(double* a, int n, int q0, int q1, const double m[16]);

}  // namespace vdsp::kern
