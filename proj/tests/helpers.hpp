#pragma once
#include <Eigen/Dense>

#include "vdsp/rng.hpp"
#include "vdsp/statevector.hpp"

namespace testutil {

inline vdsp::Statevector random_state(int n, vdsp::Rng& rng) {
  vdsp::Statevector s(n);
  for (int64_t i = 0; i < s.dim(); ++i) s.amps[i] = rng.normal();
  s.normalize();
  return s;
}

inline Eigen::MatrixXd random_orthogonal(int dim, vdsp::Rng& rng, bool special) {
  Eigen::MatrixXd m(dim, dim);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) m(i, j) = rng.normal();
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(m);
  Eigen::MatrixXd q = qr.householderQ();
  // fix QR sign convention for determinism
  Eigen::MatrixXd r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int j = 0; j < dim; ++j)
    if (r(j, j) < 0) q.col(j) *= -1.0;
  if (special && q.determinant() < 0) q.col(0) *= -1.0;
  return q;
}

// GHZ-like chi=2 state
inline vdsp::Statevector ghz(int n) {
  vdsp::Statevector s(n);
  s.amps[0] = s.amps[s.dim() - 1] = 1.0 / std::sqrt(2.0);
  return s;
}

}  // namespace testutil
