#pragma once
// Dense real statevector. Qubit 0 is the most significant bit of the basis
// index: idx = sum_q s_q * 2^(n-1-q).
#include <Eigen/Dense>
#include <cstdint>
#include <stdexcept>

namespace vdsp {

struct Statevector {
  int n_qubits = 0;
  Eigen::VectorXd amps;

  Statevector() = default;
  Statevector(int n) : n_qubits(n), amps(Eigen::VectorXd::Zero(int64_t(1) << n)) {
    if (n < 1 || n > 28) throw std::invalid_argument("statevector: bad qubit count");
  }

  static Statevector zero_state(int n) {
    Statevector s(n);
    s.amps[0] = 1.0;
    return s;
  }

  int64_t dim() const { return amps.size(); }
  double norm() const { return amps.norm(); }
  void normalize() { amps /= amps.norm(); }
};

inline double accuracy(const Statevector& target, const Statevector& prepared) {
  return 1.0 - (target.amps - prepared.amps).norm();
}

inline double infidelity(const Statevector& target, const Statevector& prepared) {
  double ov = target.amps.dot(prepared.amps);
  return 1.0 - ov * ov;
}

}  // namespace vdsp
