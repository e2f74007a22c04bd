#pragma once
// Exact synthesis of real-orthogonal one- and two-qubit gates into {Ry, CX}.
#include <Eigen/Dense>
#include <vector>

#include "vdsp/circuits.hpp"

namespace vdsp {

// Gate list (application order) over qubits {q0, q0+1} realizing the 4x4 real
// orthogonal matrix exactly (within ~1e-12): det=+1 inputs need at most 2 CX,
// det=-1 at most 3.
std::vector<Gate> synthesize_two_qubit(const Eigen::Matrix4d& u, int q0);

// det=+1 2x2 orthogonal = a single Ry.
Gate synthesize_one_qubit(const Eigen::Matrix2d& u, int q);

// Replaces every U1Q/U2Q gate by its {Ry, CX} realization.
Circuit synthesize_circuit(const Circuit& c);

}  // namespace vdsp
