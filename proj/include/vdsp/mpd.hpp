#pragma once
// Matrix-product-disentangler circuits built from chi=2-truncated MPS.
#include <Eigen/Dense>
#include <vector>

#include "vdsp/circuits.hpp"
#include "vdsp/statevector.hpp"

namespace vdsp {

// One layer: n-1 two-qubit gates (gate i on qubits (i, i+1), applied to
// |0...0> in ascending order) plus a terminal one-qubit gate on the last
// qubit. All matrices are special-orthogonal.
struct MpdLayer {
  int n = 0;
  std::vector<Eigen::Matrix4d> gates;
  Eigen::Matrix2d terminal = Eigen::Matrix2d::Identity();
  std::vector<double> eps;  // per-bond truncation errors of the source state
};

MpdLayer mpd_layer(const Statevector& psi);

// Iterative disentangling: layer 1 from psi, then psi <- U1^dag psi, repeat.
// Returned in computation order; to prepare, apply in reverse order
// (last-computed first).
std::vector<MpdLayer> disentangle_layers(const Statevector& psi, int layers);

void apply_layer(const MpdLayer& layer, Statevector& psi);
void apply_layer_inverse(const MpdLayer& layer, Statevector& psi);

// Preparation circuit with raw U2Q/U1Q gates; layers applied last-first.
Circuit mpd_to_circuit(const std::vector<MpdLayer>& layers);

Statevector prepare_from_layers(const std::vector<MpdLayer>& layers);

}  // namespace vdsp
