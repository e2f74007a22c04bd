#pragma once
// Gate-level circuits: the hardware-efficient Ry/CX ansatz, dense simulation,
// inversion, metrics, and OpenQASM 2.0 export/import.
#include <Eigen/Dense>
#include <string>
#include <vector>

#include "vdsp/statevector.hpp"

namespace vdsp {

struct Gate {
  enum Kind { RY, CX, U1Q, U2Q };
  Kind kind = RY;
  int q0 = 0, q1 = 0;       // CX: control q0, target q1; U2Q: pair (q0, q0+1)
  double angle = 0.0;       // RY
  Eigen::Matrix2d m1 = Eigen::Matrix2d::Identity();  // U1Q
  Eigen::Matrix4d m2 = Eigen::Matrix4d::Identity();  // U2Q

  static Gate ry(int q, double angle);
  static Gate cx(int control, int target);
  static Gate u1q(int q, const Eigen::Matrix2d& m);
  static Gate u2q(int q, const Eigen::Matrix4d& m);  // on (q, q+1)
};

struct Circuit {
  int n_qubits = 0;
  std::vector<Gate> gates;
};

// Brickwork ansatz. Each layer: Ry on every qubit; CX on even adjacent pairs
// (0,1),(2,3),...; Ry on the qubits touched by odd pairs; CX on odd adjacent
// pairs (1,2),(3,4),.... Optional trailing Ry layer on every qubit.
struct PqcTemplate {
  int n_qubits = 0;
  int n_layers = 0;
  bool final_rotation_layer = false;

  int n_params() const;
  int cx_count() const;
};

PqcTemplate build_pqc(int n_qubits, int n_layers, bool final_rotation_layer);
Circuit bind(const PqcTemplate& tpl, const Eigen::VectorXd& theta);

void apply_circuit(const Circuit& c, Statevector& psi);       // in place
Statevector simulate(const Circuit& c, const Statevector& in);
Circuit inverse(const Circuit& c);

struct Metrics {
  int cx_count = 0;
  int depth = 0;
};
// Requires a synthesized circuit (RY/CX only). Depth is greedy ASAP
// scheduling where gates on disjoint qubits share a time slice.
Metrics metrics(const Circuit& c);

std::string export_qasm(const Circuit& c);   // RY/CX only
Circuit parse_qasm(const std::string& text);

}  // namespace vdsp
