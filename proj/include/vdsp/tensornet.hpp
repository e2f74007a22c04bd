#pragma once
// MPS/MPO machinery: iterated-SVD decomposition, bond spectra, entropy
// functionals, truncation bounds, and circuit-to-MPO conversion.
#include <Eigen/Dense>
#include <utility>
#include <vector>

#include "vdsp/statevector.hpp"

namespace vdsp {

struct Circuit;  // circuits.hpp

// Site i tensor has shape chiL x 2 x chiR, stored as a (chiL*2) x chiR matrix
// with row index a*2 + s (a = left bond, s = physical).
struct MPS {
  int n = 0;
  std::vector<Eigen::MatrixXd> sites;
  std::vector<int> bond_dims;  // n-1 entries
};

struct BondSpectra {
  std::vector<Eigen::VectorXd> spectra;  // descending, sum of squares = 1
};

// Left-to-right SVD sweep producing left-canonical tensors. Spectra are the
// full (pre-truncation) singular values; chi_max = 0 means no truncation.
std::pair<MPS, BondSpectra> to_mps(const Statevector& psi, int chi_max = 0);

// Singular values only (no tensors); fast path for entropy evaluation.
BondSpectra state_spectra(const Statevector& psi);

Statevector mps_to_statevector(const MPS& mps);

// Von Neumann entropy in bits at bond k: -sum p log2 p, p = lambda^2.
double bond_entropy(const BondSpectra& sp, int k);

// Benchmark entanglement-entropy functional:
//   S = sum_k sum_{i>2} (lambda_i^k)^2 (log2 lambda_i^k)^2
// (singular values sorted descending, the two leading values of every bond
// excluded). Nonnegative; zero iff every bond has chi <= 2 support.
double cumulative_ee(const BondSpectra& sp);

// Sparse-state variant: plain sum of sub-leading singular values.
double sparse_ee_loss(const BondSpectra& sp);

// Eq.-(8)-style bound: sqrt(sum_i eps_i^2), eps_i^2 = 1 - sum_{j<=k} lambda_j^2.
double truncation_bound(const BondSpectra& sp, int keep);

// Site operator W has shape chiL x 2(out) x 2(in) x chiR, stored flat.
struct MpoSite {
  int chi_l = 1, chi_r = 1;
  std::vector<double> w;  // index ((a*2 + so)*2 + si)*chi_r + b
  double& at(int a, int so, int si, int b) { return w[((size_t(a) * 2 + so) * 2 + si) * chi_r + b]; }
  double at(int a, int so, int si, int b) const { return w[((size_t(a) * 2 + so) * 2 + si) * chi_r + b]; }
};

struct MPO {
  int n = 0;
  std::vector<MpoSite> sites;
  std::vector<int> bond_dims;
  int max_bond() const;
};

MPO identity_mpo(int n);
// Applies the circuit's gates site-locally, recompressing each touched bond
// with an SVD that drops singular values below svd_cutoff relative to the
// largest. Two-qubit gates must act on adjacent qubits.
MPO circuit_to_mpo(const Circuit& circuit, double svd_cutoff = 1e-12);
// Dense 2^n x 2^n matrix (small n only; verification).
Eigen::MatrixXd mpo_to_dense(const MPO& mpo);

namespace linalg {
// Thin SVD A = U diag(s) Vt with descending s; the largest-magnitude entry of
// each U column is made positive (matching Vt row negated) for determinism.
void svd_thin(const Eigen::MatrixXd& a, Eigen::MatrixXd& u, Eigen::VectorXd& s,
              Eigen::MatrixXd& vt);
Eigen::VectorXd singular_values(const Eigen::MatrixXd& a);
}  // namespace linalg

}  // namespace vdsp
