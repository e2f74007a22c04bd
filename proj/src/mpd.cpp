#include "vdsp/mpd.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

#include "vdsp/tensornet.hpp"

namespace vdsp {

namespace {

// Right-canonical chi<=2 tensors B_i (chiL x 2 x chiR) from a right-to-left
// SVD sweep, renormalized. Also records per-bond truncation eps.
struct RightCanon {
  std::vector<Eigen::MatrixXd> b;  // site i stored as chiL x (2*chiR), col s*chiR... see below
  std::vector<int> chi_l, chi_r;
  std::vector<double> eps;
};

// We store B_i as a chiL x (2*chiR) matrix with column index s * chiR + b.
RightCanon right_canonical_chi2(const Statevector& psi) {
  const int n = psi.n_qubits;
  RightCanon rc;
  rc.b.resize(n);
  rc.chi_l.resize(n);
  rc.chi_r.resize(n);
  rc.eps.assign(n - 1, 0.0);
  Eigen::MatrixXd carry = psi.amps;  // (2^n) x 1
  int chi_r = 1;
  for (int i = n - 1; i >= 1; --i) {
    // carry: 2^i * 2 rows x chi_r cols, regroup as 2^i x (2 * chi_r)
    const Eigen::Index rows = carry.rows() / 2;
    Eigen::MatrixXd blk(rows, 2 * chi_r);
    for (Eigen::Index r = 0; r < rows; ++r)
      for (int s = 0; s < 2; ++s)
        for (int b = 0; b < chi_r; ++b) blk(r, s * chi_r + b) = carry(r * 2 + s, b);
    Eigen::MatrixXd u, vt;
    Eigen::VectorXd sv;
    linalg::svd_thin(blk, u, sv, vt);
    int keep = int(std::min<Eigen::Index>(2, sv.size()));
    while (keep > 1 && sv[keep - 1] <= 1e-14 * sv[0]) --keep;
    double disc = 0.0;
    for (Eigen::Index j = keep; j < sv.size(); ++j) disc += sv[j] * sv[j];
    rc.eps[i - 1] = std::sqrt(std::max(0.0, disc));
    rc.b[i] = vt.topRows(keep);  // keep x (2 * chi_r)
    rc.chi_l[i] = keep;
    rc.chi_r[i] = chi_r;
    carry = u.leftCols(keep) * sv.head(keep).asDiagonal();
    chi_r = keep;
  }
  // first site: 1 x (2 * chi_r), renormalize (truncation shrank the norm)
  Eigen::MatrixXd first(1, 2 * chi_r);
  for (int s = 0; s < 2; ++s)
    for (int b = 0; b < chi_r; ++b) first(0, s * chi_r + b) = carry(s, b);
  first /= first.norm();
  rc.b[0] = first;
  rc.chi_l[0] = 1;
  rc.chi_r[0] = chi_r;
  return rc;
}

// Deterministic completion: given orthonormal columns fixed at positions
// `fixed_cols` of a dim x dim matrix, fill the rest by Gram-Schmidt against
// vectors drawn from a seeded generator, then flip the last free column if
// det < 0. The free columns are unconstrained by the factorization; a generic
// (random but reproducible) choice avoids biasing the disentangling sequence
// toward any particular basis.
Eigen::MatrixXd complete_orthogonal(const Eigen::MatrixXd& cols, const std::vector<int>& fixed_cols,
                                    int dim, std::mt19937_64& rng) {
  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(dim, dim);
  std::vector<Eigen::VectorXd> basis;
  for (size_t j = 0; j < fixed_cols.size(); ++j) {
    out.col(fixed_cols[j]) = cols.col(j);
    basis.push_back(cols.col(j));
  }
  std::vector<int> free_cols;
  for (int j = 0; j < dim; ++j)
    if (std::find(fixed_cols.begin(), fixed_cols.end(), j) == fixed_cols.end())
      free_cols.push_back(j);
  std::normal_distribution<double> gauss(0.0, 1.0);
  size_t fi = 0;
  for (int tries = 0; tries < 64 && fi < free_cols.size(); ++tries) {
    Eigen::VectorXd v(dim);
    for (int r = 0; r < dim; ++r) v[r] = gauss(rng);
    for (const auto& u : basis) v -= u.dot(v) * u;
    double nv = v.norm();
    if (nv < 1e-6) continue;  // nearly dependent draw: try another
    v /= nv;
    // second pass restores orthogonality lost to cancellation when nv is small
    for (const auto& u : basis) v -= u.dot(v) * u;
    v /= v.norm();
    out.col(free_cols[fi++]) = v;
    basis.push_back(v);
  }
  if (fi != free_cols.size()) throw std::runtime_error("orthonormal completion failed");
  if (!free_cols.empty() && out.determinant() < 0) out.col(free_cols.back()) *= -1.0;
  return out;
}

}  // namespace

MpdLayer mpd_layer(const Statevector& psi) {
  const int n = psi.n_qubits;
  if (n < 2) throw std::invalid_argument("mpd_layer: n < 2");
  RightCanon rc = right_canonical_chi2(psi);
  // Fixed seed keeps the completion (and thus every downstream artifact)
  // bit-reproducible across runs.
  std::mt19937_64 rng(5ULL);
  MpdLayer layer;
  layer.n = n;
  layer.eps = rc.eps;
  layer.gates.resize(n - 1);

  // Gate 0 on (q0, q1): column |00> is B_0 over (s, a1); a1 indexes qubit 1.
  {
    const int chi = rc.chi_r[0];
    Eigen::MatrixXd col = Eigen::MatrixXd::Zero(4, 1);
    for (int s = 0; s < 2; ++s)
      for (int a = 0; a < chi; ++a) col(s * 2 + a, 0) = rc.b[0](0, s * chi + a);
    layer.gates[0] = complete_orthogonal(col, {0}, 4, rng);
  }
  // Gate i on (q_i, q_{i+1}): column a*2+0 is B_i[a, :, :] over (s, b).
  for (int i = 1; i < n - 1; ++i) {
    const int cl = rc.chi_l[i], cr = rc.chi_r[i];
    Eigen::MatrixXd cols = Eigen::MatrixXd::Zero(4, cl);
    std::vector<int> pos;
    for (int a = 0; a < cl; ++a) {
      pos.push_back(a * 2);
      for (int s = 0; s < 2; ++s)
        for (int b = 0; b < cr; ++b) cols(s * 2 + b, a) = rc.b[i](a, s * cr + b);
    }
    layer.gates[i] = complete_orthogonal(cols, pos, 4, rng);
  }
  // Terminal gate on the last qubit: V[s, b] = B_{n-1}[b, s].
  {
    const int cl = rc.chi_l[n - 1];
    if (cl == 1) {
      Eigen::MatrixXd col(2, 1);
      col(0, 0) = rc.b[n - 1](0, 0);
      col(1, 0) = rc.b[n - 1](0, 1);
      layer.terminal = complete_orthogonal(col, {0}, 2, rng);
    } else {
      Eigen::Matrix2d v;
      for (int s = 0; s < 2; ++s)
        for (int b = 0; b < 2; ++b) v(s, b) = rc.b[n - 1](b, s * 1 + 0);
      if (v.determinant() < 0) {
        // gauge flip: negate the b=1 bond state on both sides of the bond
        v.col(1) *= -1.0;
        Eigen::Matrix4d& g = layer.gates[n - 2];
        g.row(1) *= -1.0;  // rows (s, b=1) of the embedded gate
        g.row(3) *= -1.0;
      }
      layer.terminal = v;
    }
  }
  return layer;
}

void apply_layer(const MpdLayer& layer, Statevector& psi) {
  Circuit c;
  c.n_qubits = layer.n;
  for (int i = 0; i < layer.n - 1; ++i) c.gates.push_back(Gate::u2q(i, layer.gates[i]));
  c.gates.push_back(Gate::u1q(layer.n - 1, layer.terminal));
  apply_circuit(c, psi);
}

void apply_layer_inverse(const MpdLayer& layer, Statevector& psi) {
  Circuit c;
  c.n_qubits = layer.n;
  c.gates.push_back(Gate::u1q(layer.n - 1, Eigen::Matrix2d(layer.terminal.transpose())));
  for (int i = layer.n - 2; i >= 0; --i)
    c.gates.push_back(Gate::u2q(i, Eigen::Matrix4d(layer.gates[i].transpose())));
  apply_circuit(c, psi);
}

std::vector<MpdLayer> disentangle_layers(const Statevector& psi, int layers) {
  if (layers < 1) throw std::invalid_argument("disentangle_layers: layers < 1");
  std::vector<MpdLayer> out;
  Statevector cur = psi;
  for (int l = 0; l < layers; ++l) {
    out.push_back(mpd_layer(cur));
    apply_layer_inverse(out.back(), cur);
  }
  return out;
}

Circuit mpd_to_circuit(const std::vector<MpdLayer>& layers) {
  Circuit c;
  c.n_qubits = layers.front().n;
  for (auto it = layers.rbegin(); it != layers.rend(); ++it) {
    for (int i = 0; i < it->n - 1; ++i) c.gates.push_back(Gate::u2q(i, it->gates[i]));
    c.gates.push_back(Gate::u1q(it->n - 1, it->terminal));
  }
  return c;
}

Statevector prepare_from_layers(const std::vector<MpdLayer>& layers) {
  Statevector psi = Statevector::zero_state(layers.front().n);
  for (auto it = layers.rbegin(); it != layers.rend(); ++it) apply_layer(*it, psi);
  return psi;
}

}  // namespace vdsp
