#include "vdsp/tensornet.hpp"

#include <lapacke.h>

#include <cmath>
#include <cstdlib>
#include <stdexcept>

#include "vdsp/circuits.hpp"

namespace vdsp {

namespace linalg {

namespace {
// Pin BLAS threading before first use: the FD-gradient loop parallelizes at a
// higher level and reproducibility is wanted everywhere.
struct BlasInit {
  BlasInit() { setenv("OPENBLAS_NUM_THREADS", "1", 0); }
} g_blas_init;
}  // namespace

void svd_thin(const Eigen::MatrixXd& a, Eigen::MatrixXd& u, Eigen::VectorXd& s,
              Eigen::MatrixXd& vt) {
  const lapack_int m = lapack_int(a.rows()), n = lapack_int(a.cols());
  const lapack_int k = std::min(m, n);
  Eigen::MatrixXd work = a;
  u.resize(m, k);
  s.resize(k);
  vt.resize(k, n);
  lapack_int info = LAPACKE_dgesdd(LAPACK_COL_MAJOR, 'S', m, n, work.data(), m, s.data(),
                                   u.data(), m, vt.data(), k);
  if (info != 0) throw std::runtime_error("dgesdd failed");
  // deterministic sign convention
  for (lapack_int j = 0; j < k; ++j) {
    lapack_int imax = 0;
    double amax = 0.0;
    for (lapack_int i = 0; i < m; ++i)
      if (std::abs(u(i, j)) > amax) amax = std::abs(u(i, j)), imax = i;
    if (u(imax, j) < 0) {
      u.col(j) = -u.col(j);
      vt.row(j) = -vt.row(j);
    }
  }
}

Eigen::VectorXd singular_values(const Eigen::MatrixXd& a) {
  const lapack_int m = lapack_int(a.rows()), n = lapack_int(a.cols());
  Eigen::MatrixXd work = a;
  Eigen::VectorXd s(std::min(m, n));
  lapack_int info = LAPACKE_dgesdd(LAPACK_COL_MAJOR, 'N', m, n, work.data(), m, s.data(),
                                   nullptr, m, nullptr, 1);
  if (info != 0) throw std::runtime_error("dgesdd failed");
  return s;
}

}  // namespace linalg

std::pair<MPS, BondSpectra> to_mps(const Statevector& psi, int chi_max) {
  const int n = psi.n_qubits;
  MPS mps;
  mps.n = n;
  BondSpectra spectra;
  // carry: chi x 2^{n-k} matrix of not-yet-decomposed amplitudes
  Eigen::MatrixXd carry = psi.amps.transpose();  // 1 x 2^n
  for (int k = 0; k < n - 1; ++k) {
    const Eigen::Index chi = carry.rows();
    const Eigen::Index cols = carry.cols() / 2;
    // regroup (a, s | rest): row a*2+s of the new matrix
    Eigen::MatrixXd blk(chi * 2, cols);
    for (Eigen::Index a = 0; a < chi; ++a)
      for (int s = 0; s < 2; ++s)
        blk.row(a * 2 + s) = carry.block(a, s * cols, 1, cols);
    Eigen::MatrixXd u, vt;
    Eigen::VectorXd sv;
    linalg::svd_thin(blk, u, sv, vt);
    // trim numerically-zero values, then optionally truncate
    Eigen::Index keep = 0;
    for (Eigen::Index i = 0; i < sv.size(); ++i)
      if (sv[i] > 1e-14 * sv[0]) ++keep;
    if (keep < 1) keep = 1;
    spectra.spectra.push_back(sv.head(keep));
    if (chi_max > 0 && keep > chi_max) keep = chi_max;
    mps.sites.push_back(u.leftCols(keep));
    mps.bond_dims.push_back(int(keep));
    carry = sv.head(keep).asDiagonal() * vt.topRows(keep);
  }
  // last site: chi x 2 regrouped as (chi*2) x 1 with row index a*2+s
  {
    const Eigen::Index chi = carry.rows();
    Eigen::MatrixXd last(chi * 2, 1);
    for (Eigen::Index a = 0; a < chi; ++a)
      for (int s = 0; s < 2; ++s) last(a * 2 + s, 0) = carry(a, s);
    mps.sites.push_back(std::move(last));
  }
  return {std::move(mps), std::move(spectra)};
}

BondSpectra state_spectra(const Statevector& psi) {
  const int n = psi.n_qubits;
  BondSpectra spectra;
  Eigen::MatrixXd carry = psi.amps.transpose();
  for (int k = 0; k < n - 1; ++k) {
    const Eigen::Index chi = carry.rows();
    const Eigen::Index cols = carry.cols() / 2;
    Eigen::MatrixXd blk(chi * 2, cols);
    for (Eigen::Index a = 0; a < chi; ++a)
      for (int s = 0; s < 2; ++s)
        blk.row(a * 2 + s) = carry.block(a, s * cols, 1, cols);
    Eigen::MatrixXd u, vt;
    Eigen::VectorXd sv;
    linalg::svd_thin(blk, u, sv, vt);
    Eigen::Index keep = 0;
    for (Eigen::Index i = 0; i < sv.size(); ++i)
      if (sv[i] > 1e-14 * sv[0]) ++keep;
    if (keep < 1) keep = 1;
    spectra.spectra.push_back(sv.head(keep));
    carry = sv.head(keep).asDiagonal() * vt.topRows(keep);
  }
  return spectra;
}

Statevector mps_to_statevector(const MPS& mps) {
  if (mps.n > 24) throw std::runtime_error("mps_to_statevector: too many qubits");
  // cur: d x chi, growing d
  Eigen::MatrixXd cur = mps.sites[0];  // (1*2) x chi
  for (int i = 1; i < mps.n; ++i) {
    const Eigen::MatrixXd& site = mps.sites[i];  // (chi*2) x chiR
    const Eigen::Index d = cur.rows(), chi = cur.cols(), chir = site.cols();
    Eigen::MatrixXd next(d * 2, chir);
    for (int s = 0; s < 2; ++s) {
      // pick physical slice: rows a*2+s of site -> chi x chiR
      Eigen::MatrixXd slice(chi, chir);
      for (Eigen::Index a = 0; a < chi; ++a) slice.row(a) = site.row(a * 2 + s);
      Eigen::MatrixXd prod = cur * slice;  // d x chiR
      for (Eigen::Index r = 0; r < d; ++r) next.row(r * 2 + s) = prod.row(r);
    }
    cur = std::move(next);
  }
  Statevector out(mps.n);
  out.amps = Eigen::Map<Eigen::VectorXd>(cur.data(), cur.rows());
  return out;
}

static constexpr double kLogFloor = 1e-12;

double bond_entropy(const BondSpectra& sp, int k) {
  if (k < 0 || size_t(k) >= sp.spectra.size()) throw std::out_of_range("bond_entropy: bad bond");
  double s = 0.0;
  for (double l : sp.spectra[k]) {
    if (l < kLogFloor) continue;
    double p = l * l;
    s -= p * std::log2(p);
  }
  return s;
}

double cumulative_ee(const BondSpectra& sp) {
  double s = 0.0;
  for (const auto& spec : sp.spectra)
    for (Eigen::Index i = 2; i < spec.size(); ++i) {
      double l = spec[i];
      if (l < kLogFloor) continue;
      double lg = std::log2(l);
      s += l * l * lg * lg;
    }
  return s;
}

double sparse_ee_loss(const BondSpectra& sp) {
  double s = 0.0;
  for (const auto& spec : sp.spectra)
    for (Eigen::Index i = 2; i < spec.size(); ++i) s += spec[i];
  return s;
}

double truncation_bound(const BondSpectra& sp, int keep) {
  if (keep < 1) throw std::invalid_argument("truncation_bound: keep < 1");
  double total = 0.0;
  for (const auto& spec : sp.spectra) {
    double kept = 0.0;
    for (Eigen::Index i = 0; i < std::min<Eigen::Index>(keep, spec.size()); ++i)
      kept += spec[i] * spec[i];
    double eps2 = 1.0 - kept;
    if (eps2 > 0) total += eps2;
  }
  return std::sqrt(total);
}

int MPO::max_bond() const {
  int m = 1;
  for (int b : bond_dims) m = std::max(m, b);
  return m;
}

MPO identity_mpo(int n) {
  MPO mpo;
  mpo.n = n;
  mpo.sites.resize(n);
  for (auto& site : mpo.sites) {
    site.chi_l = site.chi_r = 1;
    site.w.assign(4, 0.0);
    site.at(0, 0, 0, 0) = 1.0;
    site.at(0, 1, 1, 0) = 1.0;
  }
  mpo.bond_dims.assign(std::max(0, n - 1), 1);
  return mpo;
}

static void mpo_apply_1q(MpoSite& site, const Eigen::Matrix2d& g) {
  MpoSite out = site;
  for (int a = 0; a < site.chi_l; ++a)
    for (int so = 0; so < 2; ++so)
      for (int si = 0; si < 2; ++si)
        for (int b = 0; b < site.chi_r; ++b)
          out.at(a, so, si, b) =
              g(so, 0) * site.at(a, 0, si, b) + g(so, 1) * site.at(a, 1, si, b);
  site = std::move(out);
}

// Applies a 4x4 gate (basis order: bit of site i is the high bit) to output
// legs of sites (i, i+1), then re-splits the bond with an SVD cutoff.
static void mpo_apply_2q(MPO& mpo, int i, const Eigen::Matrix4d& g, double cutoff) {
  MpoSite& L = mpo.sites[i];
  MpoSite& R = mpo.sites[i + 1];
  const int cl = L.chi_l, cm = L.chi_r, cr = R.chi_r;
  // merged tensor T[a][soL soR][siL siR][b]
  std::vector<double> t(size_t(cl) * 16 * cr, 0.0);
  auto tat = [&](int a, int so, int si, int b) -> double& {
    return t[((size_t(a) * 4 + so) * 4 + si) * cr + b];
  };
  for (int a = 0; a < cl; ++a)
    for (int m = 0; m < cm; ++m)
      for (int sl = 0; sl < 2; ++sl)
        for (int il = 0; il < 2; ++il)
          for (int sr = 0; sr < 2; ++sr)
            for (int ir = 0; ir < 2; ++ir) {
              double v = L.at(a, sl, il, m);
              if (v == 0.0) continue;
              for (int b = 0; b < cr; ++b)
                tat(a, sl * 2 + sr, il * 2 + ir, b) += v * R.at(m, sr, ir, b);
            }
  // apply gate on output legs
  std::vector<double> t2(t.size(), 0.0);
  auto t2at = [&](int a, int so, int si, int b) -> double& {
    return t2[((size_t(a) * 4 + so) * 4 + si) * cr + b];
  };
  for (int a = 0; a < cl; ++a)
    for (int so = 0; so < 4; ++so)
      for (int k = 0; k < 4; ++k) {
        double gv = g(so, k);
        if (gv == 0.0) continue;
        for (int si = 0; si < 4; ++si)
          for (int b = 0; b < cr; ++b) t2at(a, so, si, b) += gv * tat(a, k, si, b);
      }
  // split: rows (a, soL, siL), cols (soR, siR, b)
  Eigen::MatrixXd m2(size_t(cl) * 4, size_t(cr) * 4);
  for (int a = 0; a < cl; ++a)
    for (int sl = 0; sl < 2; ++sl)
      for (int il = 0; il < 2; ++il)
        for (int sr = 0; sr < 2; ++sr)
          for (int ir = 0; ir < 2; ++ir)
            for (int b = 0; b < cr; ++b)
              m2((size_t(a) * 2 + sl) * 2 + il, (size_t(sr) * 2 + ir) * cr + b) =
                  t2at(a, sl * 2 + sr, il * 2 + ir, b);
  Eigen::MatrixXd u, vt;
  Eigen::VectorXd sv;
  linalg::svd_thin(m2, u, sv, vt);
  Eigen::Index keep = 0;
  for (Eigen::Index j = 0; j < sv.size(); ++j)
    if (sv[j] > cutoff * sv[0]) ++keep;
  if (keep < 1) keep = 1;
  L.chi_r = int(keep);
  L.w.assign(size_t(cl) * 4 * keep, 0.0);
  for (int a = 0; a < cl; ++a)
    for (int sl = 0; sl < 2; ++sl)
      for (int il = 0; il < 2; ++il)
        for (Eigen::Index j = 0; j < keep; ++j)
          L.at(a, sl, il, int(j)) = u((size_t(a) * 2 + sl) * 2 + il, j);
  R.chi_l = int(keep);
  R.chi_r = cr;
  R.w.assign(size_t(keep) * 4 * cr, 0.0);
  for (Eigen::Index j = 0; j < keep; ++j)
    for (int sr = 0; sr < 2; ++sr)
      for (int ir = 0; ir < 2; ++ir)
        for (int b = 0; b < cr; ++b)
          R.at(int(j), sr, ir, b) = sv[j] * vt(j, (size_t(sr) * 2 + ir) * cr + b);
  mpo.bond_dims[i] = int(keep);
}

MPO circuit_to_mpo(const Circuit& circuit, double svd_cutoff) {
  if (circuit.n_qubits > 14) throw std::invalid_argument("circuit_to_mpo: n > 14");
  MPO mpo = identity_mpo(circuit.n_qubits);
  for (const Gate& g : circuit.gates) {
    switch (g.kind) {
      case Gate::RY: {
        double c = std::cos(g.angle / 2), s = std::sin(g.angle / 2);
        Eigen::Matrix2d m;
        m << c, -s, s, c;
        mpo_apply_1q(mpo.sites[g.q0], m);
        break;
      }
      case Gate::U1Q:
        mpo_apply_1q(mpo.sites[g.q0], g.m1);
        break;
      case Gate::CX: {
        int lo = std::min(g.q0, g.q1);
        if (std::max(g.q0, g.q1) != lo + 1)
          throw std::invalid_argument("circuit_to_mpo: non-adjacent two-qubit gate");
        Eigen::Matrix4d m = Eigen::Matrix4d::Zero();
        if (g.q0 < g.q1) {  // control is the high bit of the pair
          m(0, 0) = m(1, 1) = m(2, 3) = m(3, 2) = 1.0;
        } else {  // control is the low bit
          m(0, 0) = m(2, 2) = m(1, 3) = m(3, 1) = 1.0;
        }
        mpo_apply_2q(mpo, lo, m, svd_cutoff);
        break;
      }
      case Gate::U2Q:
        if (g.q1 != g.q0 + 1)
          throw std::invalid_argument("circuit_to_mpo: non-adjacent two-qubit gate");
        mpo_apply_2q(mpo, g.q0, g.m2, svd_cutoff);
        break;
    }
  }
  return mpo;
}

Eigen::MatrixXd mpo_to_dense(const MPO& mpo) {
  if (mpo.n > 6) throw std::runtime_error("mpo_to_dense: n > 6");
  const int64_t dim = int64_t(1) << mpo.n;
  Eigen::MatrixXd out(dim, dim);
  for (int64_t r = 0; r < dim; ++r)
    for (int64_t c = 0; c < dim; ++c) {
      Eigen::RowVectorXd v = Eigen::RowVectorXd::Ones(1);
      for (int i = 0; i < mpo.n; ++i) {
        const MpoSite& w = mpo.sites[i];
        int so = int((r >> (mpo.n - 1 - i)) & 1);
        int si = int((c >> (mpo.n - 1 - i)) & 1);
        Eigen::MatrixXd m(w.chi_l, w.chi_r);
        for (int a = 0; a < w.chi_l; ++a)
          for (int b = 0; b < w.chi_r; ++b) m(a, b) = w.at(a, so, si, b);
        v = v * m;
      }
      out(r, c) = v(0);
    }
  return out;
}

}  // namespace vdsp
