#include "vdsp/targets.hpp"

#include <cmath>
#include <set>
#include <stdexcept>

#include "vdsp/rng.hpp"

namespace vdsp {

Family family_from_name(const std::string& name) {
  if (name == "normal1d") return Family::Normal1d;
  if (name == "normal2d") return Family::Normal2d;
  if (name == "ricker1d") return Family::Ricker1d;
  if (name == "ricker2d") return Family::Ricker2d;
  if (name == "sparse") return Family::Sparse;
  throw std::invalid_argument("unknown target family: " + name);
}

std::string family_name(Family f) {
  switch (f) {
    case Family::Normal1d: return "normal1d";
    case Family::Normal2d: return "normal2d";
    case Family::Ricker1d: return "ricker1d";
    case Family::Ricker2d: return "ricker2d";
    case Family::Sparse: return "sparse";
  }
  return "?";
}

TargetSpec TargetSpec::benchmark(Family family, int n_qubits) {
  TargetSpec s;
  s.family = family;
  s.grid.n_qubits = n_qubits;
  switch (family) {
    case Family::Normal1d:
      s.grid = {n_qubits, 0.0, 1.0, 1};
      s.mu = 0.5;
      s.sigma = 0.1;
      break;
    case Family::Normal2d:
      s.grid = {n_qubits, 0.0, 1.0, 2};
      break;
    case Family::Ricker1d:
      s.grid = {n_qubits, -1.0, 1.0, 1};
      s.sigma = 0.2;
      break;
    case Family::Ricker2d:
      s.grid = {n_qubits, -1.0, 1.0, 2};
      s.sigma = 0.15;
      break;
    case Family::Sparse:
      s.grid = {n_qubits, 0.0, 1.0, 1};
      break;
  }
  return s;
}

static void check_grid(const GridSpec& g) {
  if (g.n_qubits < 1) throw std::invalid_argument("grid: n_qubits < 1");
  if (g.dims != 1 && g.dims != 2) throw std::invalid_argument("grid: dims must be 1 or 2");
  if (g.dims == 2 && g.n_qubits % 2 != 0)
    throw std::invalid_argument("grid: 2D grid needs an even qubit count");
  if (!(g.hi > g.lo)) throw std::invalid_argument("grid: hi must exceed lo");
}

std::vector<double> grid_points(const GridSpec& g) {
  check_grid(g);
  if (g.dims != 1) throw std::invalid_argument("grid_points: dims=1 expected");
  const int64_t m = int64_t(1) << g.n_qubits;
  std::vector<double> x(m);
  for (int64_t i = 0; i < m; ++i) x[i] = g.lo + (g.hi - g.lo) * double(i) / double(m);
  return x;
}

std::vector<std::pair<double, double>> grid_points_2d(const GridSpec& g) {
  check_grid(g);
  if (g.dims != 2) throw std::invalid_argument("grid_points_2d: dims=2 expected");
  const int half = g.n_qubits / 2;
  const int64_t m = int64_t(1) << half;
  std::vector<double> ax(m);
  for (int64_t i = 0; i < m; ++i) ax[i] = g.lo + (g.hi - g.lo) * double(i) / double(m);
  std::vector<std::pair<double, double>> pts;
  pts.reserve(m * m);
  for (int64_t ix = 0; ix < m; ++ix)
    for (int64_t iy = 0; iy < m; ++iy) pts.emplace_back(ax[ix], ax[iy]);
  return pts;
}

Statevector build_target(const TargetSpec& spec) {
  check_grid(spec.grid);
  const int n = spec.grid.n_qubits;
  Statevector psi(n);

  switch (spec.family) {
    case Family::Normal1d: {
      if (spec.sigma <= 0) throw std::invalid_argument("normal1d: sigma <= 0");
      auto x = grid_points(spec.grid);
      for (size_t i = 0; i < x.size(); ++i) {
        double t = (x[i] - spec.mu) / spec.sigma;
        psi.amps[i] = std::exp(-0.5 * t * t);
      }
      break;
    }
    case Family::Normal2d: {
      Eigen::Matrix2d inv = spec.cov.inverse();
      if (spec.cov.determinant() <= 0 || (spec.cov - spec.cov.transpose()).norm() > 1e-12)
        throw std::invalid_argument("normal2d: covariance must be symmetric positive definite");
      auto pts = grid_points_2d(spec.grid);
      for (size_t i = 0; i < pts.size(); ++i) {
        Eigen::Vector2d dv(pts[i].first - spec.mu2[0], pts[i].second - spec.mu2[1]);
        psi.amps[i] = std::exp(-0.5 * dv.dot(inv * dv));
      }
      break;
    }
    case Family::Ricker1d: {
      if (spec.sigma <= 0) throw std::invalid_argument("ricker1d: sigma <= 0");
      auto x = grid_points(spec.grid);
      const double pref = 2.0 / (std::sqrt(3.0 * spec.sigma) * std::pow(M_PI, 0.25));
      for (size_t i = 0; i < x.size(); ++i) {
        double t = x[i] / spec.sigma;
        psi.amps[i] = pref * (1.0 - t * t) * std::exp(-0.5 * t * t);
      }
      break;
    }
    case Family::Ricker2d: {
      if (spec.sigma <= 0) throw std::invalid_argument("ricker2d: sigma <= 0");
      auto pts = grid_points_2d(spec.grid);
      const double s2 = spec.sigma * spec.sigma;
      const double pref = 1.0 / (M_PI * s2 * s2);
      for (size_t i = 0; i < pts.size(); ++i) {
        double r2 = pts[i].first * pts[i].first + pts[i].second * pts[i].second;
        psi.amps[i] = pref * (1.0 - r2 / s2) * std::exp(-0.5 * r2 / s2);
      }
      break;
    }
    case Family::Sparse: {
      const int64_t dim = psi.dim();
      if (spec.d < 1 || spec.d > dim) throw std::invalid_argument("sparse: bad d");
      Rng rng(spec.seed);
      std::set<int64_t> idx;
      while (int64_t(idx.size()) < spec.d) idx.insert(int64_t(rng.uniform_int(uint64_t(dim))));
      for (int64_t i : idx) {
        double mag = rng.uniform(0.1, 1.0);
        double sign = rng.uniform() < 0.5 ? -1.0 : 1.0;
        psi.amps[i] = sign * mag;
      }
      break;
    }
  }

  double nrm = psi.norm();
  if (nrm < 1e-300) throw std::runtime_error("degenerate target (all-zero samples)");
  psi.amps /= nrm;
  return psi;
}

}  // namespace vdsp
