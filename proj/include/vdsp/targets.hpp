#pragma once
// Benchmark target-state construction: grid-discretized 1D/2D densities and
// random sparse states, amplitude-encoded and normalized.
#include <Eigen/Dense>
#include <cstdint>
#include <string>
#include <vector>

#include "vdsp/statevector.hpp"

namespace vdsp {

struct GridSpec {
  int n_qubits = 0;
  double lo = 0.0, hi = 1.0;  // half-open [lo, hi)
  int dims = 1;               // 1 or 2; dims=2 needs even n_qubits
};

enum class Family { Normal1d, Normal2d, Ricker1d, Ricker2d, Sparse };

struct TargetSpec {
  Family family = Family::Normal1d;
  double mu = 0.5, sigma = 0.1;               // 1D families
  Eigen::Vector2d mu2{0.5, 0.5};              // normal2d mean
  Eigen::Matrix2d cov{{0.1, 0.01}, {0.01, 0.1}};  // normal2d covariance
  int d = 1;                                  // sparse: nonzero count
  uint64_t seed = 0;                          // sparse sampling seed
  GridSpec grid;

  // Fills grid with the standard benchmark domain for the family.
  static TargetSpec benchmark(Family family, int n_qubits);
};

Family family_from_name(const std::string& name);
std::string family_name(Family f);

// Grid coordinate of basis index i: lo + (hi - lo) * i / 2^n. For dims=2 the
// flattening is row-major with x on the most significant n/2 qubits:
// i = ix * 2^(n/2) + iy.
std::vector<double> grid_points(const GridSpec& spec);            // 1D
std::vector<std::pair<double, double>> grid_points_2d(const GridSpec& spec);

Statevector build_target(const TargetSpec& spec);

}  // namespace vdsp
