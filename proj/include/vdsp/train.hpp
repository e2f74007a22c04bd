#pragma once
// Loss functions over PQC outputs, central finite-difference gradients, and
// Adam optimization with Gaussian initialization and early stopping.
#include <Eigen/Dense>
#include <cstdint>
#include <utility>
#include <vector>

#include "vdsp/circuits.hpp"
#include "vdsp/statevector.hpp"

namespace vdsp {

enum class LossKind { Distance, Infidelity, CumulativeEE, SparseEE };

LossKind loss_from_name(const std::string& name);
std::string loss_name(LossKind k);

// Distance/Infidelity compare U(theta)|0> against `target`. The entropy
// losses evolve `target` forward through the circuit and score the entropy
// of the transformed state.
struct TrainContext {
  const Statevector* target = nullptr;
};

struct TrainConfig {
  int max_iters = 10000;
  double lr = 1e-3, beta1 = 0.9, beta2 = 0.999, eps_adam = 1e-8;
  double init_sigma = 0.1;
  double fd_step = 1e-5;
  uint64_t seed = 0;
  int stop_window = 500;
  double stop_rel_tol = 1e-9;
};

struct TrainReport {
  Eigen::VectorXd theta;                         // best parameters found
  std::vector<std::pair<int, double>> history;   // every 20th iteration
  double initial_loss = 0.0, final_loss = 0.0;
  int iterations = 0;
};

double eval_loss(LossKind kind, const PqcTemplate& tpl, const Eigen::VectorXd& theta,
                 const TrainContext& ctx);

// Central differences; the 2P evaluations run in parallel but are combined in
// fixed index order, so the result is deterministic.
Eigen::VectorXd grad_fd(LossKind kind, const PqcTemplate& tpl, const Eigen::VectorXd& theta,
                        const TrainContext& ctx, double h);

TrainReport train(LossKind kind, const PqcTemplate& tpl, const TrainContext& ctx,
                  const TrainConfig& cfg);

}  // namespace vdsp
