#include "vdsp/train.hpp"

#include <cmath>
#include <stdexcept>

#include "vdsp/rng.hpp"
#include "vdsp/tensornet.hpp"

namespace vdsp {

LossKind loss_from_name(const std::string& name) {
  if (name == "distance") return LossKind::Distance;
  if (name == "infidelity") return LossKind::Infidelity;
  if (name == "cumulative_ee") return LossKind::CumulativeEE;
  if (name == "sparse_ee") return LossKind::SparseEE;
  throw std::invalid_argument("unknown loss: " + name);
}

std::string loss_name(LossKind k) {
  switch (k) {
    case LossKind::Distance: return "distance";
    case LossKind::Infidelity: return "infidelity";
    case LossKind::CumulativeEE: return "cumulative_ee";
    case LossKind::SparseEE: return "sparse_ee";
  }
  return "?";
}

double eval_loss(LossKind kind, const PqcTemplate& tpl, const Eigen::VectorXd& theta,
                 const TrainContext& ctx) {
  if (!ctx.target) throw std::invalid_argument("eval_loss: missing target/initial state");
  Circuit c = bind(tpl, theta);
  switch (kind) {
    case LossKind::Distance: {
      Statevector out = simulate(c, Statevector::zero_state(tpl.n_qubits));
      return (ctx.target->amps - out.amps).norm();
    }
    case LossKind::Infidelity: {
      Statevector out = simulate(c, Statevector::zero_state(tpl.n_qubits));
      double ov = ctx.target->amps.dot(out.amps);
      return 1.0 - ov * ov;
    }
    case LossKind::CumulativeEE: {
      Statevector out = simulate(c, *ctx.target);
      return cumulative_ee(state_spectra(out));
    }
    case LossKind::SparseEE: {
      Statevector out = simulate(c, *ctx.target);
      return sparse_ee_loss(state_spectra(out));
    }
  }
  return 0.0;
}

Eigen::VectorXd grad_fd(LossKind kind, const PqcTemplate& tpl, const Eigen::VectorXd& theta,
                        const TrainContext& ctx, double h) {
  if (h <= 0) throw std::invalid_argument("grad_fd: h <= 0");
  const int p = int(theta.size());
  Eigen::VectorXd g(p);
#pragma omp parallel for schedule(dynamic)
  for (int j = 0; j < p; ++j) {
    Eigen::VectorXd tp = theta, tm = theta;
    tp[j] += h;
    tm[j] -= h;
    g[j] = (eval_loss(kind, tpl, tp, ctx) - eval_loss(kind, tpl, tm, ctx)) / (2 * h);
  }
  return g;
}

TrainReport train(LossKind kind, const PqcTemplate& tpl, const TrainContext& ctx,
                  const TrainConfig& cfg) {
  if (cfg.max_iters < 1) throw std::invalid_argument("train: max_iters < 1");
  const int p = tpl.n_params();
  Rng rng(cfg.seed);
  Eigen::VectorXd theta(p);
  for (int j = 0; j < p; ++j) theta[j] = cfg.init_sigma * rng.normal();

  TrainReport rep;
  rep.initial_loss = eval_loss(kind, tpl, theta, ctx);
  rep.theta = theta;
  double best = rep.initial_loss;
  int last_improve = 0;

  Eigen::VectorXd m = Eigen::VectorXd::Zero(p), v = Eigen::VectorXd::Zero(p);
  double b1t = 1.0, b2t = 1.0;
  int it = 0;
  for (; it < cfg.max_iters; ++it) {
    Eigen::VectorXd g = grad_fd(kind, tpl, theta, ctx, cfg.fd_step);
    b1t *= cfg.beta1;
    b2t *= cfg.beta2;
    m = cfg.beta1 * m + (1 - cfg.beta1) * g;
    v = cfg.beta2 * v + (1 - cfg.beta2) * g.cwiseProduct(g);
    Eigen::VectorXd mhat = m / (1 - b1t);
    Eigen::VectorXd vhat = v / (1 - b2t);
    theta -= cfg.lr * (mhat.array() / (vhat.array().sqrt() + cfg.eps_adam)).matrix();

    double loss = eval_loss(kind, tpl, theta, ctx);
    if (!std::isfinite(loss)) throw std::runtime_error("train: non-finite loss");
    if (it % 20 == 0) rep.history.emplace_back(it, loss);
    if (best - loss > cfg.stop_rel_tol * std::max(std::abs(best), 1e-30)) {
      best = loss;
      rep.theta = theta;
      last_improve = it;
    } else if (loss < best) {
      best = loss;
      rep.theta = theta;
    }
    if (it - last_improve >= cfg.stop_window) {
      ++it;
      break;
    }
  }
  rep.iterations = it;
  rep.final_loss = best;
  if (rep.history.empty() || rep.history.back().first != it - 1)
    rep.history.emplace_back(it - 1, best);
  return rep;
}

}  // namespace vdsp
