#pragma once
// End-to-end orchestration: VDSP runs, baselines, layer sweeps, the MPO
// bond-dimension table, and report emission.
#include <optional>
#include <string>
#include <vector>

#include "vdsp/circuits.hpp"
#include "vdsp/targets.hpp"
#include "vdsp/train.hpp"

namespace vdsp {

struct RunReport {
  std::string method;  // PQC | MPD | VDSP
  int n_qubits = 0;
  int vl = 0;          // variational layers (0 = n/a)
  int mpd_layers = 0;  // 0 = n/a
  double accuracy = 0.0;
  double infidelity = 0.0;
  int depth = 0;
  int cx_count = 0;
  double initial_ee = 0.0;
  std::optional<double> reduced_ee;  // VDSP only
  double final_ee = 0.0;
  double wall_time_s = 0.0;
  uint64_t seed = 0;
};

struct RunResult {
  Circuit circuit;  // synthesized to {RY, CX}
  RunReport report;
  Statevector prepared;
  TrainReport train_report;  // empty for MPD baseline
};

RunResult run_vdsp(const TargetSpec& target, int vl, int mpd_layers, const TrainConfig& cfg,
                   std::optional<LossKind> loss_override = std::nullopt);
RunResult run_baseline_pqc(const TargetSpec& target, int vl, const TrainConfig& cfg);
RunResult run_baseline_mpd(const TargetSpec& target, int mpd_layers);

struct SweepRow {
  int layers = 0;
  std::string method;
  double accuracy = 0.0;
  double infidelity = 0.0;
};
std::vector<SweepRow> layer_sweep(const TargetSpec& target, int max_layers,
                                  const TrainConfig& cfg);

struct MpoRow {
  int n = 0, layers = 0, max_bond = 0;
};
std::vector<MpoRow> mpo_table(int max_qubits, double svd_cutoff, uint64_t seed);

std::string emit_report_text(const std::vector<RunReport>& reports);
std::string emit_report_json(const std::vector<RunReport>& reports);
std::vector<RunReport> parse_report_json(const std::string& text);

std::string training_history_text(const TrainReport& rep);
std::string state_table_text(const TargetSpec& spec, const Statevector& target,
                             const Statevector& prepared);

// Plain-text "key value" config file covering TargetSpec and TrainConfig
// fields; '#' starts a comment.
struct RunConfig {
  TargetSpec target;
  TrainConfig train;
  int vl = 1, mpd_layers = 1;
  std::optional<LossKind> loss;
};
RunConfig parse_config_file(const std::string& path);

}  // namespace vdsp
