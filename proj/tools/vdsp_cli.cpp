// Command-line driver: target construction, PQC training, MPD and VDSP
// pipelines, layer sweeps, the MPO bond-dimension table, and manifest-driven
// benchmark runs. All artifacts are written under --out-dir with fixed names
// (report.txt, report.json, training.dat, state.dat, circuit.qasm).
#include <CLI11.hpp>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "vdsp/circuits.hpp"
#include "vdsp/pipeline.hpp"
#include "vdsp/targets.hpp"
#include "vdsp/tensornet.hpp"
#include "vdsp/train.hpp"

namespace fs = std::filesystem;
using namespace vdsp;

namespace {

struct CommonOpts {
  std::string family = "normal1d";
  int qubits = 10;
  double mu = 0.5, sigma = 0.1;
  std::vector<double> mu2{0.5, 0.5};
  std::vector<double> cov{0.1, 0.01, 0.01, 0.1};
  int d = 1;
  int vl = 1, mpd_layers = 1;
  std::string loss;  // empty = family default
  int iters = 10000;
  double lr = 1e-3, init_sigma = 0.1, fd_step = 1e-5;
  uint64_t seed = 0;
  std::string out_dir = ".";
  bool qasm = false;
  std::string config;
};

void add_common_flags(CLI::App* cmd, CommonOpts& o, bool with_train) {
  cmd->add_option("--family", o.family, "target family: normal1d|normal2d|ricker1d|ricker2d|sparse");
  cmd->add_option("--qubits", o.qubits, "number of qubits");
  cmd->add_option("--mu", o.mu, "1D mean / center");
  cmd->add_option("--sigma", o.sigma, "1D width");
  cmd->add_option("--mu2", o.mu2, "2D normal mean (2 values)")->expected(2);
  cmd->add_option("--cov", o.cov, "2D normal covariance, row-major (4 values)")->expected(4);
  cmd->add_option("--d", o.d, "sparse family: number of nonzero amplitudes");
  cmd->add_option("--seed", o.seed, "random seed");
  cmd->add_option("--out-dir", o.out_dir, "output directory");
  cmd->add_flag("--qasm", o.qasm, "also write circuit.qasm");
  cmd->add_option("--config", o.config, "plain-text config file (overrides flags)");
  if (with_train) {
    cmd->add_option("--vl", o.vl, "variational layers");
    cmd->add_option("--mpd-layers", o.mpd_layers, "disentangling layers");
    cmd->add_option("--loss", o.loss,
                    "loss: distance|infidelity|cumulative_ee|sparse_ee (default per family)");
    cmd->add_option("--iters", o.iters, "max optimizer iterations");
    cmd->add_option("--lr", o.lr, "Adam learning rate");
    cmd->add_option("--init-sigma", o.init_sigma, "parameter init std deviation");
    cmd->add_option("--fd-step", o.fd_step, "finite-difference step");
  }
}

TargetSpec make_spec(const CommonOpts& o) {
  TargetSpec spec = TargetSpec::benchmark(family_from_name(o.family), o.qubits);
  spec.mu = o.mu;
  spec.sigma = o.sigma;
  spec.mu2 = Eigen::Vector2d(o.mu2[0], o.mu2[1]);
  spec.cov << o.cov[0], o.cov[1], o.cov[2], o.cov[3];
  spec.d = o.d;
  spec.seed = o.seed;
  return spec;
}

TrainConfig make_train_cfg(const CommonOpts& o) {
  TrainConfig cfg;
  cfg.max_iters = o.iters;
  cfg.lr = o.lr;
  cfg.init_sigma = o.init_sigma;
  cfg.fd_step = o.fd_step;
  cfg.seed = o.seed;
  return cfg;
}

// --config overrides the flag values where present.
void apply_config(CommonOpts& o, TargetSpec& spec, TrainConfig& cfg,
                  std::optional<LossKind>& loss, int& vl, int& mpd_layers) {
  if (o.config.empty()) return;
  RunConfig rc = parse_config_file(o.config);
  spec = rc.target;
  cfg = rc.train;
  loss = rc.loss;
  vl = rc.vl;
  mpd_layers = rc.mpd_layers;
}

void write_file(const fs::path& dir, const std::string& name, const std::string& text) {
  fs::create_directories(dir);
  std::ofstream f(dir / name, std::ios::binary);
  if (!f) throw std::runtime_error("cannot write " + (dir / name).string());
  f << text;
}

void write_run_outputs(const CommonOpts& o, const TargetSpec& spec, const RunResult& res,
                       bool with_training) {
  fs::path dir(o.out_dir);
  Statevector target = build_target(spec);
  write_file(dir, "report.txt", emit_report_text({res.report}));
  write_file(dir, "report.json", emit_report_json({res.report}));
  write_file(dir, "state.dat", state_table_text(spec, target, res.prepared));
  if (with_training) write_file(dir, "training.dat", training_history_text(res.train_report));
  if (o.qasm) write_file(dir, "circuit.qasm", export_qasm(res.circuit));
  std::cout << emit_report_text({res.report});
}

std::optional<LossKind> loss_override(const CommonOpts& o) {
  if (o.loss.empty()) return std::nullopt;
  return loss_from_name(o.loss);
}

int cmd_target(const CommonOpts& o) {
  TargetSpec spec = make_spec(o);
  {  // config can replace the whole spec
    CommonOpts tmp = o;
    TrainConfig cfg;
    std::optional<LossKind> loss;
    int vl = 0, mpd = 0;
    apply_config(tmp, spec, cfg, loss, vl, mpd);
  }
  Statevector psi = build_target(spec);
  auto sp = state_spectra(psi);
  write_file(fs::path(o.out_dir), "state.dat", state_table_text(spec, psi, psi));
  std::ostringstream rep;
  rep << "family " << family_name(spec.family) << "\n"
      << "qubits " << spec.grid.n_qubits << "\n"
      << "cumulative_ee " << cumulative_ee(sp) << "\n"
      << "sparse_ee " << sparse_ee_loss(sp) << "\n"
      << "chi2_truncation_bound " << truncation_bound(sp, 2) << "\n";
  write_file(fs::path(o.out_dir), "report.txt", rep.str());
  std::cout << rep.str();
  return 0;
}

int cmd_train(const CommonOpts& o) {
  TargetSpec spec = make_spec(o);
  TrainConfig cfg = make_train_cfg(o);
  std::optional<LossKind> loss = loss_override(o);
  int vl = o.vl, mpd = o.mpd_layers;
  {
    CommonOpts tmp = o;
    apply_config(tmp, spec, cfg, loss, vl, mpd);
  }
  Statevector target = build_target(spec);
  LossKind kind = loss.value_or(spec.family == Family::Sparse ? LossKind::SparseEE
                                                              : LossKind::CumulativeEE);
  bool state_loss = kind == LossKind::Distance || kind == LossKind::Infidelity;
  PqcTemplate tpl = build_pqc(spec.grid.n_qubits, vl, state_loss);
  TrainContext ctx{&target};
  TrainReport rep = train(kind, tpl, ctx, cfg);
  fs::path dir(o.out_dir);
  write_file(dir, "training.dat", training_history_text(rep));
  std::ostringstream out;
  out << "loss " << loss_name(kind) << "\n"
      << "iterations " << rep.iterations << "\n"
      << "initial_loss " << rep.initial_loss << "\n"
      << "final_loss " << rep.final_loss << "\n";
  write_file(dir, "report.txt", out.str());
  Circuit c = bind(tpl, rep.theta);
  if (o.qasm) write_file(dir, "circuit.qasm", export_qasm(c));
  Statevector prepared =
      state_loss ? simulate(c, Statevector::zero_state(spec.grid.n_qubits)) : simulate(c, target);
  write_file(dir, "state.dat", state_table_text(spec, target, prepared));
  std::cout << out.str();
  return 0;
}

int cmd_mpd(const CommonOpts& o) {
  TargetSpec spec = make_spec(o);
  TrainConfig cfg;
  std::optional<LossKind> loss;
  int vl = o.vl, mpd = o.mpd_layers;
  {
    CommonOpts tmp = o;
    apply_config(tmp, spec, cfg, loss, vl, mpd);
  }
  RunResult res = run_baseline_mpd(spec, mpd);
  write_run_outputs(o, spec, res, false);
  return 0;
}

int cmd_vdsp(const CommonOpts& o) {
  TargetSpec spec = make_spec(o);
  TrainConfig cfg = make_train_cfg(o);
  std::optional<LossKind> loss = loss_override(o);
  int vl = o.vl, mpd = o.mpd_layers;
  {
    CommonOpts tmp = o;
    apply_config(tmp, spec, cfg, loss, vl, mpd);
  }
  RunResult res = run_vdsp(spec, vl, mpd, cfg, loss);
  write_run_outputs(o, spec, res, true);
  return 0;
}

int cmd_pqc(const CommonOpts& o) {
  TargetSpec spec = make_spec(o);
  TrainConfig cfg = make_train_cfg(o);
  std::optional<LossKind> loss;
  int vl = o.vl, mpd = o.mpd_layers;
  {
    CommonOpts tmp = o;
    apply_config(tmp, spec, cfg, loss, vl, mpd);
  }
  RunResult res = run_baseline_pqc(spec, vl, cfg);
  write_run_outputs(o, spec, res, true);
  return 0;
}

int cmd_sweep(const CommonOpts& o, int max_layers) {
  TargetSpec spec = make_spec(o);
  TrainConfig cfg = make_train_cfg(o);
  auto rows = layer_sweep(spec, max_layers, cfg);
  std::ostringstream out;
  out << "# layers method accuracy infidelity\n";
  for (const auto& r : rows)
    out << r.layers << " " << r.method << " " << std::setprecision(10) << r.accuracy << " "
        << r.infidelity << "\n";
  write_file(fs::path(o.out_dir), "report.txt", out.str());
  std::cout << out.str();
  return 0;
}

int cmd_mpo_table(const CommonOpts& o, double cutoff) {
  auto rows = mpo_table(o.qubits, cutoff, o.seed);
  std::ostringstream out;
  out << "# qubits layers max_bond\n";
  for (const auto& r : rows) out << r.n << " " << r.layers << " " << r.max_bond << "\n";
  write_file(fs::path(o.out_dir), "report.txt", out.str());
  std::cout << out.str();
  return 0;
}

struct ManifestRow {
  TargetSpec spec;
  std::string method;
  int vl = 0, mpd_layers = 0;
};

std::vector<ManifestRow> parse_manifest(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw std::runtime_error("cannot open manifest: " + path);
  std::vector<ManifestRow> rows;
  std::string line;
  while (std::getline(f, line)) {
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream ss(line);
    std::string family, d, method, vl, mpd, seed;
    if (!(ss >> family >> std::ws)) continue;
    int qubits;
    if (!(ss >> qubits >> d >> method >> vl >> mpd >> seed))
      throw std::runtime_error("malformed manifest row: " + line);
    ManifestRow row;
    row.spec = TargetSpec::benchmark(family_from_name(family), qubits);
    if (d != "-") row.spec.d = std::stoi(d);
    row.spec.seed = std::stoull(seed);
    row.method = method;
    if (vl != "-") row.vl = std::stoi(vl);
    if (mpd != "-") row.mpd_layers = std::stoi(mpd);
    rows.push_back(std::move(row));
  }
  return rows;
}

int cmd_bench(const CommonOpts& o, const std::string& manifest) {
  auto rows = parse_manifest(manifest);
  std::vector<RunReport> reports;
  for (const auto& row : rows) {
    TrainConfig cfg;
    cfg.max_iters = o.iters;
    cfg.seed = row.spec.seed;
    RunResult res;
    if (row.method == "pqc")
      res = run_baseline_pqc(row.spec, row.vl, cfg);
    else if (row.method == "mpd")
      res = run_baseline_mpd(row.spec, row.mpd_layers);
    else if (row.method == "vdsp")
      res = run_vdsp(row.spec, row.vl, row.mpd_layers, cfg);
    else
      throw std::runtime_error("unknown method in manifest: " + row.method);
    std::cout << family_name(row.spec.family) << " " << row.spec.grid.n_qubits << "q "
              << row.method << ": accuracy " << res.report.accuracy << ", infidelity "
              << res.report.infidelity << std::endl;
    reports.push_back(res.report);
  }
  write_file(fs::path(o.out_dir), "report.txt", emit_report_text(reports));
  write_file(fs::path(o.out_dir), "report.json", emit_report_json(reports));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Variational disentangling state preparation: benchmark targets, PQC training, "
               "MPD synthesis, and gate-level circuit export"};
  app.require_subcommand(1);
  CommonOpts o;

  CLI::App* c_target = app.add_subcommand("target", "build and export a target state");
  add_common_flags(c_target, o, false);

  CLI::App* c_train = app.add_subcommand("train", "train a PQC on a target (no MPD step)");
  add_common_flags(c_train, o, true);

  CLI::App* c_pqc = app.add_subcommand("pqc", "distance-trained PQC baseline");
  add_common_flags(c_pqc, o, true);

  CLI::App* c_mpd = app.add_subcommand("mpd", "matrix-product-disentangler baseline");
  add_common_flags(c_mpd, o, true);

  CLI::App* c_vdsp = app.add_subcommand("vdsp", "full disentangle-then-prepare pipeline");
  add_common_flags(c_vdsp, o, true);

  int max_layers = 4;
  CLI::App* c_sweep = app.add_subcommand("sweep", "accuracy vs layer count for all methods");
  add_common_flags(c_sweep, o, true);
  c_sweep->add_option("--max-layers", max_layers, "largest layer count");

  double cutoff = 1e-12;
  CLI::App* c_mpo = app.add_subcommand("mpo-table", "max MPO bond dimension vs (n, layers)");
  add_common_flags(c_mpo, o, false);
  c_mpo->add_option("--cutoff", cutoff, "relative SVD truncation cutoff");

  std::string manifest = "benchmarks/manifest.txt";
  CLI::App* c_bench = app.add_subcommand("bench", "run a manifest of benchmark rows");
  add_common_flags(c_bench, o, true);
  c_bench->add_option("--manifest", manifest, "manifest file");

  CLI11_PARSE(app, argc, argv);

  try {
    if (c_target->parsed()) return cmd_target(o);
    if (c_train->parsed()) return cmd_train(o);
    if (c_pqc->parsed()) return cmd_pqc(o);
    if (c_mpd->parsed()) return cmd_mpd(o);
    if (c_vdsp->parsed()) return cmd_vdsp(o);
    if (c_sweep->parsed()) return cmd_sweep(o, max_layers);
    if (c_mpo->parsed()) return cmd_mpo_table(o, cutoff);
    if (c_bench->parsed()) return cmd_bench(o, manifest);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
