#include "vdsp/pipeline.hpp"

#include <chrono>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "vdsp/mpd.hpp"
#include "vdsp/rng.hpp"
#include "vdsp/synth.hpp"
#include "vdsp/tensornet.hpp"

namespace vdsp {

namespace {

double now_s() {
  return std::chrono::duration<double>(std::chrono::steady_clock::now().time_since_epoch())
      .count();
}

double state_ee(const Statevector& psi) { return cumulative_ee(state_spectra(psi)); }

void finish_report(RunResult& res, const Statevector& target) {
  res.prepared = simulate(res.circuit, Statevector::zero_state(target.n_qubits));
  res.report.accuracy = accuracy(target, res.prepared);
  res.report.infidelity = infidelity(target, res.prepared);
  Metrics m = metrics(res.circuit);
  res.report.cx_count = m.cx_count;
  res.report.depth = m.depth;
  res.report.final_ee = state_ee(res.prepared);
}

}  // namespace

RunResult run_vdsp(const TargetSpec& target, int vl, int mpd_layers, const TrainConfig& cfg,
                   std::optional<LossKind> loss_override) {
  if (vl < 1 || mpd_layers < 1) throw std::invalid_argument("run_vdsp: vl and mpd_layers >= 1");
  const double t0 = now_s();
  Statevector psi = build_target(target);
  LossKind loss = loss_override.value_or(
      target.family == Family::Sparse ? LossKind::SparseEE : LossKind::CumulativeEE);

  RunResult res;
  res.report.method = "VDSP";
  res.report.n_qubits = psi.n_qubits;
  res.report.vl = vl;
  res.report.mpd_layers = mpd_layers;
  res.report.seed = cfg.seed;
  res.report.initial_ee = state_ee(psi);

  PqcTemplate tpl = build_pqc(psi.n_qubits, vl, /*final_rotation_layer=*/false);
  TrainContext ctx{&psi};
  res.train_report = train(loss, tpl, ctx, cfg);

  Circuit v = bind(tpl, res.train_report.theta);
  Statevector transformed = simulate(v, psi);
  res.report.reduced_ee = state_ee(transformed);

  auto layers = disentangle_layers(transformed, mpd_layers);
  Circuit raw = mpd_to_circuit(layers);
  Circuit inv = inverse(v);
  raw.gates.insert(raw.gates.end(), inv.gates.begin(), inv.gates.end());

  // norm identity: || psi - V^dag U |0> || == || V psi - U |0> || (unitarity)
  Statevector mpd_only = prepare_from_layers(layers);
  double lhs = (psi.amps - simulate(raw, Statevector::zero_state(psi.n_qubits)).amps).norm();
  double rhs = (transformed.amps - mpd_only.amps).norm();
  if (std::abs(lhs - rhs) > 1e-10)
    throw std::runtime_error("run_vdsp: norm identity violated (non-unitary composition)");

  res.circuit = synthesize_circuit(raw);

  finish_report(res, psi);
  res.report.wall_time_s = now_s() - t0;
  return res;
}

RunResult run_baseline_pqc(const TargetSpec& target, int vl, const TrainConfig& cfg) {
  if (vl < 1) throw std::invalid_argument("run_baseline_pqc: vl >= 1");
  const double t0 = now_s();
  Statevector psi = build_target(target);

  RunResult res;
  res.report.method = "PQC";
  res.report.n_qubits = psi.n_qubits;
  res.report.vl = vl;
  res.report.seed = cfg.seed;
  res.report.initial_ee = state_ee(psi);

  PqcTemplate tpl = build_pqc(psi.n_qubits, vl, /*final_rotation_layer=*/true);
  TrainContext ctx{&psi};
  res.train_report = train(LossKind::Distance, tpl, ctx, cfg);
  res.circuit = bind(tpl, res.train_report.theta);

  finish_report(res, psi);
  res.report.wall_time_s = now_s() - t0;
  return res;
}

RunResult run_baseline_mpd(const TargetSpec& target, int mpd_layers) {
  if (mpd_layers < 1) throw std::invalid_argument("run_baseline_mpd: mpd_layers >= 1");
  const double t0 = now_s();
  Statevector psi = build_target(target);

  RunResult res;
  res.report.method = "MPD";
  res.report.n_qubits = psi.n_qubits;
  res.report.mpd_layers = mpd_layers;
  res.report.initial_ee = state_ee(psi);

  auto layers = disentangle_layers(psi, mpd_layers);
  res.circuit = synthesize_circuit(mpd_to_circuit(layers));

  finish_report(res, psi);
  res.report.wall_time_s = now_s() - t0;
  return res;
}

std::vector<SweepRow> layer_sweep(const TargetSpec& target, int max_layers,
                                  const TrainConfig& cfg) {
  if (max_layers < 1) throw std::invalid_argument("layer_sweep: max_layers >= 1");
  std::vector<SweepRow> rows;
  for (int k = 1; k <= max_layers; ++k) {
    RunResult v = run_vdsp(target, k, 1, cfg);
    rows.push_back({k, "VDSP", v.report.accuracy, v.report.infidelity});
    RunResult p = run_baseline_pqc(target, k, cfg);
    rows.push_back({k, "PQC", p.report.accuracy, p.report.infidelity});
    RunResult m = run_baseline_mpd(target, k);
    rows.push_back({k, "MPD", m.report.accuracy, m.report.infidelity});
  }
  return rows;
}

std::vector<MpoRow> mpo_table(int max_qubits, double svd_cutoff, uint64_t seed) {
  if (max_qubits > 12) throw std::invalid_argument("mpo_table: max_qubits <= 12");
  std::vector<MpoRow> rows;
  for (int n = 2; n <= max_qubits; ++n)
    for (int layers = 1; layers <= n; ++layers) {
      PqcTemplate tpl = build_pqc(n, layers, false);
      Rng rng(seed ^ (uint64_t(n) << 32) ^ uint64_t(layers));
      Eigen::VectorXd theta(tpl.n_params());
      for (int j = 0; j < theta.size(); ++j) theta[j] = rng.uniform(0.0, 2.0 * M_PI);
      MPO mpo = circuit_to_mpo(bind(tpl, theta), svd_cutoff);
      rows.push_back({n, layers, mpo.max_bond()});
    }
  return rows;
}

std::string emit_report_text(const std::vector<RunReport>& reports) {
  if (reports.empty()) throw std::invalid_argument("emit_report_text: empty report list");
  std::ostringstream os;
  os << std::left << std::setw(6) << "Method" << std::right << std::setw(8) << "#qubits"
     << std::setw(5) << "#VL" << std::setw(7) << "#MPDL" << std::setw(11) << "Accuracy"
     << std::setw(12) << "Infidelity" << std::setw(7) << "Depth" << std::setw(6) << "#CX"
     << std::setw(12) << "InitialEE" << std::setw(12) << "ReducedEE" << std::setw(12)
     << "FinalEE" << "\n";
  for (const auto& r : reports) {
    os << std::left << std::setw(6) << r.method << std::right << std::setw(8) << r.n_qubits;
    os << std::setw(5) << (r.vl > 0 ? std::to_string(r.vl) : std::string("-"));
    os << std::setw(7) << (r.mpd_layers > 0 ? std::to_string(r.mpd_layers) : std::string("-"));
    os << std::setw(11) << std::fixed << std::setprecision(6) << r.accuracy;
    os << std::setw(12) << std::scientific << std::setprecision(2) << r.infidelity;
    os << std::setw(7) << r.depth << std::setw(6) << r.cx_count;
    os << std::setw(12) << std::fixed << std::setprecision(6) << r.initial_ee;
    if (r.reduced_ee)
      os << std::setw(12) << std::fixed << std::setprecision(6) << *r.reduced_ee;
    else
      os << std::setw(12) << "-";
    os << std::setw(12) << std::fixed << std::setprecision(6) << r.final_ee << "\n";
  }
  return os.str();
}

std::string emit_report_json(const std::vector<RunReport>& reports) {
  if (reports.empty()) throw std::invalid_argument("emit_report_json: empty report list");
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& r : reports) {
    nlohmann::json j{{"method", r.method},       {"n_qubits", r.n_qubits},
                     {"vl", r.vl},               {"mpd_layers", r.mpd_layers},
                     {"accuracy", r.accuracy},   {"infidelity", r.infidelity},
                     {"depth", r.depth},         {"cx_count", r.cx_count},
                     {"initial_ee", r.initial_ee}, {"final_ee", r.final_ee},
                     {"wall_time_s", r.wall_time_s}, {"seed", r.seed}};
    if (r.reduced_ee) j["reduced_ee"] = *r.reduced_ee;
    arr.push_back(j);
  }
  return arr.dump(2) + "\n";
}

std::vector<RunReport> parse_report_json(const std::string& text) {
  auto arr = nlohmann::json::parse(text);
  std::vector<RunReport> out;
  for (const auto& j : arr) {
    RunReport r;
    r.method = j.at("method");
    r.n_qubits = j.at("n_qubits");
    r.vl = j.at("vl");
    r.mpd_layers = j.at("mpd_layers");
    r.accuracy = j.at("accuracy");
    r.infidelity = j.at("infidelity");
    r.depth = j.at("depth");
    r.cx_count = j.at("cx_count");
    r.initial_ee = j.at("initial_ee");
    r.final_ee = j.at("final_ee");
    r.wall_time_s = j.at("wall_time_s");
    r.seed = j.at("seed");
    if (j.contains("reduced_ee")) r.reduced_ee = double(j.at("reduced_ee"));
    out.push_back(r);
  }
  return out;
}

std::string training_history_text(const TrainReport& rep) {
  std::ostringstream os;
  os << "# iter loss\n";
  os.precision(12);
  for (const auto& [it, loss] : rep.history) os << it << " " << loss << "\n";
  return os.str();
}

std::string state_table_text(const TargetSpec& spec, const Statevector& target,
                             const Statevector& prepared) {
  std::ostringstream os;
  os.precision(12);
  if (spec.grid.dims == 1) {
    os << "# x target prepared\n";
    auto x = grid_points(spec.grid);
    for (int64_t i = 0; i < target.dim(); ++i)
      os << x[i] << " " << target.amps[i] << " " << prepared.amps[i] << "\n";
  } else {
    os << "# x y target prepared\n";
    auto pts = grid_points_2d(spec.grid);
    for (int64_t i = 0; i < target.dim(); ++i)
      os << pts[i].first << " " << pts[i].second << " " << target.amps[i] << " "
         << prepared.amps[i] << "\n";
  }
  return os.str();
}

RunConfig parse_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config file: " + path);
  RunConfig cfg;
  std::string line;
  while (std::getline(in, line)) {
    auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    std::istringstream is(line);
    std::string key;
    if (!(is >> key)) continue;
    if (key == "family") {
      std::string v;
      is >> v;
      int n = cfg.target.grid.n_qubits;
      uint64_t seed = cfg.target.seed;
      int d = cfg.target.d;
      cfg.target = TargetSpec::benchmark(family_from_name(v), n > 0 ? n : 2);
      cfg.target.seed = seed;
      cfg.target.d = d;
    } else if (key == "qubits") {
      int n;
      is >> n;
      cfg.target = TargetSpec::benchmark(cfg.target.family, n);
    } else if (key == "mu") {
      is >> cfg.target.mu >> std::ws;
      cfg.target.mu2[0] = cfg.target.mu;
      double second;
      if (is >> second) cfg.target.mu2[1] = second;
    } else if (key == "sigma") {
      is >> cfg.target.sigma;
    } else if (key == "cov") {
      double a, b, c, d;
      is >> a >> b >> c >> d;
      cfg.target.cov << a, b, c, d;
    } else if (key == "d") {
      is >> cfg.target.d;
    } else if (key == "seed") {
      is >> cfg.train.seed;
      cfg.target.seed = cfg.train.seed;
    } else if (key == "vl") {
      is >> cfg.vl;
    } else if (key == "mpd_layers") {
      is >> cfg.mpd_layers;
    } else if (key == "loss") {
      std::string v;
      is >> v;
      cfg.loss = loss_from_name(v);
    } else if (key == "iters") {
      is >> cfg.train.max_iters;
    } else if (key == "lr") {
      is >> cfg.train.lr;
    } else if (key == "init_sigma") {
      is >> cfg.train.init_sigma;
    } else if (key == "fd_step") {
      is >> cfg.train.fd_step;
    } else {
      throw std::runtime_error("config: unknown key " + key);
    }
  }
  return cfg;
}

}  // namespace vdsp
