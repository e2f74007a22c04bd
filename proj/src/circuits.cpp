#include "vdsp/circuits.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "vdsp/kernels.hpp"

namespace vdsp {

Gate Gate::ry(int q, double angle) {
  Gate g;
  g.kind = RY;
  g.q0 = q;
  g.angle = angle;
  return g;
}

Gate Gate::cx(int control, int target) {
  Gate g;
  g.kind = CX;
  g.q0 = control;
  g.q1 = target;
  return g;
}

Gate Gate::u1q(int q, const Eigen::Matrix2d& m) {
  if ((m.transpose() * m - Eigen::Matrix2d::Identity()).norm() > 1e-10)
    throw std::invalid_argument("u1q: matrix not orthogonal");
  Gate g;
  g.kind = U1Q;
  g.q0 = q;
  g.m1 = m;
  return g;
}

Gate Gate::u2q(int q, const Eigen::Matrix4d& m) {
  if ((m.transpose() * m - Eigen::Matrix4d::Identity()).norm() > 1e-10)
    throw std::invalid_argument("u2q: matrix not orthogonal");
  Gate g;
  g.kind = U2Q;
  g.q0 = q;
  g.q1 = q + 1;
  g.m2 = m;
  return g;
}

int PqcTemplate::n_params() const {
  int per_layer = n_qubits + 2 * ((n_qubits - 1) / 2);
  return n_layers * per_layer + (final_rotation_layer ? n_qubits : 0);
}

int PqcTemplate::cx_count() const {
  return n_layers * (n_qubits / 2 + (n_qubits - 1) / 2);
}

PqcTemplate build_pqc(int n_qubits, int n_layers, bool final_rotation_layer) {
  if (n_qubits < 2) throw std::invalid_argument("build_pqc: n_qubits < 2");
  if (n_layers < 1) throw std::invalid_argument("build_pqc: n_layers < 1");
  return PqcTemplate{n_qubits, n_layers, final_rotation_layer};
}

Circuit bind(const PqcTemplate& tpl, const Eigen::VectorXd& theta) {
  if (theta.size() != tpl.n_params()) throw std::invalid_argument("bind: parameter count mismatch");
  const int n = tpl.n_qubits;
  Circuit c;
  c.n_qubits = n;
  int p = 0;
  for (int layer = 0; layer < tpl.n_layers; ++layer) {
    for (int q = 0; q < n; ++q) c.gates.push_back(Gate::ry(q, theta[p++]));
    for (int q = 0; q + 1 < n; q += 2) c.gates.push_back(Gate::cx(q, q + 1));
    for (int q = 1; q + 1 < n; q += 2) {
      c.gates.push_back(Gate::ry(q, theta[p++]));
      c.gates.push_back(Gate::ry(q + 1, theta[p++]));
    }
    for (int q = 1; q + 1 < n; q += 2) c.gates.push_back(Gate::cx(q, q + 1));
  }
  if (tpl.final_rotation_layer)
    for (int q = 0; q < n; ++q) c.gates.push_back(Gate::ry(q, theta[p++]));
  return c;
}

void apply_circuit(const Circuit& c, Statevector& psi) {
  if (psi.n_qubits != c.n_qubits) throw std::invalid_argument("apply_circuit: size mismatch");
  double* a = psi.amps.data();
  const int n = c.n_qubits;
  for (const Gate& g : c.gates) {
    switch (g.kind) {
      case Gate::RY:
        kern::apply_ry(a, n, g.q0, g.angle);
        break;
      case Gate::CX:
        kern::apply_cx(a, n, g.q0, g.q1);
        break;
      case Gate::U1Q: {
        double m[4] = {g.m1(0, 0), g.m1(0, 1), g.m1(1, 0), g.m1(1, 1)};
        kern::apply_u1q(a, n, g.q0, m);
        break;
      }
      case Gate::U2Q: {
        double m[16];
        for (int r = 0; r < 4; ++r)
          for (int cc = 0; cc < 4; ++cc) m[r * 4 + cc] = g.m2(r, cc);
        kern::apply_u2q(a, n, g.q0, g.q1, m);
        break;
      }
    }
  }
}

Statevector simulate(const Circuit& c, const Statevector& in) {
  Statevector out = in;
  apply_circuit(c, out);
  return out;
}

Circuit inverse(const Circuit& c) {
  Circuit inv;
  inv.n_qubits = c.n_qubits;
  inv.gates.reserve(c.gates.size());
  for (auto it = c.gates.rbegin(); it != c.gates.rend(); ++it) {
    Gate g = *it;
    if (g.kind == Gate::RY) g.angle = -g.angle;
    if (g.kind == Gate::U1Q) g.m1 = Eigen::Matrix2d(g.m1.transpose());
    if (g.kind == Gate::U2Q) g.m2 = Eigen::Matrix4d(g.m2.transpose());
    inv.gates.push_back(g);
  }
  return inv;
}

Metrics metrics(const Circuit& c) {
  Metrics m;
  std::vector<int> avail(c.n_qubits, 0);
  for (const Gate& g : c.gates) {
    if (g.kind == Gate::U1Q || g.kind == Gate::U2Q)
      throw std::invalid_argument("metrics: synthesize first (raw unitary gate present)");
    if (g.kind == Gate::CX) {
      ++m.cx_count;
      int t = std::max(avail[g.q0], avail[g.q1]) + 1;
      avail[g.q0] = avail[g.q1] = t;
      m.depth = std::max(m.depth, t);
    } else {
      int t = avail[g.q0] + 1;
      avail[g.q0] = t;
      m.depth = std::max(m.depth, t);
    }
  }
  return m;
}

std::string export_qasm(const Circuit& c) {
  std::ostringstream os;
  os.precision(17);
  os << "OPENQASM 2.0;\n";
  os << "include \"qelib1.inc\";\n";
  os << "qreg q[" << c.n_qubits << "];\n";
  for (const Gate& g : c.gates) {
    switch (g.kind) {
      case Gate::RY:
        os << "ry(" << g.angle << ") q[" << g.q0 << "];\n";
        break;
      case Gate::CX:
        os << "cx q[" << g.q0 << "],q[" << g.q1 << "];\n";
        break;
      default:
        throw std::invalid_argument("export_qasm: synthesize first");
    }
  }
  return os.str();
}

Circuit parse_qasm(const std::string& text) {
  Circuit c;
  std::istringstream is(text);
  std::string line;
  while (std::getline(is, line)) {
    while (!line.empty() && (line.back() == '\r' || line.back() == ' ')) line.pop_back();
    if (line.empty() || line.rfind("OPENQASM", 0) == 0 || line.rfind("include", 0) == 0) continue;
    if (line.rfind("qreg", 0) == 0) {
      size_t l = line.find('['), r = line.find(']');
      c.n_qubits = std::stoi(line.substr(l + 1, r - l - 1));
      continue;
    }
    if (line.rfind("ry(", 0) == 0) {
      size_t close = line.find(')');
      double angle = std::stod(line.substr(3, close - 3));
      size_t l = line.find('[', close), r = line.find(']', close);
      c.gates.push_back(Gate::ry(std::stoi(line.substr(l + 1, r - l - 1)), angle));
      continue;
    }
    if (line.rfind("cx", 0) == 0) {
      size_t l1 = line.find('['), r1 = line.find(']');
      size_t l2 = line.find('[', r1), r2 = line.find(']', l2);
      c.gates.push_back(Gate::cx(std::stoi(line.substr(l1 + 1, r1 - l1 - 1)),
                                 std::stoi(line.substr(l2 + 1, r2 - l2 - 1))));
      continue;
    }
    throw std::invalid_argument("parse_qasm: unsupported line: " + line);
  }
  if (c.n_qubits == 0) throw std::invalid_argument("parse_qasm: missing qreg");
  return c;
}

}  // namespace vdsp
