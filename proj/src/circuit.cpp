// Copyright 2026 The Kagome VQE Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "kagome/circuit.hpp"

#include <cmath>
#include <iomanip>
#include <istream>
#include <numbers>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "kagome/errors.hpp"

namespace kagome {

namespace {

constexpr double kPi = std::numbers::pi;
using cd = std::complex<double>;

GateKind kind_from_name(const std::string& name) {
  if (name == "H") return GateKind::H;
  if (name == "X") return GateKind::X;
  if (name == "SX") return GateKind::SqrtX;
  if (name == "SXDG") return GateKind::SqrtXdg;
  if (name == "RZ") return GateKind::Rz;
  if (name == "RY") return GateKind::Ry;
  if (name == "CNOT") return GateKind::CNOT;
  if (name == "CZ") return GateKind::CZ;
  throw UnsupportedGate("unknown gate '" + name + "'");
}

std::string format_angle(const Angle& a) {
  std::ostringstream os;
  os << std::setprecision(17);
  if (a.is_bound()) {
    os << a.value;
  } else {
    os << '$' << a.slot;
    if (a.scale != 1.0 || a.value != 0.0) os << '*' << a.scale << '+' << a.value;
  }
  return os.str();
}

Angle parse_angle(const std::string& tok) {
  if (tok.empty()) throw std::invalid_argument("empty angle");
  if (tok.front() != '$') return Angle::fixed(std::stod(tok));
  const auto star = tok.find('*');
  if (star == std::string::npos) return Angle::param(std::stoi(tok.substr(1)));
  // The separator is the first '+' after the scale that is not an exponent
  // sign; the offset's own sign may follow it directly ("+-1.5").
  std::size_t plus = std::string::npos;
  for (std::size_t k = star + 2; k < tok.size(); ++k) {
    if (tok[k] == '+' && tok[k - 1] != 'e' && tok[k - 1] != 'E') {
      plus = k;
      break;
    }
  }
  if (plus == std::string::npos) throw std::invalid_argument("bad angle '" + tok + "'");
  return Angle::param(std::stoi(tok.substr(1, star - 1)), std::stod(tok.substr(star + 1, plus - star - 1)),
                      std::stod(tok.substr(plus + 1)));
}

// Full-register embedding of a single-qubit operator: I ⊗ ... ⊗ g ⊗ ... ⊗ I
// with qubit 0 as the least significant factor.
ComplexMatrix embed(const Eigen::Matrix2cd& g, int q, int n) {
  ComplexMatrix out = ComplexMatrix::Identity(1, 1);
  for (int k = n - 1; k >= 0; --k) {
    const Eigen::Matrix2cd f = (k == q) ? g : Eigen::Matrix2cd::Identity();
    ComplexMatrix next(out.rows() * 2, out.cols() * 2);
    for (Eigen::Index r = 0; r < out.rows(); ++r)
      for (Eigen::Index c = 0; c < out.cols(); ++c) next.block<2, 2>(2 * r, 2 * c) = out(r, c) * f;
    out = std::move(next);
  }
  return out;
}

ComplexMatrix controlled(const Eigen::Matrix2cd& g, int control, int target, int n) {
  Eigen::Matrix2cd p0 = Eigen::Matrix2cd::Zero(), p1 = Eigen::Matrix2cd::Zero();
  p0(0, 0) = 1.0;
  p1(1, 1) = 1.0;
  return embed(p0, control, n) + embed(p1, control, n) * embed(g, target, n);
}

}  // namespace

bool is_two_qubit(GateKind kind) { return kind == GateKind::CNOT || kind == GateKind::CZ; }
bool is_rotation(GateKind kind) { return kind == GateKind::Rz || kind == GateKind::Ry; }

std::string gate_name(GateKind kind) {
  switch (kind) {
    case GateKind::H: return "H";
    case GateKind::X: return "X";
    case GateKind::SqrtX: return "SX";
    case GateKind::SqrtXdg: return "SXDG";
    case GateKind::Rz: return "RZ";
    case GateKind::Ry: return "RY";
    case GateKind::CNOT: return "CNOT";
    case GateKind::CZ: return "CZ";
  }
  return "?";
}

double Angle::resolve(std::span<const double> params) const {
  if (is_bound()) return value;
  return scale * params[static_cast<std::size_t>(slot)] + value;
}

Circuit::Circuit(int num_qubits, std::vector<Gate> gates, int num_params)
    : num_qubits_(num_qubits), gates_(std::move(gates)), num_params_(num_params) {
  if (num_qubits_ < 0) throw std::invalid_argument("circuit: negative qubit count");
  if (num_params_ < 0) throw std::invalid_argument("circuit: negative parameter count");
  std::vector<bool> used(static_cast<std::size_t>(num_params_), false);
  for (const auto& g : gates_) {
    const auto in_range = [&](int q) { return q >= 0 && q < num_qubits_; };
    if (!in_range(g.qubits[0])) throw std::invalid_argument("circuit: qubit index out of range");
    if (is_two_qubit(g.kind)) {
      if (!in_range(g.qubits[1])) throw std::invalid_argument("circuit: qubit index out of range");
      if (g.qubits[0] == g.qubits[1])
        throw std::invalid_argument("circuit: two-qubit gate on coinciding qubits");
    }
    if (is_rotation(g.kind) && !g.angle.is_bound()) {
      if (g.angle.slot >= num_params_) throw std::invalid_argument("circuit: parameter slot out of range");
      used[static_cast<std::size_t>(g.angle.slot)] = true;
    }
  }
  for (bool u : used)
    if (!u) throw std::invalid_argument("circuit: parameter slot never referenced");
}

Circuit bind(const Circuit& circuit, std::span<const double> params) {
  if (params.size() != static_cast<std::size_t>(circuit.num_params()))
    throw std::invalid_argument("bind: expected " + std::to_string(circuit.num_params()) +
                                " parameters, got " + std::to_string(params.size()));
  std::vector<Gate> gates = circuit.gates();
  for (auto& g : gates)
    if (is_rotation(g.kind)) g.angle = Angle::fixed(g.angle.resolve(params));
  return Circuit(circuit.num_qubits(), std::move(gates), 0);
}

Circuit adjoint(const Circuit& circuit) {
  std::vector<Gate> gates(circuit.gates().rbegin(), circuit.gates().rend());
  for (auto& g : gates) {
    switch (g.kind) {
      case GateKind::SqrtX: g.kind = GateKind::SqrtXdg; break;
      case GateKind::SqrtXdg: g.kind = GateKind::SqrtX; break;
      case GateKind::Rz:
      case GateKind::Ry:
        g.angle.value = -g.angle.value;
        if (!g.angle.is_bound()) g.angle.scale = -g.angle.scale;
        break;
      default: break;  // self-inverse
    }
  }
  return Circuit(circuit.num_qubits(), std::move(gates), circuit.num_params());
}

Circuit fold_global(const Circuit& circuit, int fold) {
  if (fold < 1 || fold % 2 == 0) throw std::invalid_argument("fold_global: fold must be odd and positive");
  if (!circuit.is_bound()) throw InvalidState("fold_global: circuit has unbound parameters");
  const Circuit inv = adjoint(circuit);
  std::vector<Gate> gates = circuit.gates();
  gates.reserve(circuit.size() * static_cast<std::size_t>(fold));
  for (int r = 0; r < (fold - 1) / 2; ++r) {
    gates.insert(gates.end(), inv.gates().begin(), inv.gates().end());
    gates.insert(gates.end(), circuit.gates().begin(), circuit.gates().end());
  }
  return Circuit(circuit.num_qubits(), std::move(gates), 0);
}

Circuit compile_to_native(const Circuit& circuit) {
  std::vector<Gate> out;
  const auto rz = [&](int q, Angle a) { out.push_back(Gate::rotation(GateKind::Rz, q, a)); };
  const auto sx = [&](int q) { out.push_back(Gate::single(GateKind::SqrtX, q)); };
  for (const auto& g : circuit.gates()) {
    const int q = g.qubits[0];
    switch (g.kind) {
      case GateKind::X:
      case GateKind::SqrtX:
      case GateKind::Rz:
      case GateKind::CZ:
        out.push_back(g);
        break;
      case GateKind::SqrtXdg:
        rz(q, Angle::fixed(kPi));
        sx(q);
        rz(q, Angle::fixed(kPi));
        break;
      case GateKind::H:
        rz(q, Angle::fixed(kPi / 2));
        sx(q);
        rz(q, Angle::fixed(kPi / 2));
        break;
      case GateKind::Ry: {
        Angle shifted = g.angle;
        shifted.value += kPi;
        sx(q);
        rz(q, shifted);
        sx(q);
        rz(q, Angle::fixed(3 * kPi));
        break;
      }
      case GateKind::CNOT: {
        const int t = g.qubits[1];
        rz(t, Angle::fixed(kPi / 2));
        sx(t);
        rz(t, Angle::fixed(kPi));
        out.push_back(Gate::two(GateKind::CZ, q, t));
        sx(t);
        rz(t, Angle::fixed(kPi / 2));
        break;
      }
      default:
        throw UnsupportedGate("compile_to_native: unsupported gate " + gate_name(g.kind));
    }
  }
  return Circuit(circuit.num_qubits(), std::move(out), circuit.num_params());
}

Eigen::Matrix2cd gate_matrix(GateKind kind, double angle) {
  Eigen::Matrix2cd m;
  const cd i(0.0, 1.0);
  switch (kind) {
    case GateKind::H:
      m << 1, 1, 1, -1;
      return m / std::sqrt(2.0);
    case GateKind::X:
      m << 0, 1, 1, 0;
      return m;
    case GateKind::SqrtX:
      m << cd(0.5, 0.5), cd(0.5, -0.5), cd(0.5, -0.5), cd(0.5, 0.5);
      return m;
    case GateKind::SqrtXdg:
      m << cd(0.5, -0.5), cd(0.5, 0.5), cd(0.5, 0.5), cd(0.5, -0.5);
      return m;
    case GateKind::Rz:
      m << std::exp(-i * angle / 2.0), 0, 0, std::exp(i * angle / 2.0);
      return m;
    case GateKind::Ry: {
      const double c = std::cos(angle / 2), s = std::sin(angle / 2);
      m << c, -s, s, c;
      return m;
    }
    default:
      throw UnsupportedGate("gate_matrix: " + gate_name(kind) + " is not a single-qubit gate");
  }
}

ComplexMatrix unitary_of(const Circuit& circuit) {
  const int n = circuit.num_qubits();
  if (n > 12) throw SizeLimit("unitary_of: at most 12 qubits");
  if (!circuit.is_bound()) throw InvalidState("unitary_of: circuit has unbound parameters");
  const Eigen::Index dim = Eigen::Index{1} << n;
  ComplexMatrix u = ComplexMatrix::Identity(dim, dim);
  for (const auto& g : circuit.gates()) {
    ComplexMatrix step;
    if (g.kind == GateKind::CNOT) {
      step = controlled(gate_matrix(GateKind::X), g.qubits[0], g.qubits[1], n);
    } else if (g.kind == GateKind::CZ) {
      Eigen::Matrix2cd z = Eigen::Matrix2cd::Identity();
      z(1, 1) = -1.0;
      step = controlled(z, g.qubits[0], g.qubits[1], n);
    } else {
      step = embed(gate_matrix(g.kind, g.angle.value), g.qubits[0], n);
    }
    u = step * u;
  }
  return u;
}

double global_phase_distance(const ComplexMatrix& a, const ComplexMatrix& b, double tol) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw std::invalid_argument("global_phase_distance: shape mismatch");
  cd phase(1.0, 0.0);
  for (Eigen::Index c = 0; c < b.cols(); ++c) {
    bool found = false;
    for (Eigen::Index r = 0; r < b.rows(); ++r) {
      if (std::abs(b(r, c)) > tol) {
        const cd ratio = a(r, c) / b(r, c);
        phase = ratio / std::abs(ratio);
        found = true;
        break;
      }
    }
    if (found) break;
  }
  return (a - phase * b).cwiseAbs().maxCoeff();
}

void write_circuit(std::ostream& os, const Circuit& circuit) {
  os << "qubits " << circuit.num_qubits() << '\n' << "params " << circuit.num_params() << '\n';
  for (const auto& g : circuit.gates()) {
    os << gate_name(g.kind) << ' ' << g.qubits[0];
    if (is_two_qubit(g.kind)) os << ' ' << g.qubits[1];
    if (is_rotation(g.kind)) os << ' ' << format_angle(g.angle);
    os << '\n';
  }
}

std::string to_text(const Circuit& circuit) {
  std::ostringstream os;
  write_circuit(os, circuit);
  return os.str();
}

Circuit read_circuit(std::istream& is) {
  int n = -1, p = 0;
  std::vector<Gate> gates;
  std::string line;
  while (std::getline(is, line)) {
    std::istringstream ls(line);
    std::string head;
    if (!(ls >> head) || head.front() == '#') continue;
    if (head == "qubits") {
      ls >> n;
    } else if (head == "params") {
      ls >> p;
    } else {
      const GateKind kind = kind_from_name(head);
      Gate g;
      g.kind = kind;
      if (!(ls >> g.qubits[0])) throw std::invalid_argument("circuit text: missing qubit in '" + line + "'");
      if (is_two_qubit(kind) && !(ls >> g.qubits[1]))
        throw std::invalid_argument("circuit text: missing target in '" + line + "'");
      if (is_rotation(kind)) {
        std::string tok;
        if (!(ls >> tok)) throw std::invalid_argument("circuit text: missing angle in '" + line + "'");
        g.angle = parse_angle(tok);
      }
      gates.push_back(g);
    }
  }
  if (n < 0) throw std::invalid_argument("circuit text: missing 'qubits' header");
  return Circuit(n, std::move(gates), p);
}

}  // namespace kagome
