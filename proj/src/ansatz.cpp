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

#include "kagome/ansatz.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <numbers>
#include <ostream>
#include <set>
#include <stdexcept>

namespace kagome {

namespace {

constexpr double kPi = std::numbers::pi;

struct AnsatzBuilder {
  int n;
  std::vector<Gate> gates;
  std::vector<Layer> layers;
  std::vector<std::size_t> gate_index;

  void h_all() {
    for (int q = 0; q < n; ++q) gates.push_back(Gate::single(GateKind::H, q));
  }
  void ry(int q, Layer layer) {
    const int slot = static_cast<int>(layers.size());
    gate_index.push_back(gates.size());
    layers.push_back(layer);
    gates.push_back(Gate::rotation(GateKind::Ry, q, Angle::param(slot)));
  }
  void cnot(int c, int t) { gates.push_back(Gate::two(GateKind::CNOT, c, t)); }

  AnsatzSpec finish() {
    const int p = static_cast<int>(layers.size());
    return {Circuit(n, std::move(gates), p), std::move(layers), std::move(gate_index)};
  }
};

}  // namespace

int AnsatzSpec::qubit_of_slot(int slot) const {
  return circuit.gates().at(gate_of_slot.at(static_cast<std::size_t>(slot))).qubits[0];
}

std::vector<int> AnsatzSpec::slots_in(Layer layer) const {
  std::vector<int> out;
  for (std::size_t s = 0; s < layer_of_slot.size(); ++s)
    if (layer_of_slot[s] == layer) out.push_back(static_cast<int>(s));
  return out;
}

AnsatzSpec triangle_ansatz() {
  AnsatzBuilder b{3, {}, {}, {}};
  b.h_all();
  b.ry(0, Layer::PreEntangler);
  b.ry(2, Layer::PreEntangler);
  b.cnot(0, 1);
  b.cnot(1, 2);
  b.ry(1, Layer::PostEntangler);
  return b.finish();
}

AnsatzSpec star_ansatz() {
  AnsatzBuilder b{12, {}, {}, {}};
  b.h_all();
  for (int q = 0; q < 12; q += 2) b.ry(q, Layer::PreEntangler);
  for (int q = 1; q < 11; ++q) b.cnot(q, q + 1);
  b.cnot(11, 0);
  for (int q = 1; q < 12; q += 2) b.ry(q, Layer::PostEntangler);
  return b.finish();
}

std::vector<double> triangle_exact_params() { return {kPi / 4, 3 * kPi / 2, kPi}; }

std::vector<double> star_exact_params() {
  std::vector<double> p(6, -kPi / 2);
  p.insert(p.end(), 6, kPi);
  return p;
}

std::vector<double> star_reported_params() {
  const double in_pi[] = {-0.3962, -0.5324, 1.4827, -0.4658, -0.4879, 1.4993,
                          1.0056,  1.0190,  0.9836, -0.9768, 1.0007,  -0.9830};
  std::vector<double> p;
  for (double x : in_pi) p.push_back(x * kPi);
  return p;
}

std::vector<double> round_to_quarter_turn(std::span<const double> params) {
  std::vector<double> out;
  for (double x : params) out.push_back(std::round(x / (kPi / 2)) * (kPi / 2));
  return out;
}

StateVector prepare(const AnsatzSpec& spec, std::span<const double> params) {
  return evolve(StateVector(spec.circuit.num_qubits()), kagome::bind(spec.circuit, params));
}

std::vector<double> parameter_shift_gradient(const AnsatzSpec& spec, std::span<const double> params,
                                             const EnergyFunction& energy) {
  const auto d = static_cast<std::size_t>(spec.num_params());
  if (params.size() != d) throw std::invalid_argument("parameter_shift_gradient: parameter count mismatch");
  std::vector<double> grad(d);
  std::vector<double> shifted(params.begin(), params.end());
  for (std::size_t j = 0; j < d; ++j) {
    shifted[j] = params[j] + kPi / 2;
    const double plus = energy(shifted);
    shifted[j] = params[j] - kPi / 2;
    const double minus = energy(shifted);
    shifted[j] = params[j];
    grad[j] = 0.5 * (plus - minus);
  }
  return grad;
}

StateVector ideal_executor(const Circuit& circuit) { return evolve(StateVector(circuit.num_qubits()), circuit); }

MetricMatrix fubini_study_block_diagonal(const AnsatzSpec& spec, std::span<const double> params,
                                         const StateExecutor& executor) {
  const Circuit bound = kagome::bind(spec.circuit, params);
  const int d = spec.num_params();
  MetricMatrix g = MetricMatrix::Zero(d, d);
  for (Layer layer : {Layer::PreEntangler, Layer::PostEntangler}) {
    const std::vector<int> slots = spec.slots_in(layer);
    if (slots.empty()) continue;
    std::size_t first = bound.size(), last = 0;
    std::set<int> qubits;
    for (int s : slots) {
      first = std::min(first, spec.gate_of_slot[static_cast<std::size_t>(s)]);
      last = std::max(last, spec.gate_of_slot[static_cast<std::size_t>(s)]);
      if (!qubits.insert(spec.qubit_of_slot(s)).second)
        throw std::invalid_argument("fubini_study_block_diagonal: layer rotations must act on distinct qubits");
    }
    if (last - first + 1 != slots.size())
      throw std::invalid_argument("fubini_study_block_diagonal: layer rotations must be contiguous");

    const std::vector<Gate> prefix(bound.gates().begin(), bound.gates().begin() + static_cast<std::ptrdiff_t>(first));
    const StateVector psi = executor(Circuit(bound.num_qubits(), prefix, 0));

    // Generator of slot s: (scale/2) Y on its qubit.
    std::vector<StateVector> p_psi;
    std::vector<double> mean;
    for (int s : slots) {
      StateVector v = psi;
      v.apply_pauli('Y', spec.qubit_of_slot(s));
      const double half = 0.5 * spec.circuit.gates()[spec.gate_of_slot[static_cast<std::size_t>(s)]].angle.scale;
      for (auto& a : v.mutable_amplitudes()) a *= half;
      mean.push_back(inner(psi, v).real());
      p_psi.push_back(std::move(v));
    }
    for (std::size_t a = 0; a < slots.size(); ++a) {
      for (std::size_t b = 0; b < slots.size(); ++b) {
        // <psi|P_a P_b|psi> = <P_a psi|P_b psi> for Hermitian P_a
        const double cov = inner(p_psi[a], p_psi[b]).real() - mean[a] * mean[b];
        g(slots[a], slots[b]) = cov;
      }
    }
  }
  return g;
}

MetricMatrix fubini_study_full_numeric(const AnsatzSpec& spec, std::span<const double> params) {
  const Circuit bound = kagome::bind(spec.circuit, params);
  const int d = spec.num_params();
  const StateVector zero(bound.num_qubits());
  const StateVector psi = evolve(zero, bound);
  std::vector<StateVector> dpsi;
  for (int s = 0; s < d; ++s) {
    const std::size_t at = spec.gate_of_slot[static_cast<std::size_t>(s)];
    StateVector v = evolve_range(zero, bound, 0, at + 1);
    v.apply_pauli('Y', spec.qubit_of_slot(s));
    const double half = 0.5 * spec.circuit.gates()[at].angle.scale;
    for (auto& a : v.mutable_amplitudes()) a *= std::complex<double>(0.0, -half);
    dpsi.push_back(evolve_range(std::move(v), bound, at + 1, bound.size()));
  }
  MetricMatrix g(d, d);
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) {
      const auto gij = inner(dpsi[i], dpsi[j]) - inner(dpsi[i], psi) * inner(psi, dpsi[j]);
      g(i, j) = gij.real();
    }
  }
  return g;
}

double metric_deviation_from_quarter_identity(const MetricMatrix& g) {
  return (g - 0.25 * MetricMatrix::Identity(g.rows(), g.cols())).cwiseAbs().maxCoeff();
}

void write_metric_csv(std::ostream& os, const MetricMatrix& g) {
  const auto flags = os.flags();
  os << std::setprecision(17);
  for (Eigen::Index r = 0; r < g.rows(); ++r) {
    for (Eigen::Index c = 0; c < g.cols(); ++c) os << (c ? "," : "") << g(r, c);
    os << '\n';
  }
  os.flags(flags);
}

}  // namespace kagome
