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

#pragma once

#include <array>
#include <complex>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace kagome {

// SqrtXdg exists so that the adjoint of a native circuit is again a single
// gate per gate; compile_to_native lowers it to Rz(pi) SqrtX Rz(pi).
enum class GateKind { H, X, SqrtX, SqrtXdg, Rz, Ry, CNOT, CZ };

bool is_two_qubit(GateKind kind);
bool is_rotation(GateKind kind);
std::string gate_name(GateKind kind);

// Rotation angle: either a fixed value, or scale * params[slot] + offset.
struct Angle {
  double value = 0.0;  // fixed angle, or the offset when slot is set
  int slot = -1;
  double scale = 1.0;

  static Angle fixed(double v) { return {v, -1, 1.0}; }
  static Angle param(int slot, double scale = 1.0, double offset = 0.0) {
    return {offset, slot, scale};
  }
  bool is_bound() const { return slot < 0; }
  double resolve(std::span<const double> params) const;
  bool operator==(const Angle&) const = default;
};

struct Gate {
  GateKind kind = GateKind::H;
  std::array<int, 2> qubits{0, -1};  // qubits[1] is the target of CNOT/CZ
  Angle angle;                       // rotation kinds only

  static Gate single(GateKind kind, int q) { return {kind, {q, -1}, {}}; }
  static Gate rotation(GateKind kind, int q, Angle a) { return {kind, {q, -1}, a}; }
  static Gate two(GateKind kind, int control, int target) { return {kind, {control, target}, {}}; }

  bool operator==(const Gate&) const = default;
};

// Ordered gate list over num_qubits qubits. Qubit k is bit k of the
// amplitude index (little-endian). Validated on construction and never
// mutated afterwards; every transformation returns a new circuit.
class Circuit {
 public:
  Circuit() = default;
  // Throws std::invalid_argument on out-of-range or coinciding qubits, on
  // rotation gates missing an angle, or when a slot in [0, num_params) is
  // never referenced (or a reference exceeds num_params).
  Circuit(int num_qubits, std::vector<Gate> gates, int num_params = 0);

  int num_qubits() const { return num_qubits_; }
  int num_params() const { return num_params_; }
  const std::vector<Gate>& gates() const { return gates_; }
  std::size_t size() const { return gates_.size(); }
  bool is_bound() const { return num_params_ == 0; }

  bool operator==(const Circuit&) const = default;

 private:
  int num_qubits_ = 0;
  std::vector<Gate> gates_;
  int num_params_ = 0;
};

// Positional binding; throws std::invalid_argument on length mismatch.
Circuit bind(const Circuit& circuit, std::span<const double> params);

// Reverse order, invert each gate. Slot references keep their slot with
// negated scale and offset.
Circuit adjoint(const Circuit& circuit);

// U (U^dagger U)^((fold - 1) / 2). Requires a bound circuit and an odd
// positive fold.
Circuit fold_global(const Circuit& circuit, int fold);

// Lowers to the {CZ, Rz, X, SqrtX} native set, equal up to global phase.
//   H    -> Rz(pi/2) SqrtX Rz(pi/2)
//   Ry   -> SqrtX, Rz(theta + pi), SqrtX, Rz(3 pi)          (time order)
//   CNOT -> target: Rz(pi/2) SqrtX Rz(pi); CZ; target: SqrtX Rz(pi/2)
Circuit compile_to_native(const Circuit& circuit);

using ComplexMatrix = Eigen::MatrixXcd;

// 2x2 matrix of a bound single-qubit gate.
Eigen::Matrix2cd gate_matrix(GateKind kind, double angle = 0.0);

// Dense 2^n x 2^n matrix of a bound circuit, built from Kronecker
// embeddings. Throws InvalidState if unbound, SizeLimit if n > 12.
ComplexMatrix unitary_of(const Circuit& circuit);

// Max |A - e^{i phi} B| where phi aligns the first entry of B with
// magnitude above tol to the matching entry of A.
double global_phase_distance(const ComplexMatrix& a, const ComplexMatrix& b, double tol = 1e-12);

// One gate per line after a header:
//   qubits <n>
//   params <p>
//   H 0
//   CNOT 0 1
//   RY 2 0.785398...        (fixed angle)
//   RY 2 $1                 (slot 1)
//   RZ 2 $1*1+3.14159...    (scale * slot + offset)
void write_circuit(std::ostream& os, const Circuit& circuit);
std::string to_text(const Circuit& circuit);
Circuit read_circuit(std::istream& is);

}  // namespace kagome
