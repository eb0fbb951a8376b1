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

#include <functional>
#include <iosfwd>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "kagome/circuit.hpp"
#include "kagome/simulator.hpp"

namespace kagome {

enum class Layer { PreEntangler, PostEntangler };

// Parameterized circuit plus, for each slot, the Ry gate it drives and the
// side of the entangling layer it sits on. Every slot's generator is Y/2 on
// its qubit, so Ry(theta) = exp(-i theta Y / 2).
struct AnsatzSpec {
  Circuit circuit;
  std::vector<Layer> layer_of_slot;
  std::vector<std::size_t> gate_of_slot;

  int num_params() const { return circuit.num_params(); }
  int qubit_of_slot(int slot) const;
  // Slots of one layer, in slot order.
  std::vector<int> slots_in(Layer layer) const;
};

// H on every qubit; Ry(t0) q0, Ry(t1) q2; CNOT 0->1, CNOT 1->2; Ry(t2) q1.
AnsatzSpec triangle_ansatz();

// H on every qubit; Ry(t0..t5) on qubits 0,2,..,10; CNOT chain 1->2->...->11
// closed by CNOT 11->0; Ry(t6..t11) on qubits 1,3,..,11.
AnsatzSpec star_ansatz();

// Parameter values that prepare an exact ground state.
std::vector<double> triangle_exact_params();  // (pi/4, 3pi/2, pi)
std::vector<double> star_exact_params();      // (-pi/2 x 6, pi x 6)

// Star parameters reported from a converged noisy hardware run, and the same
// values snapped to the nearest multiple of pi/2.
std::vector<double> star_reported_params();
std::vector<double> round_to_quarter_turn(std::span<const double> params);

StateVector prepare(const AnsatzSpec& spec, std::span<const double> params);

using EnergyFunction = std::function<double(std::span<const double>)>;

// dE/dtheta_j = [E(theta + pi/2 e_j) - E(theta - pi/2 e_j)] / 2, assembled in
// slot order; 2d evaluations of energy.
std::vector<double> parameter_shift_gradient(const AnsatzSpec& spec, std::span<const double> params,
                                             const EnergyFunction& energy);

using MetricMatrix = Eigen::MatrixXd;

// Produces the state of a bound circuit; the default simulates it exactly.
using StateExecutor = std::function<StateVector(const Circuit&)>;
StateVector ideal_executor(const Circuit& circuit);

// Block-diagonal metric: for each layer, the covariance of the slot
// generators in the state just before that layer. Off-block entries are 0.
// Each layer's rotations must be contiguous and on distinct qubits.
MetricMatrix fubini_study_block_diagonal(const AnsatzSpec& spec, std::span<const double> params,
                                         const StateExecutor& executor = ideal_executor);

// Re G_ij = Re(<d_i psi|d_j psi> - <d_i psi|psi><psi|d_j psi>) with the
// derivative states formed by inserting -i (scale/2) Y after each slot's gate.
MetricMatrix fubini_study_full_numeric(const AnsatzSpec& spec, std::span<const double> params);

// max |G - 0.25 I|
double metric_deviation_from_quarter_identity(const MetricMatrix& g);

void write_metric_csv(std::ostream& os, const MetricMatrix& g);

}  // namespace kagome
