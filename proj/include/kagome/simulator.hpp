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

#include <complex>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "kagome/circuit.hpp"
#include "kagome/rng.hpp"

namespace kagome {

using Amplitude = std::complex<double>;

// 2^n amplitudes, qubit k = bit k of the index.
class StateVector {
 public:
  StateVector() = default;
  // |0...0> on num_qubits qubits.
  explicit StateVector(int num_qubits);
  // Throws std::invalid_argument if the length is not a power of two or the
  // norm deviates from 1 by more than norm_tol.
  StateVector(std::vector<Amplitude> amplitudes, double norm_tol = 1e-10);

  static StateVector basis_state(int num_qubits, std::uint64_t index);
  // Rescales to unit norm; throws on the zero vector.
  static StateVector normalized(std::vector<Amplitude> amplitudes);

  int num_qubits() const { return num_qubits_; }
  std::size_t dim() const { return amps_.size(); }
  std::span<const Amplitude> amplitudes() const { return amps_; }
  std::span<Amplitude> mutable_amplitudes() { return amps_; }
  const Amplitude& operator[](std::size_t k) const { return amps_[k]; }

  double norm() const;
  std::vector<double> probabilities() const;

  // Gate kernels. angle is ignored for non-rotation kinds.
  void apply(GateKind kind, int q0, int q1 = -1, double angle = 0.0);
  void apply_matrix(const Eigen::Matrix2cd& m, int q);
  // Pauli letter in {I, X, Y, Z}.
  void apply_pauli(char letter, int q);

 private:
  int num_qubits_ = 0;
  std::vector<Amplitude> amps_;
};

std::complex<double> inner(const StateVector& a, const StateVector& b);  // <a|b>

// Applies the gates of a bound circuit in order. Throws InvalidState on
// unbound circuits and std::invalid_argument on qubit-count mismatch.
StateVector evolve(StateVector state, const Circuit& circuit);
// Gates [begin, end) only.
StateVector evolve_range(StateVector state, const Circuit& circuit, std::size_t begin, std::size_t end);

struct NoiseModel {
  double p1 = 0.0;  // single-qubit depolarizing probability per gate
  double p2 = 0.0;  // two-qubit depolarizing probability per gate
  // readout[q](f, i) = P(measure f | true i); column-stochastic. Empty means
  // ideal readout on every qubit.
  std::vector<Eigen::Matrix2d> readout;

  static NoiseModel ideal() { return {}; }
  // Same symmetric bit-flip probability on n qubits.
  static NoiseModel with_readout_flip(int num_qubits, double flip, double p1 = 0.0, double p2 = 0.0);

  bool has_gate_noise() const { return p1 > 0.0 || p2 > 0.0; }
  bool has_readout_noise() const;
  // Throws std::invalid_argument on probabilities outside [0, 1] or
  // confusion columns that do not sum to 1 within 1e-12.
  void validate(int num_qubits) const;
};

// One Pauli error inserted by a trajectory: letters[k] acts on qubits[k].
struct PauliEvent {
  std::size_t gate_index = 0;
  std::array<int, 2> qubits{-1, -1};
  std::array<char, 2> letters{'I', 'I'};
};

// Monte-Carlo Pauli trajectory: after each gate, with probability p1 (p2 for
// two-qubit gates) a uniformly random non-identity Pauli on the touched
// qubit(s) is applied. Deterministic for a given seed. If events is
// non-null the inserted errors are appended to it.
StateVector evolve_trajectory(StateVector state, const Circuit& circuit, const NoiseModel& noise, Seed seed,
                              std::vector<PauliEvent>* events = nullptr);

// Measurement record of one basis-rotated circuit. Bitstring character k is
// the outcome of qubit k.
struct ShotTable {
  std::string basis;  // per-qubit letter in {X, Y, Z}
  std::map<std::string, std::uint64_t> counts;
  std::uint64_t shots = 0;
  Seed seed = 0;

  int num_qubits() const { return static_cast<int>(basis.size()); }
  bool operator==(const ShotTable&) const = default;
};

// Uniform basis string, e.g. uniform_basis('X', 3) == "XXX".
std::string uniform_basis(char letter, int num_qubits);

// Rotates each qubit into the requested eigenbasis (X: H; Y: Rz(-pi/2) then
// H) so that a Z measurement reads that basis.
void rotate_to_basis(StateVector& state, const std::string& basis);

// Basis rotation then shots draws from the Z distribution. Throws
// std::invalid_argument if shots == 0 or the basis has the wrong length.
ShotTable sample(StateVector state, const std::string& basis, std::uint64_t shots, Seed seed);

// Flips each bit of each shot independently per the qubit's confusion matrix.
ShotTable apply_readout_noise(const ShotTable& table, const NoiseModel& noise, Seed seed);

// Full execution of one measurement circuit: noisy trajectories (when the
// model has gate noise; shots_per_trajectory shots drawn from each), basis
// rotation, sampling and readout confusion. Streams are derived from
// (seed, trajectory) so results are reproducible.
ShotTable run_circuit(const Circuit& circuit, const std::string& basis, std::uint64_t shots, const NoiseModel& noise,
                      Seed seed, std::uint64_t shots_per_trajectory = 1);

// Text form:
//   basis <letters>
//   seed <seed>
//   shots <total>
//   <bitstring>,<count>
void write_shot_table(std::ostream& os, const ShotTable& table);
ShotTable read_shot_table(std::istream& is);

}  // namespace kagome
