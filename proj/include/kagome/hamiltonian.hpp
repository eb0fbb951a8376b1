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

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "kagome/lattice.hpp"
#include "kagome/simulator.hpp"

namespace kagome {

struct PauliString {
  std::string letters;  // one of I, X, Y, Z per qubit; letters[k] acts on qubit k
  double coefficient = 1.0;
};

// Real-weighted sum of Pauli strings; terms with the same letters are merged
// on construction so the sum stays Hermitian and duplicate-free.
class PauliSum {
 public:
  PauliSum() = default;
  PauliSum(int num_qubits, std::vector<PauliString> terms);

  int num_qubits() const { return num_qubits_; }
  const std::vector<PauliString>& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }

 private:
  int num_qubits_ = 0;
  std::vector<PauliString> terms_;
};

std::ostream& operator<<(std::ostream& os, const PauliSum& sum);

// sum over edges of J_ij (X_i X_j + Y_i Y_j + Z_i Z_j); terms ordered edge by
// edge as XX, YY, ZZ.
PauliSum heisenberg_from_lattice(const LatticeFragment& fragment);

// Two-site Heisenberg term for the correlation <sigma_i . sigma_j>.
PauliSum pair_correlator(int num_qubits, int i, int j);

struct QwcGroup {
  // Shared basis letter per qubit; 'I' where no member acts.
  std::string basis;
  std::vector<int> terms;  // indices into PauliSum::terms()

  // Basis used to measure the group: 'I' replaced by 'Z'.
  std::string measurement_basis() const;
};

struct QwcGroups {
  std::vector<QwcGroup> groups;
};

bool qubitwise_commute(const std::string& a, const std::string& b);

// Greedy first-fit grouping in term order.
QwcGroups qwc_group(const PauliSum& sum);

struct EnergyEstimate {
  double value = 0.0;     // units of |J|
  double variance = 0.0;  // sum of per-group sample variances
  double std_error = 0.0;  // sqrt(sum_g Var_g / N_g)
  std::vector<std::uint64_t> shots_per_group;
  std::vector<double> group_means;
  std::vector<double> group_variances;
};

// Per-shot value of a group's terms on a measured bitstring:
// sum_t c_t prod_{q in supp t} (-1)^{b_q}.
double group_shot_value(const PauliSum& sum, const QwcGroup& group, const std::string& bits);

// Mean plus N-1 sample variance of each group, summed over groups. Throws
// std::invalid_argument on basis mismatch, fewer than 2 shots or a table
// count different from the group count.
EnergyEstimate estimate_energy(std::span<const ShotTable> tables, const PauliSum& sum, const QwcGroups& groups);

// <psi|H|psi> from the state vector. Throws std::invalid_argument on
// dimension mismatch.
double expectation_exact(const StateVector& state, const PauliSum& sum);

// H|psi> without normalization.
std::vector<Amplitude> apply_sum(const PauliSum& sum, std::span<const Amplitude> psi);

// Dense matrix of the sum; n <= 12.
Eigen::MatrixXcd to_dense(const PauliSum& sum);

struct Spectrum {
  std::vector<double> eigenvalues;  // ascending, all 2^n
  double ground_energy = 0.0;
  // Orthonormal basis of the eigenspace within 1e-9 of the minimum; each
  // vector's first nonzero component is real and positive.
  std::vector<StateVector> ground_states;
};

// Exact diagonalization of the Heisenberg Hamiltonian of the fragment. The
// Hamiltonian conserves total S^z, so each magnetization sector is built
// and diagonalized densely. Throws SizeLimit above 14 sites.
Spectrum exact_spectrum(const LatticeFragment& fragment);

// Writes "index,value" rows with a header line.
void write_spectrum_csv(std::ostream& os, const Spectrum& spectrum);

}  // namespace kagome
