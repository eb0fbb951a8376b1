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
#include <functional>
#include <iosfwd>
#include <map>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "kagome/circuit.hpp"
#include "kagome/hamiltonian.hpp"
#include "kagome/rng.hpp"
#include "kagome/simulator.hpp"

namespace kagome {

// Readout response R(f, i) = P(f | i), stored as one factor per group of
// qubits. Inside a factor the local index has bit r = qubit partitions[p][r].
struct ResponseMatrix {
  std::vector<std::vector<int>> partitions;
  std::vector<Eigen::MatrixXd> factors;
  std::uint64_t shots = 0;         // calibration shots per prepared state
  std::uint64_t preparations = 0;  // basis states prepared during calibration

  int num_qubits() const;
  // Partitions disjoint, nonempty and covering 0..n-1; factor shapes match;
  // columns sum to 1 within 1e-9. Throws std::invalid_argument.
  void validate() const;
};

std::vector<std::vector<int>> singleton_partitions(int num_qubits);

// Exact singleton-factor response of a noise model's readout channel.
ResponseMatrix response_from_noise(const NoiseModel& noise, int num_qubits);

// Dense 2^n x 2^n product of the factors; n <= 12.
Eigen::MatrixXd full_response(const ResponseMatrix& r);

using ShotExecutor = std::function<ShotTable(const Circuit&, const std::string& basis, std::uint64_t shots, Seed)>;

// Prepares each basis state of each partition with X gates, measures in Z
// and fills the factor columns with observed frequencies.
ResponseMatrix calibrate(const ShotExecutor& executor, int num_qubits, const std::vector<std::vector<int>>& partitions,
                         std::uint64_t shots, Seed seed);

struct QuasiDistribution {
  int num_qubits = 0;
  std::map<std::string, double> entries;
  bool singular_factor = false;  // some factor needed a true pseudo-inverse
  std::size_t truncated = 0;     // nonzero entries dropped by the top-K cut

  double total() const;
  double negative_mass() const;  // sum of max(0, -t)
  double probability(const std::string& bits) const;
};

inline constexpr std::size_t kDefaultTopK = std::size_t{1} << 14;
inline constexpr double kSingularTol = 1e-12;

QuasiDistribution empirical_distribution(const ShotTable& table);

// t = R^+ m factor by factor on the dense empirical vector (n <= 24), then
// keep the top_k entries by magnitude and renormalize to total 1.
QuasiDistribution apply_rem(const ShotTable& table, const ResponseMatrix& r, std::size_t top_k = kDefaultTopK);

// Euclidean projection onto the probability simplex over the support.
// Entries pushed to zero are kept with value 0.
QuasiDistribution project_positive(const QuasiDistribution& q);

double total_variation(const QuasiDistribution& a, const QuasiDistribution& b);

// Energy from REM-corrected group distributions. Unprojected: variance of the
// corrected per-shot observable (R^+)^T h over the raw shots. Projected:
// variance of h under the projected distribution, times N/(N-1).
EnergyEstimate estimate_energy_rem(std::span<const ShotTable> tables, const PauliSum& sum, const QwcGroups& groups,
                                   const ResponseMatrix& r, bool positive, std::size_t top_k = kDefaultTopK);

struct ZnePoint {
  int fold = 1;
  double energy = 0.0;
  double std_error = 0.0;
};

struct ZneSeries {
  std::vector<ZnePoint> points;
  // Folds odd, positive, strictly increasing. Throws std::invalid_argument.
  void validate() const;
};

using FoldPipeline = std::function<EnergyEstimate(const Circuit& folded, int fold)>;

ZneSeries zne_run(const Circuit& bound, const FoldPipeline& pipeline, const std::vector<int>& folds = {1, 3, 5});

// Least-squares polynomial in the fold factor evaluated at 0.
double polyfit_extrapolate(const ZneSeries& series, int degree);

struct BprResult {
  double mean = 0.0;
  double std = 0.0;
  bool floored = false;  // some stderr was below the floor and replaced
};

inline constexpr double kStderrFloor = 1e-9;

// Gaussian prior N(0, prior_sigma^2 I) on the polynomial coefficients,
// per-point Gaussian likelihood with variance stderr^2. Returns the posterior
// mean and standard deviation of the polynomial at fold 0.
BprResult bpr_extrapolate(const ZneSeries& series, int degree, double prior_sigma = 10.0);

struct Extrapolation {
  std::string method;
  double e0 = 0.0;
  double e0_std = 0.0;
  bool below_ground = false;  // undershoots the exact ground energy
};

// Flags e0 < ground - margin.
Extrapolation make_extrapolation(std::string method, double e0, double e0_std, double ground, double margin = 0.0);

void write_zne_csv(std::ostream& os, const ZneSeries& series);          // folds,energy,stderr
void write_extrapolations_csv(std::ostream& os, std::span<const Extrapolation> rows);  // method,E0,E0_std

}  // namespace kagome
