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
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "kagome/lattice.hpp"
#include "kagome/mitigation.hpp"
#include "kagome/simulator.hpp"

namespace kagome {

// <sigma_i . sigma_j> in Pauli units (singlet -3, diagonal 3).
struct Correlation {
  double value = 0.0;
  double std_error = 0.0;
};

// Pairs not measured are NaN.
struct CorrelationTable {
  Eigen::MatrixXd values;
  Eigen::MatrixXd std_errors;

  int num_sites() const { return static_cast<int>(values.rows()); }
  bool complete() const { return !values.hasNaN(); }
  Correlation at(int i, int j) const;
};

Correlation spin_correlation(const StateVector& state, int i, int j);

// A measured distribution in one basis; ShotTables and REM output both map
// onto this.
struct BasisDistribution {
  std::string basis;
  QuasiDistribution distribution;
  std::uint64_t shots = 0;
};

BasisDistribution to_distribution(const ShotTable& table);

// Needs, for each of X, Y, Z, a distribution whose basis measures both i and
// j in that letter. stderr = sqrt(sum_P Var_P / N_P), Var_P = (1 - m_P^2) N/(N-1).
Correlation spin_correlation(std::span<const BasisDistribution> sources, int i, int j);
Correlation spin_correlation(std::span<const ShotTable> tables, int i, int j);

CorrelationTable correlation_table(const StateVector& state);
// Average over an orthonormal set, i.e. the maximally mixed state on its span.
CorrelationTable correlation_table(std::span<const StateVector> states);
CorrelationTable correlation_table(std::span<const BasisDistribution> sources, int num_sites);
CorrelationTable correlation_table(std::span<const ShotTable> tables);

// sum_ij C_ij + 3N on the off-diagonal-plus-diagonal table; <(sum sigma)^2>.
double total_spin_square(const CorrelationTable& table);

struct StructurePoint {
  Vec2 q{0.0, 0.0};
  double s = 0.0;
  bool inside_bz = false;
};

struct StructureFactorMap {
  int num_sites = 0;
  std::vector<StructurePoint> points;
};

// S(q) = (1/N) sum_ij exp(i q.(r_i - r_j)) C_ij. Throws std::invalid_argument
// on an incomplete table or a site count mismatch; std::logic_error if the
// imaginary part exceeds 1e-9.
StructureFactorMap structure_factor(const CorrelationTable& table, const LatticeFragment& fragment,
                                    std::span<const MomentumPoint> grid);

struct Similarity {
  double pearson = 0.0;
  double mse = 0.0;
};

Similarity similarity(const StructureFactorMap& a, const StructureFactorMap& b);

void write_structure_factor_csv(std::ostream& os, const StructureFactorMap& map);  // qx,qy,S,inside_bz
void write_correlations_csv(std::ostream& os, const CorrelationTable& table);      // i,j,value,stderr

// Product of singlets (|01> - |10>)/sqrt2 on the given edges of the fragment.
// Uncovered sites are |+> when allowed, otherwise std::invalid_argument.
StateVector dimer_state(const LatticeFragment& fragment, std::span<const std::pair<int, int>> covering,
                        bool allow_uncovered = true);

// Dimer coverings of the star: pairs (2m+1, 2m+2) and (2m, 2m+1).
std::vector<std::pair<int, int>> star_dimer_covering(int which);

double fidelity(const StateVector& state, const StateVector& reference);
// Squared norm of the projection onto span(basis); basis assumed orthonormal.
double fidelity(const StateVector& state, std::span<const StateVector> basis);

}  // namespace kagome
