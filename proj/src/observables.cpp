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

#include "kagome/observables.hpp"

#include <cmath>
#include <iomanip>
#include <limits>
#include <ostream>
#include <stdexcept>

#include "kagome/hamiltonian.hpp"

namespace kagome {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

void check_pair(int n, int i, int j) {
  if (i < 0 || j < 0 || i >= n || j >= n) throw std::invalid_argument("spin_correlation: pair index out of range");
}

CorrelationTable empty_table(int n) {
  return {Eigen::MatrixXd::Constant(n, n, kNaN), Eigen::MatrixXd::Constant(n, n, kNaN)};
}

}  // namespace

Correlation CorrelationTable::at(int i, int j) const {
  check_pair(num_sites(), i, j);
  return {values(i, j), std_errors(i, j)};
}

Correlation spin_correlation(const StateVector& state, int i, int j) {
  check_pair(state.num_qubits(), i, j);
  if (i == j) return {3.0, 0.0};
  return {expectation_exact(state, pair_correlator(state.num_qubits(), i, j)), 0.0};
}

BasisDistribution to_distribution(const ShotTable& table) {
  return {table.basis, empirical_distribution(table), table.shots};
}

Correlation spin_correlation(std::span<const BasisDistribution> sources, int i, int j) {
  if (sources.empty()) throw std::invalid_argument("spin_correlation: no measured distributions");
  const int n = static_cast<int>(sources.front().basis.size());
  check_pair(n, i, j);
  if (i == j) return {3.0, 0.0};
  Correlation c;
  double se2 = 0.0;
  for (char letter : {'X', 'Y', 'Z'}) {
    const BasisDistribution* src = nullptr;
    for (const auto& s : sources)
      if (static_cast<int>(s.basis.size()) == n && s.basis[static_cast<std::size_t>(i)] == letter &&
          s.basis[static_cast<std::size_t>(j)] == letter) {
        src = &s;
        break;
      }
    if (!src) throw std::invalid_argument(std::string("spin_correlation: no distribution measures the pair in ") + letter);
    if (src->shots < 2) throw std::invalid_argument("spin_correlation: need at least 2 shots");
    double m = 0.0;
    for (const auto& [bits, t] : src->distribution.entries)
      m += (bits[static_cast<std::size_t>(i)] == bits[static_cast<std::size_t>(j)]) ? t : -t;
    const double shots = static_cast<double>(src->shots);
    c.value += m;
    se2 += std::max(0.0, 1.0 - m * m) / (shots - 1.0);
  }
  c.std_error = std::sqrt(se2);
  return c;
}

Correlation spin_correlation(std::span<const ShotTable> tables, int i, int j) {
  std::vector<BasisDistribution> d;
  for (const auto& t : tables) d.push_back(to_distribution(t));
  return spin_correlation(d, i, j);
}

CorrelationTable correlation_table(const StateVector& state) {
  return correlation_table(std::span<const StateVector>(&state, 1));
}

CorrelationTable correlation_table(std::span<const StateVector> states) {
  if (states.empty()) throw std::invalid_argument("correlation_table: no states");
  const int n = states.front().num_qubits();
  CorrelationTable t = empty_table(n);
  t.std_errors.setZero();
  for (int i = 0; i < n; ++i) {
    for (int j = i; j < n; ++j) {
      double v = 0.0;
      for (const auto& s : states) {
        if (s.num_qubits() != n) throw std::invalid_argument("correlation_table: qubit count mismatch");
        v += spin_correlation(s, i, j).value;
      }
      t.values(i, j) = t.values(j, i) = v / static_cast<double>(states.size());
    }
  }
  return t;
}

CorrelationTable correlation_table(std::span<const BasisDistribution> sources, int num_sites) {
  CorrelationTable t = empty_table(num_sites);
  for (int i = 0; i < num_sites; ++i) {
    for (int j = i; j < num_sites; ++j) {
      const Correlation c = spin_correlation(sources, i, j);
      t.values(i, j) = t.values(j, i) = c.value;
      t.std_errors(i, j) = t.std_errors(j, i) = c.std_error;
    }
  }
  return t;
}

CorrelationTable correlation_table(std::span<const ShotTable> tables) {
  if (tables.empty()) throw std::invalid_argument("correlation_table: no shot tables");
  std::vector<BasisDistribution> d;
  for (const auto& t : tables) d.push_back(to_distribution(t));
  return correlation_table(d, tables.front().num_qubits());
}

double total_spin_square(const CorrelationTable& table) {
  if (!table.complete()) throw std::invalid_argument("total_spin_square: incomplete table");
  return table.values.sum();
}

StructureFactorMap structure_factor(const CorrelationTable& table, const LatticeFragment& fragment,
                                    std::span<const MomentumPoint> grid) {
  const int n = fragment.num_sites();
  if (table.num_sites() != n) throw std::invalid_argument("structure_factor: site count mismatch");
  if (!table.complete()) throw std::invalid_argument("structure_factor: all pair correlations are required");
  StructureFactorMap map;
  map.num_sites = n;
  map.points.reserve(grid.size());
  const auto& sites = fragment.sites();
  for (const auto& mp : grid) {
    double re = 0.0, im = 0.0, scale = 0.0;
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        const double phase = mp.q[0] * (sites[i].position[0] - sites[j].position[0]) +
                             mp.q[1] * (sites[i].position[1] - sites[j].position[1]);
        re += std::cos(phase) * table.values(i, j);
        im += std::sin(phase) * table.values(i, j);
        scale += std::abs(table.values(i, j));
      }
    }
    if (std::abs(im) > 1e-9 * std::max(1.0, scale))
      throw std::logic_error("structure_factor: correlation matrix is not symmetric");
    map.points.push_back({mp.q, re / n, mp.inside_bz});
  }
  return map;
}

Similarity similarity(const StructureFactorMap& a, const StructureFactorMap& b) {
  if (a.points.size() != b.points.size() || a.points.empty())
    throw std::invalid_argument("similarity: grids differ in size");
  const std::size_t m = a.points.size();
  double ma = 0.0, mb = 0.0;
  for (std::size_t k = 0; k < m; ++k) {
    if (std::abs(a.points[k].q[0] - b.points[k].q[0]) > 1e-12 || std::abs(a.points[k].q[1] - b.points[k].q[1]) > 1e-12)
      throw std::invalid_argument("similarity: grids differ in momentum points");
    ma += a.points[k].s;
    mb += b.points[k].s;
  }
  ma /= static_cast<double>(m);
  mb /= static_cast<double>(m);
  double sab = 0.0, saa = 0.0, sbb = 0.0, se = 0.0;
  for (std::size_t k = 0; k < m; ++k) {
    const double da = a.points[k].s - ma, db = b.points[k].s - mb;
    sab += da * db;
    saa += da * da;
    sbb += db * db;
    const double e = a.points[k].s - b.points[k].s;
    se += e * e;
  }
  return {sab / std::sqrt(saa * sbb), se / static_cast<double>(m)};
}

void write_structure_factor_csv(std::ostream& os, const StructureFactorMap& map) {
  const auto flags = os.flags();
  os << std::setprecision(17) << "qx,qy,S,inside_bz\n";
  for (const auto& p : map.points) os << p.q[0] << ',' << p.q[1] << ',' << p.s << ',' << (p.inside_bz ? 1 : 0) << '\n';
  os.flags(flags);
}

void write_correlations_csv(std::ostream& os, const CorrelationTable& table) {
  const auto flags = os.flags();
  os << std::setprecision(17) << "i,j,value,stderr\n";
  for (int i = 0; i < table.num_sites(); ++i)
    for (int j = i + 1; j < table.num_sites(); ++j)
      if (!std::isnan(table.values(i, j)))
        os << i << ',' << j << ',' << table.values(i, j) << ',' << table.std_errors(i, j) << '\n';
  os.flags(flags);
}

StateVector dimer_state(const LatticeFragment& fragment, std::span<const std::pair<int, int>> covering,
                        bool allow_uncovered) {
  const int n = fragment.num_sites();
  std::vector<int> partner(static_cast<std::size_t>(n), -1);
  for (const auto& [i, j] : covering) {
    if (i < 0 || j < 0 || i >= n || j >= n || i == j) throw std::invalid_argument("dimer_state: invalid pair");
    if (!fragment.has_edge(i, j)) throw std::invalid_argument("dimer_state: pair is not an edge of the fragment");
    if (partner[static_cast<std::size_t>(i)] >= 0 || partner[static_cast<std::size_t>(j)] >= 0)
      throw std::invalid_argument("dimer_state: overlapping pairs");
    partner[static_cast<std::size_t>(i)] = j;
    partner[static_cast<std::size_t>(j)] = i;
  }
  int uncovered = 0;
  for (int p : partner) uncovered += p < 0;
  if (uncovered && !allow_uncovered) throw std::invalid_argument("dimer_state: covering leaves sites uncovered");

  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  std::vector<Amplitude> amps(std::size_t{1} << n, Amplitude{0.0, 0.0});
  for (std::uint64_t k = 0; k < amps.size(); ++k) {
    double a = std::pow(inv_sqrt2, uncovered);
    for (const auto& [i, j] : covering) {
      const unsigned bi = (k >> i) & 1U, bj = (k >> j) & 1U;
      if (bi == bj) {
        a = 0.0;
        break;
      }
      a *= bi == 0 ? inv_sqrt2 : -inv_sqrt2;
    }
    amps[k] = a;
  }
  return StateVector(std::move(amps));
}

std::vector<std::pair<int, int>> star_dimer_covering(int which) {
  if (which != 0 && which != 1) throw std::invalid_argument("star_dimer_covering: which must be 0 or 1");
  std::vector<std::pair<int, int>> c;
  for (int m = 0; m < 6; ++m) c.emplace_back(2 * m + 1 - which, (2 * m + 2 - which) % 12);
  return c;
}

double fidelity(const StateVector& state, const StateVector& reference) {
  if (state.dim() != reference.dim()) throw std::invalid_argument("fidelity: dimension mismatch");
  return std::norm(inner(reference, state));
}

double fidelity(const StateVector& state, std::span<const StateVector> basis) {
  double f = 0.0;
  for (const auto& b : basis) f += fidelity(state, b);
  return f;
}

}  // namespace kagome
