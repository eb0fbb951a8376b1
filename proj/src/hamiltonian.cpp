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

#include "kagome/hamiltonian.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <iomanip>
#include <limits>
#include <map>
#include <ostream>
#include <stdexcept>

#include <Eigen/Eigenvalues>

#include "kagome/errors.hpp"

namespace kagome {

namespace {

using cd = std::complex<double>;

struct TermMasks {
  std::uint64_t flip = 0;   // X or Y
  std::uint64_t phase = 0;  // Y or Z
  std::uint64_t y = 0;
};

TermMasks masks_of(const std::string& letters) {
  TermMasks m;
  for (std::size_t q = 0; q < letters.size(); ++q) {
    const std::uint64_t bit = std::uint64_t{1} << q;
    switch (letters[q]) {
      case 'X': m.flip |= bit; break;
      case 'Y': m.flip |= bit; m.phase |= bit; m.y |= bit; break;
      case 'Z': m.phase |= bit; break;
      default: break;
    }
  }
  return m;
}

// P|k> = coeff(k) |k ^ flip> for a Pauli string.
cd pauli_phase(const TermMasks& m, std::uint64_t k) {
  // Each Y contributes i on |0> and -i on |1>, i.e. i * (-1)^b; Z gives (-1)^b.
  const int ny = std::popcount(m.y);
  const int minus = std::popcount(k & m.phase) & 1;
  static const cd ipow[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  const cd base = ipow[ny % 4];
  return minus ? -base : base;
}

}  // namespace

PauliSum::PauliSum(int num_qubits, std::vector<PauliString> terms) : num_qubits_(num_qubits) {
  std::vector<std::string> order;
  std::map<std::string, double> merged;
  for (auto& t : terms) {
    if (t.letters.size() != static_cast<std::size_t>(num_qubits))
      throw std::invalid_argument("pauli sum: letters length must equal the qubit count");
    if (t.letters.find_first_not_of("IXYZ") != std::string::npos)
      throw std::invalid_argument("pauli sum: letters must be I, X, Y or Z");
    if (!std::isfinite(t.coefficient)) throw std::invalid_argument("pauli sum: non-finite coefficient");
    auto [it, inserted] = merged.emplace(t.letters, 0.0);
    if (inserted) order.push_back(t.letters);
    it->second += t.coefficient;
  }
  for (const auto& letters : order) terms_.push_back({letters, merged[letters]});
}

std::ostream& operator<<(std::ostream& os, const PauliSum& sum) {
  const auto flags = os.flags();
  os << std::setprecision(17);
  for (const auto& t : sum.terms()) os << t.coefficient << ' ' << t.letters << '\n';
  os.flags(flags);
  return os;
}

PauliSum heisenberg_from_lattice(const LatticeFragment& fragment) {
  const int n = fragment.num_sites();
  std::vector<PauliString> terms;
  for (const auto& e : fragment.edges()) {
    for (char p : {'X', 'Y', 'Z'}) {
      std::string letters(static_cast<std::size_t>(n), 'I');
      letters[static_cast<std::size_t>(e.i)] = p;
      letters[static_cast<std::size_t>(e.j)] = p;
      terms.push_back({letters, e.coupling});
    }
  }
  return PauliSum(n, std::move(terms));
}

PauliSum pair_correlator(int num_qubits, int i, int j) {
  if (i < 0 || j < 0 || i >= num_qubits || j >= num_qubits || i == j)
    throw std::invalid_argument("pair_correlator: invalid pair");
  std::vector<PauliString> terms;
  for (char p : {'X', 'Y', 'Z'}) {
    std::string letters(static_cast<std::size_t>(num_qubits), 'I');
    letters[static_cast<std::size_t>(i)] = p;
    letters[static_cast<std::size_t>(j)] = p;
    terms.push_back({letters, 1.0});
  }
  return PauliSum(num_qubits, std::move(terms));
}

std::string QwcGroup::measurement_basis() const {
  std::string b = basis;
  std::replace(b.begin(), b.end(), 'I', 'Z');
  return b;
}

bool qubitwise_commute(const std::string& a, const std::string& b) {
  if (a.size() != b.size()) throw std::invalid_argument("qubitwise_commute: length mismatch");
  for (std::size_t q = 0; q < a.size(); ++q)
    if (a[q] != 'I' && b[q] != 'I' && a[q] != b[q]) return false;
  return true;
}

QwcGroups qwc_group(const PauliSum& sum) {
  QwcGroups out;
  for (std::size_t t = 0; t < sum.size(); ++t) {
    const std::string& letters = sum.terms()[t].letters;
    auto fits = std::find_if(out.groups.begin(), out.groups.end(),
                             [&](const QwcGroup& g) { return qubitwise_commute(g.basis, letters); });
    if (fits == out.groups.end()) {
      out.groups.push_back({std::string(letters.size(), 'I'), {}});
      fits = std::prev(out.groups.end());
    }
    for (std::size_t q = 0; q < letters.size(); ++q)
      if (letters[q] != 'I') fits->basis[q] = letters[q];
    fits->terms.push_back(static_cast<int>(t));
  }
  return out;
}

double group_shot_value(const PauliSum& sum, const QwcGroup& group, const std::string& bits) {
  double v = 0.0;
  for (int t : group.terms) {
    const PauliString& term = sum.terms()[static_cast<std::size_t>(t)];
    int parity = 0;
    for (std::size_t q = 0; q < term.letters.size(); ++q)
      if (term.letters[q] != 'I' && bits[q] == '1') parity ^= 1;
    v += parity ? -term.coefficient : term.coefficient;
  }
  return v;
}

EnergyEstimate estimate_energy(std::span<const ShotTable> tables, const PauliSum& sum, const QwcGroups& groups) {
  if (tables.size() != groups.groups.size())
    throw std::invalid_argument("estimate_energy: need exactly one shot table per group");
  EnergyEstimate est;
  double se2 = 0.0;
  for (std::size_t g = 0; g < tables.size(); ++g) {
    const ShotTable& table = tables[g];
    const QwcGroup& group = groups.groups[g];
    if (table.basis.size() != group.basis.size())
      throw std::invalid_argument("estimate_energy: basis length mismatch");
    for (std::size_t q = 0; q < group.basis.size(); ++q)
      if (group.basis[q] != 'I' && table.basis[q] != group.basis[q])
        throw std::invalid_argument("estimate_energy: table basis " + table.basis + " does not match group " +
                                    group.basis);
    if (table.shots < 2) throw std::invalid_argument("estimate_energy: need at least 2 shots per group");
    const double n = static_cast<double>(table.shots);
    double mean = 0.0;
    for (const auto& [bits, count] : table.counts) mean += static_cast<double>(count) * group_shot_value(sum, group, bits);
    mean /= n;
    double ss = 0.0;
    for (const auto& [bits, count] : table.counts) {
      const double d = group_shot_value(sum, group, bits) - mean;
      ss += static_cast<double>(count) * d * d;
    }
    const double var = ss / (n - 1.0);
    est.group_means.push_back(mean);
    est.group_variances.push_back(var);
    est.shots_per_group.push_back(table.shots);
    est.value += mean;
    est.variance += var;
    se2 += var / n;
  }
  est.std_error = std::sqrt(se2);
  return est;
}

std::vector<Amplitude> apply_sum(const PauliSum& sum, std::span<const Amplitude> psi) {
  if (psi.size() != (std::size_t{1} << sum.num_qubits()))
    throw std::invalid_argument("apply_sum: dimension mismatch");
  std::vector<Amplitude> out(psi.size(), Amplitude{0.0, 0.0});
  for (const auto& t : sum.terms()) {
    const TermMasks m = masks_of(t.letters);
    for (std::uint64_t k = 0; k < psi.size(); ++k) out[k ^ m.flip] += t.coefficient * pauli_phase(m, k) * psi[k];
  }
  return out;
}

double expectation_exact(const StateVector& state, const PauliSum& sum) {
  if (state.num_qubits() != sum.num_qubits()) throw std::invalid_argument("expectation_exact: dimension mismatch");
  const auto psi = state.amplitudes();
  cd total{0.0, 0.0};
  double scale = 0.0;
  for (const auto& t : sum.terms()) {
    const TermMasks m = masks_of(t.letters);
    cd acc{0.0, 0.0};
    for (std::uint64_t k = 0; k < psi.size(); ++k) acc += std::conj(psi[k ^ m.flip]) * pauli_phase(m, k) * psi[k];
    total += t.coefficient * acc;
    scale += std::abs(t.coefficient);
  }
  if (std::abs(total.imag()) > 1e-10 * std::max(1.0, scale))
    throw std::logic_error("expectation_exact: non-negligible imaginary part");
  return total.real();
}

Eigen::MatrixXcd to_dense(const PauliSum& sum) {
  if (sum.num_qubits() > 12) throw SizeLimit("to_dense: at most 12 qubits");
  const Eigen::Index dim = Eigen::Index{1} << sum.num_qubits();
  Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(dim, dim);
  for (const auto& t : sum.terms()) {
    const TermMasks m = masks_of(t.letters);
    for (std::uint64_t k = 0; k < static_cast<std::uint64_t>(dim); ++k)
      h(static_cast<Eigen::Index>(k ^ m.flip), static_cast<Eigen::Index>(k)) += t.coefficient * pauli_phase(m, k);
  }
  return h;
}

Spectrum exact_spectrum(const LatticeFragment& fragment) {
  const int n = fragment.num_sites();
  if (n > 14) throw SizeLimit("exact_spectrum: at most 14 sites");
  const std::uint64_t dim = std::uint64_t{1} << n;

  struct Candidate {
    double energy;
    std::vector<double> vec;  // full-space amplitudes
  };
  std::vector<double> all;
  all.reserve(dim);
  std::vector<Candidate> lowest;
  double best = std::numeric_limits<double>::infinity();

  for (int up = 0; up <= n; ++up) {
    std::vector<std::uint64_t> states;
    for (std::uint64_t k = 0; k < dim; ++k)
      if (std::popcount(k) == up) states.push_back(k);
    std::vector<std::int64_t> where(dim, -1);
    for (std::size_t a = 0; a < states.size(); ++a) where[states[a]] = static_cast<std::int64_t>(a);

    // sigma_i . sigma_j on |b_i b_j>: +1 if equal; -1 and an exchange with
    // amplitude 2 if different.
    const auto m = static_cast<Eigen::Index>(states.size());
    Eigen::MatrixXd h = Eigen::MatrixXd::Zero(m, m);
    for (Eigen::Index a = 0; a < m; ++a) {
      const std::uint64_t k = states[static_cast<std::size_t>(a)];
      for (const auto& e : fragment.edges()) {
        const bool bi = (k >> e.i) & 1U, bj = (k >> e.j) & 1U;
        if (bi == bj) {
          h(a, a) += e.coupling;
        } else {
          h(a, a) -= e.coupling;
          const std::uint64_t swapped = k ^ ((std::uint64_t{1} << e.i) | (std::uint64_t{1} << e.j));
          h(static_cast<Eigen::Index>(where[swapped]), a) += 2.0 * e.coupling;
        }
      }
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(h);
    if (solver.info() != Eigen::Success) throw std::runtime_error("exact_spectrum: eigensolver failed");
    const auto& ev = solver.eigenvalues();
    for (Eigen::Index r = 0; r < m; ++r) all.push_back(ev(r));
    best = std::min(best, ev(0));
    for (Eigen::Index r = 0; r < m; ++r) {
      if (ev(r) > ev(0) + 1e-9) break;
      std::vector<double> full(dim, 0.0);
      for (Eigen::Index a = 0; a < m; ++a) full[states[static_cast<std::size_t>(a)]] = solver.eigenvectors()(a, r);
      lowest.push_back({ev(r), std::move(full)});
    }
  }

  Spectrum out;
  std::sort(all.begin(), all.end());
  out.eigenvalues = std::move(all);
  out.ground_energy = best;
  for (auto& c : lowest) {
    if (c.energy > best + 1e-9) continue;
    auto first = std::find_if(c.vec.begin(), c.vec.end(), [](double x) { return std::abs(x) > 1e-12; });
    const double sign = (first != c.vec.end() && *first < 0.0) ? -1.0 : 1.0;
    std::vector<Amplitude> amps(c.vec.size());
    for (std::size_t k = 0; k < c.vec.size(); ++k) amps[k] = sign * c.vec[k];
    out.ground_states.push_back(StateVector::normalized(std::move(amps)));
  }
  return out;
}

void write_spectrum_csv(std::ostream& os, const Spectrum& spectrum) {
  const auto flags = os.flags();
  os << "index,value\n" << std::setprecision(17);
  for (std::size_t k = 0; k < spectrum.eigenvalues.size(); ++k) os << k << ',' << spectrum.eigenvalues[k] << '\n';
  os.flags(flags);
}

}  // namespace kagome
