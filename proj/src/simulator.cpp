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

#include "kagome/simulator.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <istream>
#include <numbers>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "kagome/errors.hpp"

namespace kagome {

namespace {

constexpr double kPi = std::numbers::pi;

int log2_exact(std::size_t n) {
  if (n == 0 || !std::has_single_bit(n)) throw std::invalid_argument("state: length must be a power of two");
  return std::countr_zero(n);
}

void check_qubit(int q, int n) {
  if (q < 0 || q >= n) throw std::invalid_argument("state: qubit index out of range");
}

}  // namespace

StateVector::StateVector(int num_qubits) : num_qubits_(num_qubits) {
  if (num_qubits < 0 || num_qubits > 30) throw std::invalid_argument("state: unsupported qubit count");
  amps_.assign(std::size_t{1} << num_qubits, Amplitude{0.0, 0.0});
  amps_[0] = 1.0;
}

StateVector::StateVector(std::vector<Amplitude> amplitudes, double norm_tol)
    : num_qubits_(log2_exact(amplitudes.size())), amps_(std::move(amplitudes)) {
  if (std::abs(norm() - 1.0) > norm_tol) throw std::invalid_argument("state: amplitudes are not normalized");
}

StateVector StateVector::basis_state(int num_qubits, std::uint64_t index) {
  StateVector s(num_qubits);
  if (index >= s.dim()) throw std::invalid_argument("state: basis index out of range");
  s.amps_[0] = 0.0;
  s.amps_[index] = 1.0;
  return s;
}

StateVector StateVector::normalized(std::vector<Amplitude> amplitudes) {
  double sq = 0.0;
  for (const auto& a : amplitudes) sq += std::norm(a);
  if (!(sq > 0.0)) throw std::invalid_argument("state: cannot normalize the zero vector");
  const double inv = 1.0 / std::sqrt(sq);
  for (auto& a : amplitudes) a *= inv;
  return StateVector(std::move(amplitudes));
}

double StateVector::norm() const {
  double sq = 0.0;
  for (const auto& a : amps_) sq += std::norm(a);
  return std::sqrt(sq);
}

std::vector<double> StateVector::probabilities() const {
  std::vector<double> p(amps_.size());
  std::transform(amps_.begin(), amps_.end(), p.begin(), [](const Amplitude& a) { return std::norm(a); });
  return p;
}

void StateVector::apply_matrix(const Eigen::Matrix2cd& m, int q) {
  check_qubit(q, num_qubits_);
  const std::size_t stride = std::size_t{1} << q;
  const Amplitude m00 = m(0, 0), m01 = m(0, 1), m10 = m(1, 0), m11 = m(1, 1);
  for (std::size_t base = 0; base < amps_.size(); base += 2 * stride) {
    for (std::size_t k = base; k < base + stride; ++k) {
      const Amplitude a0 = amps_[k], a1 = amps_[k + stride];
      amps_[k] = m00 * a0 + m01 * a1;
      amps_[k + stride] = m10 * a0 + m11 * a1;
    }
  }
}

void StateVector::apply_pauli(char letter, int q) {
  check_qubit(q, num_qubits_);
  const std::size_t stride = std::size_t{1} << q;
  const Amplitude i(0.0, 1.0);
  switch (letter) {
    case 'I':
      return;
    case 'X':
      for (std::size_t k = 0; k < amps_.size(); ++k)
        if (!(k & stride)) std::swap(amps_[k], amps_[k | stride]);
      return;
    case 'Y':
      // Y|0> = i|1>, Y|1> = -i|0>
      for (std::size_t k = 0; k < amps_.size(); ++k) {
        if (k & stride) continue;
        const Amplitude a0 = amps_[k], a1 = amps_[k | stride];
        amps_[k] = -i * a1;
        amps_[k | stride] = i * a0;
      }
      return;
    case 'Z':
      for (std::size_t k = 0; k < amps_.size(); ++k)
        if (k & stride) amps_[k] = -amps_[k];
      return;
    default:
      throw std::invalid_argument(std::string("unknown Pauli letter '") + letter + "'");
  }
}

void StateVector::apply(GateKind kind, int q0, int q1, double angle) {
  switch (kind) {
    case GateKind::X:
      apply_pauli('X', q0);
      return;
    case GateKind::CNOT: {
      check_qubit(q0, num_qubits_);
      check_qubit(q1, num_qubits_);
      const std::size_t c = std::size_t{1} << q0, t = std::size_t{1} << q1;
      for (std::size_t k = 0; k < amps_.size(); ++k)
        if ((k & c) && !(k & t)) std::swap(amps_[k], amps_[k | t]);
      return;
    }
    case GateKind::CZ: {
      check_qubit(q0, num_qubits_);
      check_qubit(q1, num_qubits_);
      const std::size_t mask = (std::size_t{1} << q0) | (std::size_t{1} << q1);
      for (std::size_t k = 0; k < amps_.size(); ++k)
        if ((k & mask) == mask) amps_[k] = -amps_[k];
      return;
    }
    default:
      apply_matrix(gate_matrix(kind, angle), q0);
  }
}

std::complex<double> inner(const StateVector& a, const StateVector& b) {
  if (a.dim() != b.dim()) throw std::invalid_argument("inner: dimension mismatch");
  std::complex<double> s{0.0, 0.0};
  for (std::size_t k = 0; k < a.dim(); ++k) s += std::conj(a[k]) * b[k];
  return s;
}

StateVector evolve_range(StateVector state, const Circuit& circuit, std::size_t begin, std::size_t end) {
  if (!circuit.is_bound()) throw InvalidState("evolve: circuit has unbound parameters");
  if (state.num_qubits() != circuit.num_qubits()) throw std::invalid_argument("evolve: qubit count mismatch");
  end = std::min(end, circuit.size());
  for (std::size_t k = begin; k < end; ++k) {
    const Gate& g = circuit.gates()[k];
    state.apply(g.kind, g.qubits[0], g.qubits[1], g.angle.value);
  }
  return state;
}

StateVector evolve(StateVector state, const Circuit& circuit) {
  return evolve_range(std::move(state), circuit, 0, circuit.size());
}

NoiseModel NoiseModel::with_readout_flip(int num_qubits, double flip, double p1, double p2) {
  NoiseModel m;
  m.p1 = p1;
  m.p2 = p2;
  Eigen::Matrix2d c;
  c << 1.0 - flip, flip, flip, 1.0 - flip;
  m.readout.assign(static_cast<std::size_t>(num_qubits), c);
  return m;
}

bool NoiseModel::has_readout_noise() const {
  return std::any_of(readout.begin(), readout.end(),
                     [](const Eigen::Matrix2d& c) { return !c.isIdentity(0.0); });
}

void NoiseModel::validate(int num_qubits) const {
  const auto prob = [](double p) { return p >= 0.0 && p <= 1.0; };
  if (!prob(p1) || !prob(p2)) throw std::invalid_argument("noise: depolarizing probabilities must lie in [0, 1]");
  if (!readout.empty() && readout.size() != static_cast<std::size_t>(num_qubits))
    throw std::invalid_argument("noise: need one confusion matrix per qubit");
  for (const auto& c : readout) {
    for (int col = 0; col < 2; ++col) {
      if (!prob(c(0, col)) || !prob(c(1, col)) || std::abs(c(0, col) + c(1, col) - 1.0) > 1e-12)
        throw std::invalid_argument("noise: confusion matrix columns must be probability vectors");
    }
  }
}

namespace {

// The error draws never look at the state, so they can be made up front.
std::vector<PauliEvent> draw_events(const Circuit& circuit, const NoiseModel& noise, Seed seed) {
  static constexpr char kLetters[4] = {'I', 'X', 'Y', 'Z'};
  std::vector<PauliEvent> events;
  Rng rng(seed);
  for (std::size_t k = 0; k < circuit.size(); ++k) {
    const Gate& g = circuit.gates()[k];
    if (is_two_qubit(g.kind)) {
      if (noise.p2 > 0.0 && uniform01(rng) < noise.p2) {
        const auto which = 1 + uniform_below(rng, 15);
        events.push_back({k, {g.qubits[0], g.qubits[1]}, {kLetters[which / 4], kLetters[which % 4]}});
      }
    } else if (noise.p1 > 0.0 && uniform01(rng) < noise.p1) {
      events.push_back({k, {g.qubits[0], -1}, {kLetters[1 + uniform_below(rng, 3)], 'I'}});
    }
  }
  return events;
}

StateVector apply_events(StateVector state, const Circuit& circuit, const std::vector<PauliEvent>& events) {
  auto next = events.begin();
  for (std::size_t k = 0; k < circuit.size(); ++k) {
    const Gate& g = circuit.gates()[k];
    state.apply(g.kind, g.qubits[0], g.qubits[1], g.angle.value);
    for (; next != events.end() && next->gate_index == k; ++next)
      for (int j = 0; j < 2; ++j)
        if (next->qubits[j] >= 0) state.apply_pauli(next->letters[j], next->qubits[j]);
  }
  return state;
}

}  // namespace

StateVector evolve_trajectory(StateVector state, const Circuit& circuit, const NoiseModel& noise, Seed seed,
                              std::vector<PauliEvent>* events) {
  if (!circuit.is_bound()) throw InvalidState("evolve: circuit has unbound parameters");
  if (state.num_qubits() != circuit.num_qubits()) throw std::invalid_argument("evolve: qubit count mismatch");
  const std::vector<PauliEvent> drawn = draw_events(circuit, noise, seed);
  if (events) events->insert(events->end(), drawn.begin(), drawn.end());
  return apply_events(std::move(state), circuit, drawn);
}

std::string uniform_basis(char letter, int num_qubits) {
  return std::string(static_cast<std::size_t>(num_qubits), letter);
}

void rotate_to_basis(StateVector& state, const std::string& basis) {
  if (basis.size() != static_cast<std::size_t>(state.num_qubits()))
    throw std::invalid_argument("basis: expected one letter per qubit");
  for (int q = 0; q < state.num_qubits(); ++q) {
    switch (basis[static_cast<std::size_t>(q)]) {
      case 'X':
        state.apply(GateKind::H, q);
        break;
      case 'Y':
        state.apply(GateKind::Rz, q, -1, -kPi / 2);
        state.apply(GateKind::H, q);
        break;
      case 'Z':
      case 'I':
        break;
      default:
        throw std::invalid_argument("basis: letters must be X, Y or Z");
    }
  }
}

namespace {

std::string bitstring(std::uint64_t index, int n) {
  std::string s(static_cast<std::size_t>(n), '0');
  for (int q = 0; q < n; ++q)
    if ((index >> q) & 1U) s[static_cast<std::size_t>(q)] = '1';
  return s;
}

// Adds `shots` draws from the Z distribution of state to counts.
void draw(const StateVector& state, std::uint64_t shots, Rng& rng, std::map<std::string, std::uint64_t>& counts) {
  std::vector<double> cdf = state.probabilities();
  for (std::size_t k = 1; k < cdf.size(); ++k) cdf[k] += cdf[k - 1];
  const double total = cdf.back();
  std::vector<std::uint64_t> hist(cdf.size(), 0);
  for (std::uint64_t s = 0; s < shots; ++s) {
    const double u = uniform01(rng) * total;
    auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
    if (it == cdf.end()) --it;
    ++hist[static_cast<std::size_t>(it - cdf.begin())];
  }
  for (std::size_t k = 0; k < hist.size(); ++k)
    if (hist[k]) counts[bitstring(k, state.num_qubits())] += hist[k];
}

}  // namespace

ShotTable sample(StateVector state, const std::string& basis, std::uint64_t shots, Seed seed) {
  if (shots == 0) throw std::invalid_argument("sample: shots must be >= 1");
  rotate_to_basis(state, basis);
  ShotTable table{basis, {}, shots, seed};
  Rng rng(seed);
  draw(state, shots, rng, table.counts);
  return table;
}

ShotTable apply_readout_noise(const ShotTable& table, const NoiseModel& noise, Seed seed) {
  if (!noise.has_readout_noise()) return table;
  const int n = table.num_qubits();
  if (noise.readout.size() != static_cast<std::size_t>(n))
    throw std::invalid_argument("readout: need one confusion matrix per qubit");
  ShotTable out{table.basis, {}, table.shots, table.seed};
  Rng rng(derive_seed(seed, {0x7265616dULL}));
  for (const auto& [bits, count] : table.counts) {
    for (std::uint64_t s = 0; s < count; ++s) {
      std::string observed = bits;
      for (int q = 0; q < n; ++q) {
        const int truth = bits[static_cast<std::size_t>(q)] == '1';
        // P(flip | truth) = confusion(1 - truth, truth)
        if (uniform01(rng) < noise.readout[static_cast<std::size_t>(q)](1 - truth, truth))
          observed[static_cast<std::size_t>(q)] = truth ? '0' : '1';
      }
      ++out.counts[observed];
    }
  }
  return out;
}

ShotTable run_circuit(const Circuit& circuit, const std::string& basis, std::uint64_t shots, const NoiseModel& noise,
                      Seed seed, std::uint64_t shots_per_trajectory) {
  if (shots == 0) throw std::invalid_argument("run_circuit: shots must be >= 1");
  if (shots_per_trajectory == 0) throw std::invalid_argument("run_circuit: shots_per_trajectory must be >= 1");
  noise.validate(circuit.num_qubits());
  ShotTable table{basis, {}, shots, seed};
  const StateVector zero(circuit.num_qubits());
  if (!noise.has_gate_noise()) {
    StateVector s = evolve(zero, circuit);
    rotate_to_basis(s, basis);
    Rng rng(derive_seed(seed, {0}));
    draw(s, shots, rng, table.counts);
  } else {
    if (!circuit.is_bound()) throw InvalidState("evolve: circuit has unbound parameters");
    // error-free trajectories all end in the same state
    StateVector clean = evolve(zero, circuit);
    rotate_to_basis(clean, basis);
    std::uint64_t done = 0;
    for (std::uint64_t t = 0; done < shots; ++t) {
      const std::uint64_t chunk = std::min(shots_per_trajectory, shots - done);
      const auto events = draw_events(circuit, noise, derive_seed(seed, {1, t}));
      StateVector s = events.empty() ? clean : apply_events(zero, circuit, events);
      if (!events.empty()) rotate_to_basis(s, basis);
      Rng rng(derive_seed(seed, {2, t}));
      draw(s, chunk, rng, table.counts);
      done += chunk;
    }
  }
  return apply_readout_noise(table, noise, derive_seed(seed, {3}));
}

void write_shot_table(std::ostream& os, const ShotTable& table) {
  os << "basis " << table.basis << '\n' << "seed " << table.seed << '\n' << "shots " << table.shots << '\n';
  for (const auto& [bits, count] : table.counts) os << bits << ',' << count << '\n';
}

ShotTable read_shot_table(std::istream& is) {
  ShotTable t;
  std::string line;
  std::uint64_t total = 0;
  while (std::getline(is, line)) {
    if (line.empty() || line.front() == '#') continue;
    std::istringstream ls(line);
    if (line.rfind("basis ", 0) == 0) {
      ls.ignore(6);
      ls >> t.basis;
    } else if (line.rfind("seed ", 0) == 0) {
      ls.ignore(5);
      ls >> t.seed;
    } else if (line.rfind("shots ", 0) == 0) {
      ls.ignore(6);
      ls >> t.shots;
    } else {
      const auto comma = line.find(',');
      if (comma == std::string::npos) throw std::invalid_argument("shot table: bad line '" + line + "'");
      const std::string bits = line.substr(0, comma);
      if (bits.size() != t.basis.size() || bits.find_first_not_of("01") != std::string::npos)
        throw std::invalid_argument("shot table: bad bitstring '" + bits + "'");
      const std::uint64_t c = std::stoull(line.substr(comma + 1));
      t.counts[bits] += c;
      total += c;
    }
  }
  if (total != t.shots) throw std::invalid_argument("shot table: counts do not sum to the shot total");
  return t;
}

}  // namespace kagome
