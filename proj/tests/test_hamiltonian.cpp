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

#include <catch_amalgamated.hpp>

#include <chrono>
#include <cmath>
#include <random>
#include <sstream>

#include "kagome/errors.hpp"
#include "kagome/hamiltonian.hpp"
#include "kagome/lattice.hpp"
#include "kagome/observables.hpp"

using namespace kagome;
using cd = std::complex<double>;

namespace {

StateVector random_state(int n, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  std::vector<cd> a(std::size_t{1} << n);
  for (auto& x : a) x = {g(rng), g(rng)};
  return StateVector::normalized(std::move(a));
}

LatticeFragment single_edge(double j) {
  return LatticeFragment("edge", {{0, {0, 0}}, {1, {1, 0}}}, {{0, 1, j}});
}

LatticeFragment bowtie() {
  const double s = std::sqrt(3.0) / 2;
  return LatticeFragment("bowtie", {{0, {0, 0}}, {1, {1, 0}}, {2, {0.5, s}}, {3, {1.5, s}}, {4, {2, 0}}},
                         {{0, 1, 1}, {1, 2, 1}, {0, 2, 1}, {1, 3, 1}, {1, 4, 1}, {3, 4, 1}});
}

PauliSum total_spin_component(int n, char letter) {
  std::vector<PauliString> t;
  for (int q = 0; q < n; ++q) {
    std::string s(static_cast<std::size_t>(n), 'I');
    s[static_cast<std::size_t>(q)] = letter;
    t.push_back({s, 1.0});
  }
  return PauliSum(n, t);
}

PauliSum spin_square_operator(int n) {
  // (sum sigma)^2 = 3n + 2 sum_{i<j} sigma_i . sigma_j
  std::vector<PauliString> t;
  t.push_back(PauliString{std::string(static_cast<std::size_t>(n), 'I'), 3.0 * n});
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      const PauliSum c = pair_correlator(n, i, j);
      for (const auto& p : c.terms()) t.push_back({p.letters, 2.0 * p.coefficient});
    }
  return PauliSum(n, t);
}

StateVector singlet() { return StateVector({0.0, 1.0 / std::sqrt(2.0), -1.0 / std::sqrt(2.0), 0.0}); }

std::vector<ShotTable> sample_groups(const StateVector& psi, const QwcGroups& g, std::uint64_t shots, Seed seed) {
  std::vector<ShotTable> out;
  for (std::size_t k = 0; k < g.groups.size(); ++k)
    out.push_back(sample(psi, g.groups[k].measurement_basis(), shots, derive_seed(seed, {k})));
  return out;
}

}  // namespace

TEST_CASE("Heisenberg Pauli sums", "[hamiltonian]") {
  CHECK(heisenberg_from_lattice(build_triangle()).size() == 9);
  const auto star = heisenberg_from_lattice(build_star());
  CHECK(star.size() == 54);
  for (const auto& t : heisenberg_from_lattice(single_edge(2.0)).terms()) CHECK(t.coefficient == 2.0);
  // duplicates merge
  const PauliSum merged(2, {{"XX", 1.0}, {"XX", 0.5}, {"ZI", 1.0}});
  CHECK(merged.size() == 2);
  CHECK_THROWS_AS(PauliSum(2, {{"XQ", 1.0}}), std::invalid_argument);
  CHECK_THROWS_AS(PauliSum(2, {{"XXX", 1.0}}), std::invalid_argument);
  std::ostringstream os;
  os << PauliSum(2, {{"XX", 1.0}});
  CHECK_FALSE(os.str().empty());
}

TEST_CASE("qubit-wise commuting groups", "[hamiltonian]") {
  const auto star = heisenberg_from_lattice(build_star());
  const auto g = qwc_group(star);
  REQUIRE(g.groups.size() == 3);
  for (const auto& grp : g.groups) {
    CHECK(grp.terms.size() == 18);
    const std::string b = grp.measurement_basis();
    CHECK((b == std::string(12, 'X') || b == std::string(12, 'Y') || b == std::string(12, 'Z')));
    for (int a : grp.terms)
      for (int c : grp.terms) CHECK(qubitwise_commute(star.terms()[a].letters, star.terms()[c].letters));
  }
  CHECK(qwc_group(PauliSum(2, {{"XZ", 1.0}})).groups.size() == 1);
  CHECK(qwc_group(PauliSum(2, {{"XX", 1.0}, {"ZZ", 1.0}, {"XZ", 1.0}})).groups.size() == 3);
  CHECK(qubitwise_commute("XIZ", "XYI"));
  CHECK_FALSE(qubitwise_commute("XIZ", "ZII"));
}

TEST_CASE("exact expectations", "[hamiltonian]") {
  const auto tri = heisenberg_from_lattice(build_triangle());
  CHECK(std::abs(expectation_exact(StateVector(3), tri) - 3.0) < 1e-12);
  CHECK(std::abs(expectation_exact(singlet(), heisenberg_from_lattice(single_edge(1.0))) + 3.0) < 1e-12);
  const std::pair<int, int> pair{1, 2};
  const StateVector plus_singlet = dimer_state(build_triangle(), std::span(&pair, 1));
  CHECK(std::abs(expectation_exact(plus_singlet, tri) + 3.0) < 1e-12);
  CHECK_THROWS_AS(expectation_exact(StateVector(2), tri), std::invalid_argument);
}

TEST_CASE("expectation matches the dense matrix", "[hamiltonian][property]") {
  std::mt19937_64 rng(21);
  const auto h = heisenberg_from_lattice(bowtie());
  const Eigen::MatrixXcd m = to_dense(h);
  CHECK((m - m.adjoint()).norm() < 1e-12);
  for (int k = 0; k < 10; ++k) {
    const auto psi = random_state(5, rng);
    const Eigen::Map<const Eigen::VectorXcd> v(psi.amplitudes().data(), 32);
    CHECK(std::abs(expectation_exact(psi, h) - v.dot(m * v).real()) < 1e-10);
  }
}

TEST_CASE("SU(2) symmetry of the Heisenberg matrix", "[hamiltonian][property]") {
  for (const auto& f : {build_triangle(), bowtie()}) {
    const int n = f.num_sites();
    const Eigen::MatrixXcd h = to_dense(heisenberg_from_lattice(f));
    for (char letter : {'X', 'Y', 'Z'}) {
      const Eigen::MatrixXcd s = to_dense(total_spin_component(n, letter));
      CHECK((h * s - s * h).norm() < 1e-9);
    }
    const Eigen::MatrixXcd s2 = to_dense(spin_square_operator(n));
    CHECK((h * s2 - s2 * h).norm() < 1e-9);
  }
}

TEST_CASE("exact spectra", "[hamiltonian]") {
  const auto t0 = std::chrono::steady_clock::now();
  const Spectrum tri = exact_spectrum(build_triangle());
  CHECK(std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count() < 1.0);
  CHECK(std::abs(tri.ground_energy + 3.0) < 1e-9);
  CHECK(tri.eigenvalues.size() == 8);
  // two spin-1/2 doublets: dimension fixed by the oracle
  CHECK(tri.ground_states.size() == 4);
  for (std::size_t k = 1; k < tri.eigenvalues.size(); ++k) CHECK(tri.eigenvalues[k - 1] <= tri.eigenvalues[k]);

  const Spectrum star = exact_spectrum(build_star());
  CHECK(std::abs(star.ground_energy + 18.0) < 1e-9);
  CHECK(star.eigenvalues.size() == 4096);
  CHECK(star.ground_states.size() == 2);
  const auto h = heisenberg_from_lattice(build_star());
  const auto s2 = spin_square_operator(12);
  for (std::size_t a = 0; a < star.ground_states.size(); ++a) {
    const auto& g = star.ground_states[a];
    CHECK(std::abs(expectation_exact(g, h) + 18.0) < 1e-9);
    CHECK(std::abs(expectation_exact(g, s2)) < 1e-9);
    std::size_t first = 0;
    while (std::abs(g[first]) < 1e-12) ++first;
    CHECK(g[first].real() > 0);
    CHECK(std::abs(g[first].imag()) < 1e-12);
    for (std::size_t b = 0; b < star.ground_states.size(); ++b)
      CHECK(std::abs(inner(g, star.ground_states[b]) - (a == b ? 1.0 : 0.0)) < 1e-9);
  }
  // trace check: sum of eigenvalues = tr H = 0
  double tr = 0;
  for (double e : star.eigenvalues) tr += e;
  CHECK(std::abs(tr) < 1e-8);

  std::vector<Site> many;
  std::vector<Edge> chain;
  for (int k = 0; k < 15; ++k) {
    many.push_back({k, {static_cast<double>(k), 0.0}});
    if (k) chain.push_back({k - 1, k, 1.0});
  }
  CHECK_THROWS_AS(exact_spectrum(LatticeFragment("long", many, chain)), SizeLimit);
  std::ostringstream os;
  write_spectrum_csv(os, tri);
  CHECK(os.str().rfind("index,value\n0,-3", 0) == 0);
}

TEST_CASE("shot-based energy estimates", "[hamiltonian]") {
  const auto h1 = heisenberg_from_lattice(single_edge(1.0));
  const auto g1 = qwc_group(h1);
  const auto est = estimate_energy(sample_groups(singlet(), g1, 100000, 3), h1, g1);
  CHECK(std::abs(est.value + 3.0) < 4 * est.std_error + 1e-12);

  const auto tri = heisenberg_from_lattice(build_triangle());
  const auto g3 = qwc_group(tri);
  const auto tables = sample_groups(StateVector(3), g3, 20000, 9);
  const auto e = estimate_energy(tables, tri, g3);
  for (std::size_t k = 0; k < g3.groups.size(); ++k) {
    if (g3.groups[k].measurement_basis() == "ZZZ") {
      CHECK(e.group_means[k] == 3.0);
      CHECK(e.group_variances[k] == 0.0);
    } else {
      CHECK(std::abs(e.group_means[k]) < 4 * std::sqrt(e.group_variances[k] / 20000));
    }
  }
  // wrong basis order is rejected
  std::vector<ShotTable> swapped{tables[1], tables[0], tables[2]};
  CHECK_THROWS_AS(estimate_energy(swapped, tri, g3), std::invalid_argument);
  std::vector<ShotTable> tiny{sample(StateVector(3), "XXX", 1, 1), tables[1], tables[2]};
  if (g3.groups[0].measurement_basis() == "XXX") CHECK_THROWS_AS(estimate_energy(tiny, tri, g3), std::invalid_argument);
}

TEST_CASE("energy estimate converges on random states", "[hamiltonian][property]") {
  std::mt19937_64 rng(31);
  const LatticeFragment four("square", {{0, {0, 0}}, {1, {1, 0}}, {2, {1, 1}}, {3, {0, 1}}},
                             {{0, 1, 1}, {1, 2, 0.5}, {2, 3, 1}, {0, 3, 2}});
  const auto h = heisenberg_from_lattice(four);
  const auto g = qwc_group(h);
  for (int k = 0; k < 5; ++k) {
    const auto psi = random_state(4, rng);
    const auto e = estimate_energy(sample_groups(psi, g, 1000000, 100 + k), h, g);
    CHECK(std::abs(e.value - expectation_exact(psi, h)) < 5 * e.std_error);
  }
}

TEST_CASE("variance equals the textbook sample variance", "[hamiltonian][property]") {
  std::mt19937_64 rng(41);
  const auto h = heisenberg_from_lattice(build_triangle());
  const auto g = qwc_group(h);
  std::uniform_int_distribution<int> bit(0, 1), cnt(0, 30);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<ShotTable> tables;
    std::vector<std::vector<double>> values(g.groups.size());
    for (std::size_t k = 0; k < g.groups.size(); ++k) {
      ShotTable t{g.groups[k].measurement_basis(), {}, 0, 0};
      for (int b = 0; b < 8; ++b) {
        const std::string bits{static_cast<char>('0' + (b & 1)), static_cast<char>('0' + ((b >> 1) & 1)),
                               static_cast<char>('0' + ((b >> 2) & 1))};
        const int c = cnt(rng) + (b == 0 ? 2 : 0);
        t.counts[bits] = static_cast<std::uint64_t>(c);
        t.shots += static_cast<std::uint64_t>(c);
        for (int r = 0; r < c; ++r) values[k].push_back(group_shot_value(h, g.groups[k], bits));
      }
      tables.push_back(t);
    }
    const auto e = estimate_energy(tables, h, g);
    double se2 = 0;
    for (std::size_t k = 0; k < values.size(); ++k) {
      const auto& v = values[k];
      double m = 0;
      for (double x : v) m += x;
      m /= static_cast<double>(v.size());
      double ss = 0;
      for (double x : v) ss += (x - m) * (x - m);
      const double var = ss / static_cast<double>(v.size() - 1);
      CHECK(std::abs(e.group_variances[k] - var) < 1e-10);
      CHECK(std::abs(e.group_means[k] - m) < 1e-12);
      se2 += var / static_cast<double>(v.size());
    }
    CHECK(std::abs(e.std_error - std::sqrt(se2)) < 1e-12);
  }
}
