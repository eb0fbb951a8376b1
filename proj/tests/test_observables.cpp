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

#include <algorithm>
#include <cmath>
#include <complex>
#include <sstream>

#include "kagome/ansatz.hpp"
#include "kagome/hamiltonian.hpp"
#include "kagome/lattice.hpp"
#include "kagome/observables.hpp"
#include "kagome/simulator.hpp"

using namespace kagome;

namespace {

LatticeFragment pair_fragment() { return LatticeFragment("pair", {{0, {0, 0}}, {1, {1, 0}}}, {{0, 1, 1.0}}); }

StateVector singlet() {
  std::vector<Amplitude> a(4, 0.0);
  a[1] = 1 / std::sqrt(2.0);
  a[2] = -1 / std::sqrt(2.0);
  return StateVector(a);
}

StateVector product_ry(double a, double b) {
  StateVector s(2);
  s.apply(GateKind::Ry, 0, -1, a);
  s.apply(GateKind::Ry, 1, -1, b);
  return s;
}

}  // namespace

TEST_CASE("exact spin correlations", "[observables]") {
  CHECK(spin_correlation(singlet(), 0, 1).value == Catch::Approx(-3.0));
  CHECK(spin_correlation(StateVector(2), 0, 1).value == Catch::Approx(1.0));
  CHECK(spin_correlation(StateVector(2), 1, 1).value == Catch::Approx(3.0));
  const double a = 0.7, b = 1.9;
  CHECK(spin_correlation(product_ry(a, b), 0, 1).value ==
        Catch::Approx(std::sin(a) * std::sin(b) + std::cos(a) * std::cos(b)));

  const auto tri = prepare(triangle_ansatz(), triangle_exact_params());
  const auto t = correlation_table(tri);
  CHECK(t.complete());
  CHECK(std::abs(t.at(0, 1).value) < 1e-12);
  CHECK(std::abs(t.at(1, 2).value + 3.0) < 1e-12);
  CHECK(std::abs(t.at(2, 0).value) < 1e-12);
  CHECK(t.at(1, 2).std_error == 0.0);
}

TEST_CASE("correlation bounds and total spin", "[observables][property]") {
  const auto spec = star_ansatz();
  Rng rng(21);
  for (int trial = 0; trial < 5; ++trial) {
    std::vector<double> p;
    for (int k = 0; k < spec.num_params(); ++k) p.push_back(2 * M_PI * uniform01(rng));
    const auto t = correlation_table(prepare(spec, p));
    for (int i = 0; i < 12; ++i)
      for (int j = 0; j < 12; ++j) {
        if (i == j) {
          CHECK(t.at(i, j).value == Catch::Approx(3.0));
          continue;
        }
        CHECK(t.at(i, j).value >= -3.0 - 1e-12);
        CHECK(t.at(i, j).value <= 1.0 + 1e-12);
        CHECK(t.at(i, j).value == Catch::Approx(t.at(j, i).value));
      }
    CHECK(total_spin_square(t) >= -1e-9);
  }
  const auto ground = exact_spectrum(build_star()).ground_states;
  CHECK(std::abs(total_spin_square(correlation_table(ground))) < 1e-8);
}

TEST_CASE("structure factor basics", "[observables]") {
  const auto frag = pair_fragment();
  const std::vector<MomentumPoint> origin{{{0.0, 0.0}, true}, {{1.3, -0.4}, false}};
  const auto s = structure_factor(correlation_table(singlet()), frag, origin);
  CHECK(std::abs(s.points[0].s) < 1e-12);
  CHECK(s.points[0].inside_bz);

  CorrelationTable diag;
  diag.values = 3.0 * Eigen::MatrixXd::Identity(2, 2);
  diag.std_errors = Eigen::MatrixXd::Zero(2, 2);
  for (const auto& p : structure_factor(diag, frag, origin).points) CHECK(p.s == Catch::Approx(3.0));

  CorrelationTable partial = diag;
  partial.values(0, 1) = std::nan("");
  CHECK_THROWS(structure_factor(partial, frag, origin));
}

TEST_CASE("star structure factor has sixfold symmetry", "[observables][property]") {
  const auto star = build_star();
  const auto table = correlation_table(exact_spectrum(star).ground_states);
  std::vector<MomentumPoint> pts, rotated;
  const double c = std::cos(M_PI / 3), s = std::sin(M_PI / 3);
  for (const auto& m : momentum_grid(15, 1.2)) {
    pts.push_back(m);
    rotated.push_back({{c * m.q[0] - s * m.q[1], s * m.q[0] + c * m.q[1]}, false});
  }
  const auto a = structure_factor(table, star, pts);
  const auto b = structure_factor(table, star, rotated);
  for (std::size_t k = 0; k < pts.size(); ++k) CHECK(std::abs(a.points[k].s - b.points[k].s) < 1e-6);
}

TEST_CASE("similarity", "[observables]") {
  StructureFactorMap a;
  a.num_sites = 3;
  for (int k = 0; k < 10; ++k) a.points.push_back({{0.1 * k, 0.0}, static_cast<double>(k * k % 7), true});
  const auto self = similarity(a, a);
  CHECK(self.pearson == Catch::Approx(1.0));
  CHECK(self.mse == 0.0);
  auto shifted = a;
  for (auto& p : shifted.points) p.s += 0.5;
  const auto sh = similarity(a, shifted);
  CHECK(sh.pearson == Catch::Approx(1.0));
  CHECK(sh.mse == Catch::Approx(0.25));
  auto bad = a;
  bad.points.pop_back();
  CHECK_THROWS(similarity(a, bad));
}

TEST_CASE("dimer states and fidelity", "[observables]") {
  const LatticeFragment single("one", {{0, {0, 0}}}, {});
  const auto plus = dimer_state(single, {});
  CHECK(std::abs(plus[0] - std::sqrt(0.5)) < 1e-15);
  CHECK(std::abs(plus[1] - std::sqrt(0.5)) < 1e-15);

  const std::vector<std::pair<int, int>> one{{0, 1}};
  const auto d = dimer_state(pair_fragment(), one);
  CHECK(fidelity(d, singlet()) == Catch::Approx(1.0));

  const auto star = build_star();
  const std::vector<std::pair<int, int>> overlap{{0, 1}, {1, 2}};
  CHECK_THROWS_AS(dimer_state(star, overlap), std::invalid_argument);
  const std::vector<std::pair<int, int>> nonedge{{0, 6}};
  CHECK_THROWS_AS(dimer_state(star, nonedge), std::invalid_argument);
  const std::vector<std::pair<int, int>> partial{{0, 1}};
  CHECK_THROWS_AS(dimer_state(star, partial, false), std::invalid_argument);

  const auto c0 = dimer_state(star, star_dimer_covering(0));
  const auto c1 = dimer_state(star, star_dimer_covering(1));
  CHECK(fidelity(c0, c0) == Catch::Approx(1.0));
  const auto h = heisenberg_from_lattice(star);
  CHECK(expectation_exact(c0, h) == Catch::Approx(-18.0));
  CHECK(expectation_exact(c1, h) == Catch::Approx(-18.0));

  CHECK(fidelity(StateVector::basis_state(2, 0), StateVector::basis_state(2, 3)) == 0.0);
  const std::vector<StateVector> span{StateVector::basis_state(2, 0), StateVector::basis_state(2, 3)};
  CHECK(fidelity(product_ry(M_PI / 2, M_PI / 2), span) == Catch::Approx(0.5));
  const auto ground = exact_spectrum(star).ground_states;
  CHECK(fidelity(c0, ground) == Catch::Approx(1.0));
  CHECK(fidelity(prepare(star_ansatz(), star_exact_params()), ground) == Catch::Approx(1.0));
}

TEST_CASE("sampled correlations converge at the shot-noise rate", "[observables][property]") {
  const double a = 0.7, b = 1.9;
  const auto psi = product_ry(a, b);
  const double exact = spin_correlation(psi, 0, 1).value;
  auto measure = [&](std::uint64_t shots, Seed seed) {
    std::vector<ShotTable> t;
    for (char l : {'X', 'Y', 'Z'}) t.push_back(sample(psi, std::string(2, l), shots, derive_seed(seed, {static_cast<std::uint64_t>(l)})));
    return spin_correlation(t, 0, 1);
  };
  const auto small = measure(2000, 1);
  const auto large = measure(200000, 1);
  CHECK(std::abs(small.value - exact) < 5 * small.std_error);
  CHECK(std::abs(large.value - exact) < 5 * large.std_error);
  const double slope = std::log(large.std_error / small.std_error) / std::log(100.0);
  CHECK(slope == Catch::Approx(-0.5).margin(0.05));

  const std::vector<ShotTable> only_z{sample(psi, "ZZ", 100, 1)};
  CHECK_THROWS_AS(spin_correlation(only_z, 0, 1), std::invalid_argument);
}

TEST_CASE("correlation CSV", "[observables]") {
  std::ostringstream os;
  write_correlations_csv(os, correlation_table(singlet()));
  const std::string text = os.str();
  REQUIRE(text.rfind("i,j,value,stderr\n0,1,", 0) == 0);
  CHECK(std::stod(text.substr(text.find("0,1,") + 4)) == Catch::Approx(-3.0));
  CHECK(std::count(text.begin(), text.end(), '\n') == 2);  // upper triangle only
  std::ostringstream sq;
  StructureFactorMap m;
  m.num_sites = 1;
  m.points.push_back({{0.0, 0.5}, 2.0, true});
  write_structure_factor_csv(sq, m);
  CHECK(sq.str() == "qx,qy,S,inside_bz\n0,0.5,2,1\n");
}
