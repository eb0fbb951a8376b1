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

// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any FAIL.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "kagome/ansatz.hpp"
#include "kagome/hamiltonian.hpp"
#include "kagome/lattice.hpp"
#include "kagome/mitigation.hpp"
#include "kagome/observables.hpp"
#include "kagome/optim.hpp"
#include "kagome/pipeline.hpp"

using namespace kagome;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::vector<double> uniform_params(int d, Seed seed) {
  Rng rng(seed);
  std::vector<double> p(static_cast<std::size_t>(d));
  for (double& x : p) x = (2.0 * uniform01(rng) - 1.0) * M_PI;
  return p;
}

double exact_energy(const AnsatzSpec& spec, const PauliSum& h, std::span<const double> p) {
  return expectation_exact(prepare(spec, p), h);
}

// First iteration whose iterate has exact energy at or below target; -1 if never.
int first_reaching(const OptTrace& t, const AnsatzSpec& spec, const PauliSum& h, double target) {
  if (exact_energy(spec, h, t.initial_params) <= target) return 0;
  for (const auto& r : t.records)
    if (exact_energy(spec, h, r.params) <= target) return r.iteration;
  return -1;
}

Outcome c1() {
  auto t0 = std::chrono::steady_clock::now();
  const double tri = exact_spectrum(build_triangle()).ground_energy;
  const double t_tri = seconds_since(t0);
  t0 = std::chrono::steady_clock::now();
  const double star = exact_spectrum(build_star()).ground_energy;
  const double t_star = seconds_since(t0);
  return {std::abs(tri + 3) < 1e-9 && std::abs(star + 18) < 1e-9 && t_tri < 1 && t_star < 60,
          fmt("triangle %.12f (%.3fs), star %.12f (%.2fs)", tri, t_tri, star, t_star)};
}

Outcome c2() {
  const auto t0 = std::chrono::steady_clock::now();
  double worst = 0;
  for (const auto& spec : {triangle_ansatz(), star_ansatz()})
    for (Seed k = 0; k < 100; ++k)
      worst = std::max(worst, metric_deviation_from_quarter_identity(
                                  fubini_study_full_numeric(spec, uniform_params(spec.num_params(), 1000 + k))));
  const double t = seconds_since(t0);
  return {worst < 1e-9 && t < 30, fmt("max |g - I/4| = %.3e over 200 draws (%.2fs)", worst, t)};
}

Outcome c3() {
  const auto tri = build_triangle();
  const auto h3 = heisenberg_from_lattice(tri);
  const auto spec = triangle_ansatz();
  const auto psi = prepare(spec, std::vector<double>{M_PI / 4, 3 * M_PI / 2, M_PI});
  // singlet on (1, 2) with qubit 0 in either basis state
  const double r = std::sqrt(0.5);
  std::vector<StateVector> singlet12;
  for (std::size_t q0 : {0, 1}) {
    std::vector<Amplitude> a(8, 0.0);
    a[0b010 | q0] = r;
    a[0b100 | q0] = -r;
    singlet12.emplace_back(a);
  }
  const double w12 = fidelity(psi, singlet12);
  const double e_tri = expectation_exact(psi, h3);
  const std::vector<std::pair<int, int>> cover{{1, 2}};
  const double f_plus = fidelity(psi, dimer_state(tri, cover));  // reported only, see README
  // reported VQE parameters from the Kyoto run against the exact-parameter state
  const auto kyoto = prepare(spec, std::vector<double>{0.2306 * M_PI, 1.5005 * M_PI, 1.0031 * M_PI});
  const double f_kyoto = fidelity(kyoto, psi);
  const double de_kyoto = expectation_exact(kyoto, h3) + 3;

  const auto star = build_star();
  const auto rounded = round_to_quarter_turn(star_reported_params());
  const auto phi = prepare(star_ansatz(), rounded);
  const double e_star = expectation_exact(phi, heisenberg_from_lattice(star));
  const double f_star = fidelity(phi, exact_spectrum(star).ground_states);
  const bool ok = w12 >= 1 - 1e-9 && std::abs(e_tri + 3) < 1e-9 && std::abs(f_kyoto - 0.9989) < 1e-3 &&
                  std::abs(de_kyoto - 8e-5) < 1e-5 && std::abs(e_star + 18) < 1e-9 && f_star >= 0.999;
  return {ok, fmt("triangle singlet(1,2) weight %.12f, E=%.12f, overlap with |+>(x)[1,2] %.6f; Kyoto params F=%.5f "
                  "dE=%.2e; star E=%.12f F=%.6f",
                  w12, e_tri, f_plus, f_kyoto, de_kyoto, e_star, f_star)};
}

Outcome c4() {
  const auto h3 = heisenberg_from_lattice(build_triangle());
  std::string detail;
  bool ok = true;
  const std::vector<std::pair<const char*, std::vector<double>>> starts{
      {"kyoto", {0.2427 * M_PI, 0.2510 * M_PI, 0.1233 * M_PI}}, {"oslo", {0.2914 * M_PI, 0.2812 * M_PI, 0.1266 * M_PI}}};
  for (const auto& [name, theta0] : starts) {
    AnsatzEnergy e(triangle_ansatz(), h3, Backend{}, 1);
    AqngdConfig cfg;
    cfg.max_iters = 25;
    const auto t = aqngd_run(make_aqngd_problem(e), theta0, cfg);
    const int hit = first_reaching(t, triangle_ansatz(), h3, -3 + 1e-3);
    ok = ok && hit >= 0 && hit <= 25;
    detail += fmt("%s reaches |E+3|<1e-3 at iteration %d; ", name, hit);
  }
  const auto h12 = heisenberg_from_lattice(build_star());
  int good = 0;
  std::string energies;
  for (Seed s = 0; s < 10; ++s) {
    AnsatzEnergy e(star_ansatz(), h12, Backend{}, s);
    AqngdConfig cfg;
    cfg.max_iters = 100;
    const auto t = aqngd_run(make_aqngd_problem(e), uniform_params(12, derive_seed(40, {s})), cfg);
    good += t.final_energy() < -17.5;
    energies += fmt("%.3f ", t.final_energy());
  }
  ok = ok && good >= 8 && good == 10;  // exact backend and fixed seeds: rate pinned at 10/10
  return {ok, detail + fmt("star %d/10 below -17.5 [%s]", good, energies.c_str())};
}

Outcome c5() {
  const auto spec = star_ansatz();
  const auto h = heisenberg_from_lattice(build_star());
  Backend shots{BackendKind::Shots, 2000, {}, 1};
  int wins = 0;
  std::string rows;
  for (Seed s = 0; s < 10; ++s) {
    const auto theta0 = uniform_params(12, derive_seed(50, {s}));
    AnsatzEnergy ea(spec, h, shots, derive_seed(51, {s}));
    AqngdConfig cfg;
    cfg.max_iters = 40;
    cfg.patience = cfg.max_iters;  // spend the whole budget
    const auto ta = aqngd_run(make_aqngd_problem(ea), theta0, cfg);
    const std::uint64_t budget = ta.records.back().executions;

    AnsatzEnergy es(spec, h, shots, derive_seed(52, {s}));
    SpsaConfig sc;
    sc.iters = static_cast<int>((budget - 1) / 2);
    const auto ts = spsa_run([&](std::span<const double> x) { return es(x); }, theta0, sc, derive_seed(53, {s}));

    const int ia = first_reaching(ta, spec, h, -17);
    const int is = first_reaching(ts, spec, h, -17);
    const bool win = ia >= 0 && (is < 0 || ia < is);
    wins += win;
    rows += fmt("(%d,%d) ", ia, is);
  }
  return {wins >= 8, fmt("AQNGD first in %d/10 seeds; iterations to -17 (aqngd,spsa) %s", wins, rows.c_str())};
}

Outcome c6() {
  const auto tri = build_triangle();
  const auto h = heisenberg_from_lattice(tri);
  const auto groups = qwc_group(h);
  const auto spec = triangle_ansatz();
  const auto noise = NoiseModel::with_readout_flip(3, 0.05);
  const ShotExecutor exec = [&](const Circuit& c, const std::string& basis, std::uint64_t n, Seed sd) {
    return run_circuit(c, basis, n, noise, sd);
  };
  const std::uint64_t shots = 100000;
  double worst_tv = 0;
  const auto psi = prepare(spec, std::vector<double>{0.2427 * M_PI, 0.2510 * M_PI, 0.1233 * M_PI});
  for (const std::string basis : {"ZZZ", "XXX", "YYY"}) {
    const auto clean = sample(psi, basis, shots, 61);
    const auto dirty = apply_readout_noise(clean, noise, 62);
    const auto truth = empirical_distribution(clean);
    for (const auto& r : {response_from_noise(noise, 3), calibrate(exec, 3, singleton_partitions(3), shots, 63)})
      worst_tv = std::max(worst_tv, total_variation(apply_rem(dirty, r), truth));
  }
  const double bound = 5 / std::sqrt(static_cast<double>(shots));

  const Circuit bound_circuit = kagome::bind(spec.circuit, triangle_exact_params());
  const double ground = -3.0;
  int violations = 0;
  for (Seed s = 0; s < 100; ++s) {
    const Backend b{BackendKind::Noisy, 1000, noise, 1};
    const auto tables = measure_groups(bound_circuit, groups, b, derive_seed(64, {s}));
    const auto r = calibrate(exec, 3, singleton_partitions(3), 1000, derive_seed(65, {s}));
    const auto e = estimate_energy_rem(tables, h, groups, r, true);
    violations += e.value < ground - 5 * e.std_error;
  }
  return {worst_tv < bound && violations == 0,
          fmt("max TV %.5f (bound %.5f); positivity violations %d/100", worst_tv, bound, violations)};
}

Outcome c7() {
  const auto h = heisenberg_from_lattice(build_triangle());
  const auto groups = qwc_group(h);
  const Circuit bound = kagome::bind(triangle_ansatz().circuit, triangle_exact_params());
  const double noiseless = -3.0;
  const Backend b{BackendKind::Noisy, 4000, NoiseModel::with_readout_flip(3, 0.0, 0.0, 0.01), 1};
  int hits = 0;
  for (Seed s = 0; s < 100; ++s) {
    const auto series = zne_run(bound, make_fold_pipeline(h, groups, b, derive_seed(70, {s})));
    const auto bpr = bpr_extrapolate(series, 2);
    hits += std::abs(polyfit_extrapolate(series, 2) - noiseless) <= 3 * bpr.std;
  }
  ZneSeries demo;
  demo.points = {{1, -2.5, 0.01}, {3, -1.5, 0.01}, {5, -1.0, 0.01}};
  const double under = polyfit_extrapolate(demo, 2);
  return {hits >= 90 && under < noiseless,
          fmt("%d/100 within 3 BPR std; synthetic undershoot E0 = %.4f < %.1f", hits, under, noiseless)};
}

Outcome c8() {
  const auto spec = triangle_ansatz();
  AnsatzEnergy e(spec, heisenberg_from_lattice(build_triangle()), Backend{BackendKind::Shots, 10000, {}, 1}, 80);
  const std::vector<double> theta{0.2427 * M_PI, 0.2510 * M_PI, 0.1233 * M_PI};
  std::vector<double> values;
  double se = 0;
  for (int k = 0; k < 1000; ++k) {
    const auto est = e.estimate(theta);
    values.push_back(est.value);
    se += est.std_error;
  }
  se /= 1000;
  double mean = 0;
  for (double v : values) mean += v;
  mean /= 1000;
  double var = 0;
  for (double v : values) var += (v - mean) * (v - mean);
  const double sd = std::sqrt(var / 999);
  return {std::abs(se / sd - 1) < 0.1, fmt("mean stderr %.5f, empirical sd %.5f, ratio %.4f", se, sd, se / sd)};
}

Outcome c9() {
  const auto star = build_star();
  const auto spec = star_ansatz();
  const auto grid = momentum_grid(101);
  const auto params = star_exact_params();
  const auto exact_map = structure_factor(correlation_table(prepare(spec, params)), star, grid);
  const Circuit bound = kagome::bind(spec.circuit, params);
  const auto groups = qwc_group(heisenberg_from_lattice(star));
  const NoiseModel noise = NoiseModel::with_readout_flip(12, 0.02, 0.001, 0.01);
  const Backend b{BackendKind::Noisy, 10000, noise, 1};
  const ShotExecutor exec = [&](const Circuit& c, const std::string& basis, std::uint64_t n, Seed sd) {
    return run_circuit(c, basis, n, noise, sd);
  };
  double worst_pearson = 1;
  int better = 0;
  std::string rows;
  for (Seed s = 0; s < 10; ++s) {
    const auto tables = measure_groups(bound, groups, b, derive_seed(90, {s}));
    const auto raw = structure_factor(correlation_table(tables), star, grid);
    const auto r = calibrate(exec, 12, singleton_partitions(12), 10000, derive_seed(91, {s}));
    std::vector<BasisDistribution> corrected;
    for (const auto& t : tables) corrected.push_back({t.basis, apply_rem(t, r), t.shots});
    const auto rem = structure_factor(correlation_table(corrected, 12), star, grid);
    const auto sr = similarity(raw, exact_map), sm = similarity(rem, exact_map);
    worst_pearson = std::min(worst_pearson, sr.pearson);
    better += sm.mse < sr.mse;
    if (s < 3) rows += fmt("mse %.4f -> %.4f; ", sr.mse, sm.mse);
  }
  return {worst_pearson >= 0.99 && better >= 9,
          fmt("min pearson %.5f; REM lowers MSE in %d/10 seeds (%s)", worst_pearson, better, rows.c_str())};
}

Outcome c10() {
  const auto t = correlation_table(prepare(triangle_ansatz(), triangle_exact_params()));
  const double a = t.at(0, 1).value, b = t.at(1, 2).value, c = t.at(2, 0).value;
  return {std::abs(a) < 1e-12 && std::abs(b + 3) < 1e-12 && std::abs(c) < 1e-12,
          fmt("(0,1)=%.3g (1,2)=%.15g (2,0)=%.3g", a, b, c)};
}

}  // namespace

// Optional arguments pick criteria by number, e.g. `acceptance 3 9`.
int main(int argc, char** argv) {
  const std::vector<std::function<Outcome()>> criteria{c1, c2, c3, c4, c5, c6, c7, c8, c9, c10};
  int failed = 0;
  std::vector<std::size_t> pick;
  for (int a = 1; a < argc; ++a) pick.push_back(std::stoul(argv[a]) - 1);
  if (pick.empty())
    for (std::size_t k = 0; k < criteria.size(); ++k) pick.push_back(k);
  for (std::size_t k : pick) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[k]();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    failed += !o.pass;
    std::printf("criterion %zu: %s %s [%.1fs]\n", k + 1, o.pass ? "PASS" : "FAIL", o.detail.c_str(), seconds_since(t0));
    std::fflush(stdout);
  }
  return failed ? 1 : 0;
}
