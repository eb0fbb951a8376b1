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

#include "kagome/cli.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <numbers>
#include <sstream>

#include <CLI11.hpp>

#include "kagome/hamiltonian.hpp"
#include "kagome/mitigation.hpp"
#include "kagome/observables.hpp"
#include "kagome/optim.hpp"

namespace kagome {

namespace {

constexpr double kPi = std::numbers::pi;

template <class F>
std::string render(F&& f) {
  std::ostringstream os;
  os << std::setprecision(17);
  f(os);
  return os.str();
}

std::string params_csv(std::span<const double> p) {
  return render([&](std::ostream& os) {
    os << "index,theta,theta_over_pi\n";
    for (std::size_t i = 0; i < p.size(); ++i) os << i << ',' << p[i] << ',' << p[i] / kPi << '\n';
  });
}

struct Summary {
  std::vector<std::pair<std::string, std::string>> rows;
  template <class T>
  void add(const std::string& key, const T& value) {
    std::ostringstream os;
    os << std::setprecision(17) << value;
    rows.emplace_back(key, os.str());
  }
  std::string str() const {
    std::string s = "key,value\n";
    for (const auto& [k, v] : rows) s += k + "," + v + "\n";
    return s;
  }
};

std::vector<double> random_params(int d, Seed seed) {
  Rng rng(derive_seed(seed, {0x696e6974ULL}));
  std::vector<double> p(static_cast<std::size_t>(d));
  for (double& x : p) x = (2.0 * uniform01(rng) - 1.0) * kPi;
  return p;
}

std::vector<MomentumPoint> resolve_grid(const ExperimentConfig& cfg) {
  return momentum_grid(cfg.grid_resolution, cfg.grid_extent);
}

ResponseMatrix calibrate_backend(const Backend& backend, int n, std::uint64_t shots, Seed seed) {
  const NoiseModel noise = backend.effective_noise();
  const std::uint64_t spt = backend.shots_per_trajectory;
  const ShotExecutor exec = [&](const Circuit& c, const std::string& basis, std::uint64_t s, Seed sd) {
    return run_circuit(c, basis, s, noise, sd, spt);
  };
  return calibrate(exec, n, singleton_partitions(n), shots, seed);
}

}  // namespace

void ExperimentConfig::validate() const {
  auto fail = [](const std::string& m) { throw ConfigError(m); };
  if (fragment != "triangle" && fragment != "star" && fragment != "file") fail("fragment must be triangle, star or file");
  if (fragment == "file" && fragment_file.empty()) fail("fragment = file needs fragment_file");
  if (init != "random" && init != "exact" && init != "explicit" && init != "kyoto" && init != "oslo" &&
      init != "reported")
    fail("init must be random, exact, explicit, kyoto, oslo or reported");
  try {
    parse_backend(backend);
  } catch (const std::invalid_argument& e) {
    fail(e.what());
  }
  if (shots < 2) fail("shots must be >= 2");
  if (shots_per_trajectory < 1) fail("shots_per_trajectory must be >= 1");
  for (double p : {p1, p2, readout_flip})
    if (!(p >= 0.0 && p <= 1.0)) fail("noise probabilities must lie in [0, 1]");
  if (optimizer != "aqngd" && optimizer != "spsa") fail("optimizer must be aqngd or spsa");
  try {
    AqngdConfig{alpha, beta, k_max, pinv_tol, converge_tol, max_iters, patience}.validate();
    SpsaConfig{spsa_a, spsa_c, spsa_A, 0.602, 0.101, spsa_iters}.validate();
  } catch (const std::invalid_argument& e) {
    fail(e.what());
  }
  if (calibration_shots < 100) fail("calibration_shots must be >= 100");
  if (zne_folds.size() < 3) fail("zne_folds needs at least 3 fold factors");
  for (std::size_t i = 0; i < zne_folds.size(); ++i)
    if (zne_folds[i] < 1 || zne_folds[i] % 2 == 0 || (i && zne_folds[i] <= zne_folds[i - 1]))
      fail("zne_folds must be odd, positive and increasing");
  if (!(bpr_prior_sigma > 0.0)) fail("bpr_prior_sigma must be positive");
  if (grid_resolution < 2) fail("grid_resolution must be >= 2");
  if (!(grid_extent > 0.0)) fail("grid_extent must be positive");
  if (sq_reference != "ansatz" && sq_reference != "ground") fail("sq_reference must be ansatz or ground");
  if (draws < 1) fail("draws must be >= 1");
  if (out.empty()) fail("out must be a directory path");
}

void bind_config(CLI::App& app, ExperimentConfig& cfg) {
  app.add_option("--fragment", cfg.fragment, "triangle | star | file")->capture_default_str();
  app.add_option("--fragment_file", cfg.fragment_file, "Fragment description for fragment = file");
  app.add_option("--init", cfg.init, "random | exact | explicit | kyoto | oslo | reported")->capture_default_str();
  app.add_option("--params_pi", cfg.params_pi, "Explicit parameters in units of pi")->delimiter(',');
  app.add_option("--backend", cfg.backend, "exact | shots | noisy")->capture_default_str();
  app.add_option("--shots", cfg.shots, "Shots per measurement group")->capture_default_str();
  app.add_option("--p1", cfg.p1, "Single-qubit depolarizing probability")->capture_default_str();
  app.add_option("--p2", cfg.p2, "Two-qubit depolarizing probability")->capture_default_str();
  app.add_option("--readout_flip", cfg.readout_flip, "Symmetric readout flip probability")->capture_default_str();
  app.add_option("--shots_per_trajectory", cfg.shots_per_trajectory, "Shots drawn per noise trajectory")
      ->capture_default_str();
  app.add_option("--optimizer", cfg.optimizer, "aqngd | spsa")->capture_default_str();
  app.add_option("--alpha", cfg.alpha)->capture_default_str();
  app.add_option("--beta", cfg.beta)->capture_default_str();
  app.add_option("--k_max", cfg.k_max)->capture_default_str();
  app.add_option("--pinv_tol", cfg.pinv_tol)->capture_default_str();
  app.add_option("--converge_tol", cfg.converge_tol)->capture_default_str();
  app.add_option("--max_iters", cfg.max_iters)->capture_default_str();
  app.add_option("--patience", cfg.patience, "Stalled iterations before stopping")->capture_default_str();
  app.add_option("--measured_metric", cfg.measured_metric, "Recompute the metric every iteration")
      ->capture_default_str();
  app.add_option("--spsa_a", cfg.spsa_a)->capture_default_str();
  app.add_option("--spsa_c", cfg.spsa_c)->capture_default_str();
  app.add_option("--spsa_A", cfg.spsa_A)->capture_default_str();
  app.add_option("--spsa_iters", cfg.spsa_iters)->capture_default_str();
  app.add_option("--rem", cfg.rem, "Readout mitigation during vqe / structure-factor")->capture_default_str();
  app.add_option("--rem_positive", cfg.rem_positive)->capture_default_str();
  app.add_option("--calibration_shots", cfg.calibration_shots)->capture_default_str();
  app.add_option("--zne_folds", cfg.zne_folds)->delimiter(',')->capture_default_str();
  app.add_option("--bpr_prior_sigma", cfg.bpr_prior_sigma)->capture_default_str();
  app.add_option("--grid_resolution", cfg.grid_resolution)->capture_default_str();
  app.add_option("--grid_extent", cfg.grid_extent, "Grid half-width in reciprocal lengths")->capture_default_str();
  app.add_option("--sq_reference", cfg.sq_reference, "ansatz | ground")->capture_default_str();
  app.add_option("--draws", cfg.draws, "Random parameter draws for metric")->capture_default_str();
  app.add_option("--out", cfg.out, "Output directory")->capture_default_str();
  app.add_option("--seed", cfg.seed, "Root seed")->capture_default_str();
}

LatticeFragment resolve_fragment(const ExperimentConfig& cfg) {
  if (cfg.fragment == "triangle") return build_triangle();
  if (cfg.fragment == "star") return build_star();
  try {
    return load_fragment(cfg.fragment_file);
  } catch (const std::exception& e) {
    throw ConfigError(std::string("fragment_file: ") + e.what());
  }
}

AnsatzSpec resolve_ansatz(const LatticeFragment& fragment) {
  if (fragment.num_sites() == 3) return triangle_ansatz();
  if (fragment.num_sites() == 12) return star_ansatz();
  throw ConfigError("no ansatz for a fragment with " + std::to_string(fragment.num_sites()) + " sites");
}

std::vector<double> resolve_params(const ExperimentConfig& cfg, const AnsatzSpec& spec) {
  const int d = spec.num_params();
  std::vector<double> p;
  auto in_pi = [](std::initializer_list<double> v) {
    std::vector<double> out;
    for (double x : v) out.push_back(x * kPi);
    return out;
  };
  if (cfg.init == "random") {
    p = random_params(d, cfg.seed);
  } else if (cfg.init == "explicit") {
    for (double x : cfg.params_pi) p.push_back(x * kPi);
  } else if (cfg.init == "exact") {
    p = d == 3 ? triangle_exact_params() : star_exact_params();
  } else if (cfg.init == "kyoto" && d == 3) {
    p = in_pi({0.2427, 0.2510, 0.1233});
  } else if (cfg.init == "oslo" && d == 3) {
    p = in_pi({0.2914, 0.2812, 0.1266});
  } else if (cfg.init == "reported" && d == 12) {
    p = star_reported_params();
  } else {
    throw ConfigError("init = " + cfg.init + " is not available for this ansatz");
  }
  if (static_cast<int>(p.size()) != d)
    throw ConfigError("expected " + std::to_string(d) + " parameters, got " + std::to_string(p.size()));
  return p;
}

Backend resolve_backend(const ExperimentConfig& cfg, int num_qubits) {
  Backend b;
  b.kind = parse_backend(cfg.backend);
  b.shots = cfg.shots;
  b.shots_per_trajectory = cfg.shots_per_trajectory;
  b.noise = NoiseModel::with_readout_flip(num_qubits, cfg.readout_flip, cfg.p1, cfg.p2);
  return b;
}

CommandResult cmd_ed(const ExperimentConfig& cfg) {
  cfg.validate();
  const LatticeFragment fragment = resolve_fragment(cfg);
  const auto grid = resolve_grid(cfg);
  const Spectrum spectrum = exact_spectrum(fragment);
  const CorrelationTable corr = correlation_table(spectrum.ground_states);
  const StructureFactorMap sq = structure_factor(corr, fragment, grid);

  CommandResult r;
  r.files.emplace_back("spectrum.csv", render([&](std::ostream& os) { write_spectrum_csv(os, spectrum); }));
  r.files.emplace_back("correlations.csv", render([&](std::ostream& os) { write_correlations_csv(os, corr); }));
  r.files.emplace_back("structure_factor.csv", render([&](std::ostream& os) { write_structure_factor_csv(os, sq); }));
  Summary s;
  s.add("fragment", fragment.name());
  s.add("sites", fragment.num_sites());
  s.add("ground_energy", spectrum.ground_energy);
  s.add("degeneracy", spectrum.ground_states.size());
  s.add("seed", cfg.seed);
  r.files.emplace_back("summary.csv", s.str());
  return r;
}

CommandResult cmd_vqe(const ExperimentConfig& cfg) {
  cfg.validate();
  const LatticeFragment fragment = resolve_fragment(cfg);
  const AnsatzSpec spec = resolve_ansatz(fragment);
  const std::vector<double> theta0 = resolve_params(cfg, spec);
  const Backend backend = resolve_backend(cfg, fragment.num_sites());
  AnsatzEnergy energy(spec, heisenberg_from_lattice(fragment), backend, derive_seed(cfg.seed, {1}));
  if (cfg.rem && backend.kind != BackendKind::Exact)
    energy.set_mitigation(calibrate_backend(backend, fragment.num_sites(), cfg.calibration_shots,
                                            derive_seed(cfg.seed, {2})),
                          cfg.rem_positive);

  OptTrace trace;
  if (cfg.optimizer == "aqngd") {
    const AqngdConfig oc{cfg.alpha, cfg.beta, cfg.k_max, cfg.pinv_tol, cfg.converge_tol, cfg.max_iters, cfg.patience};
    trace = aqngd_run(make_aqngd_problem(energy, cfg.measured_metric), theta0, oc);
  } else {
    const SpsaConfig sc{cfg.spsa_a, cfg.spsa_c, cfg.spsa_A, 0.602, 0.101, cfg.spsa_iters};
    trace = spsa_run([&energy](std::span<const double> x) { return energy(x); }, theta0, sc,
                     derive_seed(cfg.seed, {3}));
  }

  const PauliSum h = heisenberg_from_lattice(fragment);
  const Spectrum spectrum = exact_spectrum(fragment);
  const StateVector final_state = prepare(spec, trace.final_params());

  CommandResult r;
  r.files.emplace_back("trace.csv", render([&](std::ostream& os) { write_trace_csv(os, trace); }));
  r.files.emplace_back("trace_detail.csv", render([&](std::ostream& os) { write_trace_detail_csv(os, trace); }));
  r.files.emplace_back("final_params.csv", params_csv(trace.final_params()));
  Summary s;
  s.add("optimizer", cfg.optimizer);
  s.add("backend", backend_name(backend.kind));
  s.add("iterations", trace.records.size());
  s.add("initial_energy", trace.initial_energy);
  s.add("final_energy", trace.final_energy());
  s.add("final_energy_exact", expectation_exact(final_state, h));
  s.add("ground_energy", spectrum.ground_energy);
  if (backend.kind == BackendKind::Exact) s.add("fidelity", fidelity(final_state, spectrum.ground_states));
  s.add("energy_evaluations", energy.calls());
  s.add("converged", trace.converged ? 1 : 0);
  s.add("aborted", trace.aborted ? 1 : 0);
  s.add("seed", cfg.seed);
  r.files.emplace_back("summary.csv", s.str());
  if (trace.aborted) {
    r.exit_code = kExitNumeric;
    r.message = "energy became non-finite; trace flagged as aborted";
  }
  return r;
}

CommandResult cmd_mitigate(const ExperimentConfig& cfg) {
  cfg.validate();
  const LatticeFragment fragment = resolve_fragment(cfg);
  const AnsatzSpec spec = resolve_ansatz(fragment);
  const std::vector<double> params = resolve_params(cfg, spec);
  const Backend backend = resolve_backend(cfg, fragment.num_sites());
  if (backend.kind == BackendKind::Exact) throw ConfigError("mitigate needs backend = shots or noisy");
  const int n = fragment.num_sites();
  const PauliSum h = heisenberg_from_lattice(fragment);
  const QwcGroups groups = qwc_group(h);
  const Circuit bound = kagome::bind(spec.circuit, params);

  const std::vector<ShotTable> tables = measure_groups(bound, groups, backend, derive_seed(cfg.seed, {1}));
  const EnergyEstimate raw = estimate_energy(tables, h, groups);
  const ResponseMatrix response = calibrate_backend(backend, n, cfg.calibration_shots, derive_seed(cfg.seed, {2}));
  const EnergyEstimate rem = estimate_energy_rem(tables, h, groups, response, false);
  const EnergyEstimate remp = estimate_energy_rem(tables, h, groups, response, true);

  const ZneSeries series = zne_run(bound, make_fold_pipeline(h, groups, backend, derive_seed(cfg.seed, {3})),
                                   cfg.zne_folds);
  const ZneSeries series_rem =
      zne_run(bound, make_fold_pipeline(h, groups, backend, derive_seed(cfg.seed, {4}), {&response, false}),
              cfg.zne_folds);
  const double exact = expectation_exact(prepare(spec, params), h);
  const double ground = exact_spectrum(fragment).ground_energy;

  const BprResult bpr1 = bpr_extrapolate(series, 1, cfg.bpr_prior_sigma);
  const BprResult bpr2 = bpr_extrapolate(series, 2, cfg.bpr_prior_sigma);
  const BprResult bpr2_rem = bpr_extrapolate(series_rem, 2, cfg.bpr_prior_sigma);
  const double poly1 = polyfit_extrapolate(series, 1);
  const double poly2 = polyfit_extrapolate(series, 2);
  const std::vector<Extrapolation> extrapolations{
      make_extrapolation("ZNE deg1 poly", poly1, bpr1.std, ground),
      make_extrapolation("ZNE deg1 BPR", bpr1.mean, bpr1.std, ground),
      make_extrapolation("ZNE deg2 poly", poly2, bpr2.std, ground),
      make_extrapolation("ZNE deg2 BPR", bpr2.mean, bpr2.std, ground),
      make_extrapolation("REM+ZNE deg2 BPR", bpr2_rem.mean, bpr2_rem.std, ground),
  };

  CommandResult r;
  r.files.emplace_back("mitigation.csv", render([&](std::ostream& os) {
                         os << "method,value,stderr\n";
                         os << "Unmitigated," << raw.value << ',' << raw.std_error << '\n';
                         os << "REM," << rem.value << ',' << rem.std_error << '\n';
                         os << "REM+Positivity," << remp.value << ',' << remp.std_error << '\n';
                         os << "ZNE deg1," << poly1 << ',' << bpr1.std << '\n';
                         os << "ZNE deg2," << bpr2.mean << ',' << bpr2.std << '\n';
                         os << "Exact," << exact << ",0\n";
                         os << "Ground," << ground << ",0\n";
                       }));
  r.files.emplace_back("zne.csv", render([&](std::ostream& os) { write_zne_csv(os, series); }));
  r.files.emplace_back("zne_rem.csv", render([&](std::ostream& os) { write_zne_csv(os, series_rem); }));
  r.files.emplace_back("extrapolations.csv",
                       render([&](std::ostream& os) { write_extrapolations_csv(os, extrapolations); }));
  Summary s;
  for (const auto& e : extrapolations) s.add("below_ground " + e.method, e.below_ground ? 1 : 0);
  s.add("stderr_floored", (bpr1.floored || bpr2.floored || bpr2_rem.floored) ? 1 : 0);
  s.add("singular_response", apply_rem(tables.front(), response).singular_factor ? 1 : 0);
  s.add("seed", cfg.seed);
  r.files.emplace_back("summary.csv", s.str());
  r.files.emplace_back("params.csv", params_csv(params));
  return r;
}

CommandResult cmd_metric(const ExperimentConfig& cfg) {
  cfg.validate();
  const LatticeFragment fragment = resolve_fragment(cfg);
  const AnsatzSpec spec = resolve_ansatz(fragment);
  double worst = 0.0;
  std::ostringstream rows;
  rows << std::setprecision(17) << "draw,max_deviation\n";
  MetricMatrix first;
  for (int k = 0; k < cfg.draws; ++k) {
    const auto p = random_params(spec.num_params(), derive_seed(cfg.seed, {static_cast<std::uint64_t>(k)}));
    const MetricMatrix g = fubini_study_full_numeric(spec, p);
    if (k == 0) first = g;
    const double dev = metric_deviation_from_quarter_identity(g);
    worst = std::max(worst, dev);
    rows << k << ',' << dev << '\n';
  }
  CommandResult r;
  r.files.emplace_back("metric_deviation.csv", rows.str());
  r.files.emplace_back("metric_first_draw.csv", render([&](std::ostream& os) { write_metric_csv(os, first); }));
  Summary s;
  s.add("draws", cfg.draws);
  s.add("max_deviation", worst);
  s.add("seed", cfg.seed);
  r.files.emplace_back("summary.csv", s.str());
  if (!std::isfinite(worst)) {
    r.exit_code = kExitNumeric;
    r.message = "metric is not finite";
  }
  return r;
}

CommandResult cmd_structure_factor(const ExperimentConfig& cfg) {
  cfg.validate();
  const LatticeFragment fragment = resolve_fragment(cfg);
  const AnsatzSpec spec = resolve_ansatz(fragment);
  const std::vector<double> params = resolve_params(cfg, spec);
  const Backend backend = resolve_backend(cfg, fragment.num_sites());
  const auto grid = resolve_grid(cfg);
  const int n = fragment.num_sites();
  const StateVector ideal = prepare(spec, params);

  CorrelationTable reference;
  if (cfg.sq_reference == "ansatz") {
    reference = correlation_table(ideal);
  } else {
    reference = correlation_table(exact_spectrum(fragment).ground_states);
  }
  const StructureFactorMap exact_map = structure_factor(reference, fragment, grid);

  CorrelationTable measured = correlation_table(ideal);
  std::vector<std::pair<std::string, StructureFactorMap>> maps;
  if (backend.kind != BackendKind::Exact) {
    const QwcGroups groups = qwc_group(heisenberg_from_lattice(fragment));
    const auto tables = measure_groups(kagome::bind(spec.circuit, params), groups, backend, derive_seed(cfg.seed, {1}));
    measured = correlation_table(tables);
    maps.emplace_back("measured", structure_factor(measured, fragment, grid));
    if (cfg.rem) {
      const ResponseMatrix response = calibrate_backend(backend, n, cfg.calibration_shots, derive_seed(cfg.seed, {2}));
      std::vector<BasisDistribution> corrected;
      for (const auto& t : tables) {
        QuasiDistribution q = apply_rem(t, response);
        if (cfg.rem_positive) q = project_positive(q);
        corrected.push_back({t.basis, std::move(q), t.shots});
      }
      maps.emplace_back("rem", structure_factor(correlation_table(corrected, n), fragment, grid));
    }
  } else {
    maps.emplace_back("measured", structure_factor(measured, fragment, grid));
  }

  CommandResult r;
  r.files.emplace_back("structure_factor_exact.csv",
                       render([&](std::ostream& os) { write_structure_factor_csv(os, exact_map); }));
  r.files.emplace_back("correlations.csv", render([&](std::ostream& os) { write_correlations_csv(os, measured); }));
  std::ostringstream sim;
  sim << std::setprecision(17) << "map,pearson,mse\n";
  for (const auto& [name, map] : maps) {
    r.files.emplace_back("structure_factor_" + name + ".csv",
                         render([&](std::ostream& os) { write_structure_factor_csv(os, map); }));
    const Similarity sm = similarity(map, exact_map);
    sim << name << ',' << sm.pearson << ',' << sm.mse << '\n';
  }
  r.files.emplace_back("similarity.csv", sim.str());
  Summary s;
  s.add("backend", backend_name(backend.kind));
  s.add("reference", cfg.sq_reference);
  s.add("seed", cfg.seed);
  r.files.emplace_back("summary.csv", s.str());
  return r;
}

int run_cli(int argc, const char* const* argv) {
  CLI::App app{"Kagome Heisenberg VQE experiments"};
  ExperimentConfig cfg;
  app.set_config("--config", "", "INI file with experiment keys");
  bind_config(app, cfg);
  app.require_subcommand(1);
  using Command = CommandResult (*)(const ExperimentConfig&);
  std::vector<std::pair<CLI::App*, Command>> commands{
      {app.add_subcommand("ed", "Exact spectrum, correlations and S(q)"), cmd_ed},
      {app.add_subcommand("vqe", "Run the optimizer"), cmd_vqe},
      {app.add_subcommand("mitigate", "Readout mitigation and zero-noise extrapolation"), cmd_mitigate},
      {app.add_subcommand("metric", "Fubini-Study metric at random parameters"), cmd_metric},
      {app.add_subcommand("structure-factor", "Measured and exact S(q)"), cmd_structure_factor},
  };
  for (auto& [sub, fn] : commands) sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  }

  Command fn = nullptr;
  for (auto& [sub, f] : commands)
    if (sub->parsed()) fn = f;

  CommandResult result;
  try {
    result = fn(cfg);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "numeric failure: " << e.what() << '\n';
    return kExitNumeric;
  }

  namespace fs = std::filesystem;
  std::error_code ec;
  fs::create_directories(cfg.out, ec);
  if (ec) {
    std::cerr << "config error: cannot create " << cfg.out << ": " << ec.message() << '\n';
    return kExitConfig;
  }
  result.files.emplace_back("resolved.ini", app.config_to_str(true, false));
  for (const auto& [name, contents] : result.files) {
    std::ofstream f(fs::path(cfg.out) / name, std::ios::binary);
    f << contents;
    if (!f) {
      std::cerr << "error: failed writing " << name << '\n';
      return kExitNumeric;
    }
  }
  if (!result.message.empty()) std::cerr << result.message << '\n';
  return result.exit_code;
}

}  // namespace kagome
