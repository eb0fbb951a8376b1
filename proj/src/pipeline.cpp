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

#include "kagome/pipeline.hpp"

#include <stdexcept>

namespace kagome {

BackendKind parse_backend(const std::string& name) {
  if (name == "exact") return BackendKind::Exact;
  if (name == "shots") return BackendKind::Shots;
  if (name == "noisy") return BackendKind::Noisy;
  throw std::invalid_argument("unknown backend '" + name + "' (expected exact, shots or noisy)");
}

std::string backend_name(BackendKind kind) {
  switch (kind) {
    case BackendKind::Exact:
      return "exact";
    case BackendKind::Shots:
      return "shots";
    case BackendKind::Noisy:
      return "noisy";
  }
  return "?";
}

NoiseModel Backend::effective_noise() const { return kind == BackendKind::Noisy ? noise : NoiseModel::ideal(); }

std::vector<ShotTable> measure_groups(const Circuit& bound, const QwcGroups& groups, const Backend& backend, Seed seed) {
  std::vector<ShotTable> tables;
  const NoiseModel noise = backend.effective_noise();
  if (!noise.has_gate_noise()) {
    // One evolution serves every basis.
    const StateVector psi = evolve(StateVector(bound.num_qubits()), bound);
    for (std::size_t g = 0; g < groups.groups.size(); ++g) {
      const Seed gs = derive_seed(seed, {g});
      tables.push_back(apply_readout_noise(sample(psi, groups.groups[g].measurement_basis(), backend.shots, gs), noise,
                                           derive_seed(gs, {3})));
    }
    return tables;
  }
  for (std::size_t g = 0; g < groups.groups.size(); ++g)
    tables.push_back(run_circuit(bound, groups.groups[g].measurement_basis(), backend.shots, noise,
                                 derive_seed(seed, {g}), backend.shots_per_trajectory));
  return tables;
}

EnergyEstimate estimate_circuit_energy(const Circuit& bound, const PauliSum& h, const QwcGroups& groups,
                                       const Backend& backend, Seed seed, const EnergyOptions& options) {
  if (backend.kind == BackendKind::Exact) {
    EnergyEstimate e;
    e.value = expectation_exact(evolve(StateVector(bound.num_qubits()), bound), h);
    return e;
  }
  const std::vector<ShotTable> tables = measure_groups(bound, groups, backend, seed);
  if (options.rem) return estimate_energy_rem(tables, h, groups, *options.rem, options.rem_positive);
  return estimate_energy(tables, h, groups);
}

AnsatzEnergy::AnsatzEnergy(AnsatzSpec spec, PauliSum h, Backend backend, Seed seed)
    : spec_(std::move(spec)), h_(std::move(h)), groups_(qwc_group(h_)), backend_(std::move(backend)), seed_(seed) {
  if (h_.num_qubits() != spec_.circuit.num_qubits())
    throw std::invalid_argument("AnsatzEnergy: Hamiltonian and ansatz qubit counts differ");
  backend_.effective_noise().validate(h_.num_qubits());
  if (backend_.kind != BackendKind::Exact && backend_.shots < 2)
    throw std::invalid_argument("AnsatzEnergy: sampled backends need at least 2 shots per group");
}

EnergyEstimate AnsatzEnergy::estimate(std::span<const double> params) {
  const Seed s = derive_seed(seed_, {calls_});
  ++calls_;
  const EnergyOptions opts{response_ ? &*response_ : nullptr, rem_positive_};
  return estimate_circuit_energy(kagome::bind(spec_.circuit, params), h_, groups_, backend_, s, opts);
}

void AnsatzEnergy::set_mitigation(ResponseMatrix response, bool positive) {
  response.validate();
  if (response.num_qubits() != h_.num_qubits()) throw std::invalid_argument("set_mitigation: qubit count mismatch");
  response_ = std::move(response);
  rem_positive_ = positive;
}

AqngdProblem make_aqngd_problem(AnsatzEnergy& energy, bool measured_metric) {
  AqngdProblem p;
  p.energy = [&energy](std::span<const double> x) { return energy(x); };
  p.gradient = [&energy](std::span<const double> x) {
    return parameter_shift_gradient(energy.spec(), x, [&energy](std::span<const double> y) { return energy(y); });
  };
  const int d = energy.spec().num_params();
  if (measured_metric) {
    p.metric = [&energy](std::span<const double> x) { return fubini_study_full_numeric(energy.spec(), x); };
  } else {
    p.fixed_metric = 0.25 * Eigen::MatrixXd::Identity(d, d);
  }
  p.gradient_cost = 2 * d;
  return p;
}

FoldPipeline make_fold_pipeline(const PauliSum& h, const QwcGroups& groups, const Backend& backend, Seed seed,
                                const EnergyOptions& options) {
  return [h, groups, backend, seed, options](const Circuit& folded, int fold) {
    return estimate_circuit_energy(folded, h, groups, backend, derive_seed(seed, {static_cast<std::uint64_t>(fold)}),
                                   options);
  };
}

}  // namespace kagome
