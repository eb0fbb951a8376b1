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
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "kagome/ansatz.hpp"
#include "kagome/hamiltonian.hpp"
#include "kagome/mitigation.hpp"
#include "kagome/optim.hpp"
#include "kagome/simulator.hpp"

namespace kagome {

enum class BackendKind { Exact, Shots, Noisy };

BackendKind parse_backend(const std::string& name);  // exact | shots | noisy
std::string backend_name(BackendKind kind);

struct Backend {
  BackendKind kind = BackendKind::Exact;
  std::uint64_t shots = 10000;  // per measurement group
  NoiseModel noise;             // Noisy only
  std::uint64_t shots_per_trajectory = 1;

  // Noise seen by the sampler: ideal unless kind is Noisy.
  NoiseModel effective_noise() const;
};

// One shot table per group basis, group g seeded with derive_seed(seed, {g}).
std::vector<ShotTable> measure_groups(const Circuit& bound, const QwcGroups& groups, const Backend& backend, Seed seed);

// Exact: statevector expectation, zero stderr. Otherwise sampled estimate,
// optionally REM-corrected.
struct EnergyOptions {
  const ResponseMatrix* rem = nullptr;
  bool rem_positive = false;
};

EnergyEstimate estimate_circuit_energy(const Circuit& bound, const PauliSum& h, const QwcGroups& groups,
                                       const Backend& backend, Seed seed, const EnergyOptions& options = {});

// Energy of an ansatz as a function of its parameters. Each call draws a new
// seed derive_seed(seed, {call index}), so a fixed call sequence reproduces.
class AnsatzEnergy {
 public:
  AnsatzEnergy(AnsatzSpec spec, PauliSum h, Backend backend, Seed seed);

  EnergyEstimate estimate(std::span<const double> params);
  double operator()(std::span<const double> params) { return estimate(params).value; }
  std::uint64_t calls() const { return calls_; }
  // Applies REM with this response to every sampled estimate.
  void set_mitigation(ResponseMatrix response, bool positive);

  const AnsatzSpec& spec() const { return spec_; }
  const PauliSum& hamiltonian() const { return h_; }
  const QwcGroups& groups() const { return groups_; }
  const Backend& backend() const { return backend_; }

 private:
  AnsatzSpec spec_;
  PauliSum h_;
  QwcGroups groups_;
  Backend backend_;
  Seed seed_;
  std::uint64_t calls_ = 0;
  std::optional<ResponseMatrix> response_;
  bool rem_positive_ = false;
};

// AQNGD problem on an ansatz energy: parameter-shift gradient through the
// same evaluator and either the certified constant metric 0.25 I or the
// numerically computed metric each iteration.
AqngdProblem make_aqngd_problem(AnsatzEnergy& energy, bool measured_metric = false);

// Fold pipeline for ZNE: the same backend at every fold; readout noise and
// REM stay as configured.
FoldPipeline make_fold_pipeline(const PauliSum& h, const QwcGroups& groups, const Backend& backend, Seed seed,
                                const EnergyOptions& options = {});

}  // namespace kagome
