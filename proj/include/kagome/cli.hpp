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
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "kagome/ansatz.hpp"
#include "kagome/lattice.hpp"
#include "kagome/pipeline.hpp"
#include "kagome/rng.hpp"

namespace CLI {
class App;
}

namespace kagome {

// Exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitNumeric = 3;

struct ConfigError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct ExperimentConfig {
  std::string fragment = "triangle";  // triangle | star | file
  std::string fragment_file;

  // random | exact | explicit | kyoto | oslo | reported
  std::string init = "random";
  std::vector<double> params_pi;  // explicit parameters in units of pi

  std::string backend = "exact";
  std::uint64_t shots = 10000;  // per measurement group
  double p1 = 0.001;
  double p2 = 0.01;
  double readout_flip = 0.02;
  std::uint64_t shots_per_trajectory = 1;

  std::string optimizer = "aqngd";  // aqngd | spsa
  double alpha = 0.01;
  double beta = 0.5;
  int k_max = 6;
  double pinv_tol = 1e-15;
  double converge_tol = 1e-4;
  int max_iters = 100;
  int patience = 1;
  bool measured_metric = false;
  double spsa_a = 0.2;
  double spsa_c = 0.1;
  double spsa_A = 10.0;
  int spsa_iters = 100;

  bool rem = false;
  bool rem_positive = false;
  std::uint64_t calibration_shots = 10000;
  std::vector<int> zne_folds{1, 3, 5};
  double bpr_prior_sigma = 10.0;

  int grid_resolution = 101;
  double grid_extent = 1.0;
  std::string sq_reference = "ansatz";  // ansatz | ground

  int draws = 100;

  std::string out = "out";
  Seed seed = 1;

  // Throws ConfigError.
  void validate() const;
};

// Binds every key as a root option of app, readable from an INI file via
// --config.
void bind_config(CLI::App& app, ExperimentConfig& cfg);

using Artifacts = std::vector<std::pair<std::string, std::string>>;  // file name, contents

struct CommandResult {
  Artifacts files;
  int exit_code = kExitOk;
  std::string message;
};

// Resolution helpers; throw ConfigError.
LatticeFragment resolve_fragment(const ExperimentConfig& cfg);
AnsatzSpec resolve_ansatz(const LatticeFragment& fragment);
std::vector<double> resolve_params(const ExperimentConfig& cfg, const AnsatzSpec& spec);
Backend resolve_backend(const ExperimentConfig& cfg, int num_qubits);

CommandResult cmd_ed(const ExperimentConfig& cfg);
CommandResult cmd_vqe(const ExperimentConfig& cfg);
CommandResult cmd_mitigate(const ExperimentConfig& cfg);
CommandResult cmd_metric(const ExperimentConfig& cfg);
CommandResult cmd_structure_factor(const ExperimentConfig& cfg);

// Full command-line entry point; returns the process exit code.
int run_cli(int argc, const char* const* argv);

}  // namespace kagome
