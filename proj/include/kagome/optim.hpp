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

#include <functional>
#include <iosfwd>
#include <optional>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "kagome/rng.hpp"

namespace kagome {

using CostFunction = std::function<double(std::span<const double>)>;
using GradientFunction = std::function<std::vector<double>(std::span<const double>)>;
using MetricFunction = std::function<Eigen::MatrixXd(std::span<const double>)>;

struct AqngdConfig {
  double alpha = 0.01;  // sufficient-decrease constant
  double beta = 0.5;    // largest step; trial k uses beta / 2^k
  int k_max = 6;
  double pinv_tol = 1e-15;  // relative eigenvalue cutoff of the metric pseudo-inverse
  double converge_tol = 1e-4;
  int max_iters = 100;
  // Consecutive iterations with decrease below converge_tol before stopping.
  int patience = 1;

  // Throws std::invalid_argument on alpha outside [0, 1], beta <= 0,
  // k_max < 0, max_iters < 1, patience < 1 or negative tolerances.
  void validate() const;
};

struct ArmijoResult {
  int k = 0;  // accepted backtracking index; step = beta / 2^k
  double step = 1.0;
  std::vector<double> params;
  double value = 0.0;
  bool satisfied = false;  // false when the k_max trial was taken unconditionally
  int evaluations = 0;
};

// Backtracks theta' = theta - (beta / 2^k) * direction for k = 0..k_max and
// takes the first k with f(theta) - f(theta') >= alpha (beta / 2^k) grad_norm_sq.
// current_value is f(theta), reused rather than re-evaluated. Non-finite
// trial values never satisfy the condition.
ArmijoResult armijo_backtrack(const CostFunction& cost, std::span<const double> params, double current_value,
                              std::span<const double> direction, double grad_norm_sq, const AqngdConfig& cfg);

// Plain form: direction = grad, current value evaluated here.
ArmijoResult armijo_backtrack(const CostFunction& cost, std::span<const double> params, std::span<const double> grad,
                              const AqngdConfig& cfg);

// Symmetric pseudo-inverse; eigenvalues with |lambda| <= tol * max|lambda|
// are dropped.
Eigen::MatrixXd pseudo_inverse(const Eigen::MatrixXd& g, double tol);

struct OptRecord {
  int iteration = 0;
  double energy = 0.0;
  double step = 0.0;
  int k = 0;
  bool armijo_satisfied = true;
  double grad_norm = 0.0;
  std::uint64_t executions = 0;  // cumulative energy evaluations
  std::vector<double> params;    // after this step
};

struct OptTrace {
  double initial_energy = 0.0;
  std::vector<double> initial_params;
  std::vector<OptRecord> records;
  std::uint64_t metric_evaluations = 0;
  bool converged = false;
  bool aborted = false;  // non-finite energy

  const std::vector<double>& final_params() const {
    return records.empty() ? initial_params : records.back().params;
  }
  double final_energy() const { return records.empty() ? initial_energy : records.back().energy; }
};

struct AqngdProblem {
  CostFunction energy;
  GradientFunction gradient;
  // Used every iteration unless fixed_metric is set.
  MetricFunction metric;
  std::optional<Eigen::MatrixXd> fixed_metric;
  // Energy evaluations charged per gradient call; defaults to 2d.
  std::optional<int> gradient_cost;
};

OptTrace aqngd_run(const AqngdProblem& problem, std::span<const double> theta0, const AqngdConfig& cfg);

struct SpsaConfig {
  double a = 0.2;
  double c = 0.1;
  double A = 10.0;
  double alpha = 0.602;
  double gamma = 0.101;
  int iters = 100;
  void validate() const;
};

// Records the mean of the two perturbed evaluations each iteration.
OptTrace spsa_run(const CostFunction& energy, std::span<const double> theta0, const SpsaConfig& cfg, Seed seed);

// iteration,energy,k,stepsize; one row per step.
void write_trace_csv(std::ostream& os, const OptTrace& trace);

// iteration,energy,stepsize,k,armijo,grad_norm,executions,theta_0..; row 0
// is the starting point.
void write_trace_detail_csv(std::ostream& os, const OptTrace& trace);

}  // namespace kagome
