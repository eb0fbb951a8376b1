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

#include "kagome/optim.hpp"

#include <cmath>
#include <iomanip>
#include <ostream>
#include <stdexcept>

namespace kagome {

namespace {

double squared_norm(std::span<const double> v) {
  double s = 0.0;
  for (double x : v) s += x * x;
  return s;
}

}  // namespace

void AqngdConfig::validate() const {
  if (!(alpha >= 0.0 && alpha <= 1.0)) throw std::invalid_argument("alpha must lie in [0, 1]");
  if (!(beta > 0.0) || !std::isfinite(beta)) throw std::invalid_argument("beta must be positive");
  if (k_max < 0) throw std::invalid_argument("k_max must be >= 0");
  if (max_iters < 1) throw std::invalid_argument("max_iters must be >= 1");
  if (patience < 1) throw std::invalid_argument("patience must be >= 1");
  if (!(pinv_tol >= 0.0) || !(converge_tol >= 0.0)) throw std::invalid_argument("tolerances must be >= 0");
}

void SpsaConfig::validate() const {
  if (!(a >= 0.0) || !(c > 0.0) || !(A >= 0.0)) throw std::invalid_argument("SPSA gains must be a >= 0, c > 0, A >= 0");
  if (iters < 1) throw std::invalid_argument("SPSA iters must be >= 1");
}

ArmijoResult armijo_backtrack(const CostFunction& cost, std::span<const double> params, double current_value,
                              std::span<const double> direction, double grad_norm_sq, const AqngdConfig& cfg) {
  if (direction.size() != params.size()) throw std::invalid_argument("armijo_backtrack: size mismatch");
  ArmijoResult r;
  r.params.resize(params.size());
  double step = cfg.beta;
  for (int k = 0; k <= cfg.k_max; ++k, step *= 0.5) {
    for (std::size_t i = 0; i < params.size(); ++i) r.params[i] = params[i] - step * direction[i];
    r.value = cost(r.params);
    ++r.evaluations;
    r.k = k;
    r.step = step;
    if (current_value - r.value >= cfg.alpha * step * grad_norm_sq) {
      r.satisfied = true;
      return r;
    }
  }
  return r;
}

ArmijoResult armijo_backtrack(const CostFunction& cost, std::span<const double> params, std::span<const double> grad,
                              const AqngdConfig& cfg) {
  const double f0 = cost(params);
  ArmijoResult r = armijo_backtrack(cost, params, f0, grad, squared_norm(grad), cfg);
  ++r.evaluations;
  return r;
}

Eigen::MatrixXd pseudo_inverse(const Eigen::MatrixXd& g, double tol) {
  if (g.rows() != g.cols()) throw std::invalid_argument("pseudo_inverse: matrix must be square");
  if (g.size() == 0) return g;
  const Eigen::MatrixXd sym = 0.5 * (g + g.transpose());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(sym);
  const Eigen::VectorXd& lam = es.eigenvalues();
  const double cutoff = tol * lam.cwiseAbs().maxCoeff();
  Eigen::VectorXd inv = Eigen::VectorXd::Zero(lam.size());
  for (Eigen::Index i = 0; i < lam.size(); ++i)
    if (std::abs(lam(i)) > cutoff) inv(i) = 1.0 / lam(i);
  return es.eigenvectors() * inv.asDiagonal() * es.eigenvectors().transpose();
}

OptTrace aqngd_run(const AqngdProblem& problem, std::span<const double> theta0, const AqngdConfig& cfg) {
  cfg.validate();
  if (!problem.energy || !problem.gradient) throw std::invalid_argument("aqngd_run: energy and gradient required");
  if (!problem.fixed_metric && !problem.metric) throw std::invalid_argument("aqngd_run: no metric supplied");
  const auto d = static_cast<Eigen::Index>(theta0.size());
  const int grad_cost = problem.gradient_cost.value_or(2 * static_cast<int>(d));

  OptTrace trace;
  trace.initial_params.assign(theta0.begin(), theta0.end());
  std::vector<double> theta = trace.initial_params;
  double f = problem.energy(theta);
  trace.initial_energy = f;
  std::uint64_t executions = 1;
  if (!std::isfinite(f)) {
    trace.aborted = true;
    return trace;
  }

  std::optional<Eigen::MatrixXd> fixed_inv;
  if (problem.fixed_metric) fixed_inv = pseudo_inverse(*problem.fixed_metric, cfg.pinv_tol);

  int stalls = 0;
  for (int it = 1; it <= cfg.max_iters; ++it) {
    const std::vector<double> grad = problem.gradient(theta);
    executions += static_cast<std::uint64_t>(grad_cost);
    if (static_cast<Eigen::Index>(grad.size()) != d) throw std::invalid_argument("aqngd_run: gradient size mismatch");
    Eigen::MatrixXd ginv;
    if (fixed_inv) {
      ginv = *fixed_inv;
    } else {
      ginv = pseudo_inverse(problem.metric(theta), cfg.pinv_tol);
      ++trace.metric_evaluations;
    }
    const Eigen::Map<const Eigen::VectorXd> g(grad.data(), d);
    const Eigen::VectorXd nat = ginv * g;
    const double gsq = g.squaredNorm();
    const ArmijoResult ls =
        armijo_backtrack(problem.energy, theta, f, std::span<const double>(nat.data(), nat.size()), gsq, cfg);
    executions += static_cast<std::uint64_t>(ls.evaluations);

    theta = ls.params;
    trace.records.push_back({it, ls.value, ls.step, ls.k, ls.satisfied, std::sqrt(gsq), executions, theta});
    if (!std::isfinite(ls.value)) {
      trace.aborted = true;
      break;
    }
    const double decrease = f - ls.value;
    f = ls.value;
    stalls = decrease < cfg.converge_tol ? stalls + 1 : 0;
    if (stalls >= cfg.patience) {
      trace.converged = true;
      break;
    }
  }
  return trace;
}

OptTrace spsa_run(const CostFunction& energy, std::span<const double> theta0, const SpsaConfig& cfg, Seed seed) {
  cfg.validate();
  OptTrace trace;
  trace.initial_params.assign(theta0.begin(), theta0.end());
  std::vector<double> theta = trace.initial_params;
  trace.initial_energy = energy(theta);
  std::uint64_t executions = 1;
  Rng rng(seed);
  const std::size_t d = theta.size();
  std::vector<double> delta(d), plus(d), minus(d);
  for (int k = 0; k < cfg.iters; ++k) {
    const double ak = cfg.a / std::pow(k + 1 + cfg.A, cfg.alpha);
    const double ck = cfg.c / std::pow(k + 1, cfg.gamma);
    for (std::size_t i = 0; i < d; ++i) {
      delta[i] = uniform_below(rng, 2) ? 1.0 : -1.0;
      plus[i] = theta[i] + ck * delta[i];
      minus[i] = theta[i] - ck * delta[i];
    }
    const double fp = energy(plus);
    const double fm = energy(minus);
    executions += 2;
    double gsq = 0.0;
    for (std::size_t i = 0; i < d; ++i) {
      const double gi = (fp - fm) / (2.0 * ck * delta[i]);
      gsq += gi * gi;
      theta[i] -= ak * gi;
    }
    const double mean = 0.5 * (fp + fm);
    trace.records.push_back({k + 1, mean, ak, 0, true, std::sqrt(gsq), executions, theta});
    if (!std::isfinite(mean)) {
      trace.aborted = true;
      break;
    }
  }
  return trace;
}

void write_trace_csv(std::ostream& os, const OptTrace& trace) {
  const auto flags = os.flags();
  os << std::setprecision(17);
  os << "iteration,energy,k,stepsize\n";
  for (const auto& r : trace.records) os << r.iteration << ',' << r.energy << ',' << r.k << ',' << r.step << '\n';
  os.flags(flags);
}

void write_trace_detail_csv(std::ostream& os, const OptTrace& trace) {
  const auto flags = os.flags();
  os << std::setprecision(17);
  os << "iteration,energy,stepsize,k,armijo,grad_norm,executions";
  for (std::size_t i = 0; i < trace.initial_params.size(); ++i) os << ",theta_" << i;
  os << '\n';
  auto params = [&](const std::vector<double>& p) {
    for (double x : p) os << ',' << x;
    os << '\n';
  };
  os << "0," << trace.initial_energy << ",0,0,1,0,1";
  params(trace.initial_params);
  for (const auto& r : trace.records) {
    os << r.iteration << ',' << r.energy << ',' << r.step << ',' << r.k << ',' << (r.armijo_satisfied ? 1 : 0) << ','
       << r.grad_norm << ',' << r.executions;
    params(r.params);
  }
  os.flags(flags);
}

}  // namespace kagome
