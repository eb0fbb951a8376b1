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

#include "kagome/mitigation.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <numeric>
#include <ostream>
#include <set>
#include <stdexcept>

#include "kagome/errors.hpp"

namespace kagome {

namespace {

constexpr int kMaxDenseQubits = 24;

std::uint64_t index_of(const std::string& bits) {
  std::uint64_t k = 0;
  for (std::size_t q = 0; q < bits.size(); ++q)
    if (bits[q] == '1') k |= std::uint64_t{1} << q;
  return k;
}

std::string bits_of(std::uint64_t k, int n) {
  std::string s(static_cast<std::size_t>(n), '0');
  for (int q = 0; q < n; ++q)
    if ((k >> q) & 1U) s[static_cast<std::size_t>(q)] = '1';
  return s;
}

// Local index of basis state k restricted to qubits qs.
std::uint64_t local_index(std::uint64_t k, const std::vector<int>& qs) {
  std::uint64_t l = 0;
  for (std::size_t r = 0; r < qs.size(); ++r) l |= ((k >> qs[r]) & 1U) << r;
  return l;
}

// v <- (I (x) M on qubits qs) v for a real 2^m x 2^m matrix.
void apply_local(std::vector<double>& v, const Eigen::MatrixXd& m, const std::vector<int>& qs) {
  std::uint64_t mask = 0;
  for (int q : qs) mask |= std::uint64_t{1} << q;
  const std::size_t dim = static_cast<std::size_t>(m.rows());
  std::vector<std::uint64_t> offset(dim, 0);
  for (std::size_t l = 0; l < dim; ++l)
    for (std::size_t r = 0; r < qs.size(); ++r)
      if ((l >> r) & 1U) offset[l] |= std::uint64_t{1} << qs[r];
  Eigen::VectorXd in(static_cast<Eigen::Index>(dim));
  for (std::uint64_t base = 0; base < v.size(); ++base) {
    if (base & mask) continue;
    for (std::size_t l = 0; l < dim; ++l) in(static_cast<Eigen::Index>(l)) = v[base | offset[l]];
    const Eigen::VectorXd out = m * in;
    for (std::size_t l = 0; l < dim; ++l) v[base | offset[l]] = out(static_cast<Eigen::Index>(l));
  }
}

struct Inverse {
  Eigen::MatrixXd pinv;
  bool singular = false;
};

Inverse pinv_of(const Eigen::MatrixXd& m) {
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const Eigen::VectorXd& s = svd.singularValues();
  const double cutoff = kSingularTol * (s.size() ? s(0) : 0.0);
  Inverse out;
  Eigen::VectorXd inv = Eigen::VectorXd::Zero(s.size());
  for (Eigen::Index i = 0; i < s.size(); ++i) {
    if (s(i) > cutoff) {
      inv(i) = 1.0 / s(i);
    } else {
      out.singular = true;
    }
  }
  out.pinv = svd.matrixV() * inv.asDiagonal() * svd.matrixU().transpose();
  return out;
}

void check_table(const ShotTable& table, const ResponseMatrix& r) {
  r.validate();
  if (table.num_qubits() != r.num_qubits()) throw std::invalid_argument("REM: table qubit count does not match response");
  if (table.num_qubits() > kMaxDenseQubits) throw SizeLimit("REM: too many qubits for the dense correction");
  if (table.shots == 0) throw std::invalid_argument("REM: empty shot table");
}

std::vector<double> dense_frequencies(const ShotTable& table) {
  std::vector<double> v(std::size_t{1} << table.num_qubits(), 0.0);
  for (const auto& [bits, count] : table.counts)
    v[index_of(bits)] += static_cast<double>(count) / static_cast<double>(table.shots);
  return v;
}

}  // namespace

int ResponseMatrix::num_qubits() const {
  int n = 0;
  for (const auto& p : partitions) n += static_cast<int>(p.size());
  return n;
}

void ResponseMatrix::validate() const {
  if (partitions.size() != factors.size()) throw std::invalid_argument("response: one factor per partition required");
  const int n = num_qubits();
  std::set<int> seen;
  for (std::size_t p = 0; p < partitions.size(); ++p) {
    if (partitions[p].empty()) throw std::invalid_argument("response: empty partition");
    for (int q : partitions[p])
      if (q < 0 || q >= n || !seen.insert(q).second)
        throw std::invalid_argument("response: partitions must be disjoint and cover every qubit");
    const Eigen::Index dim = Eigen::Index{1} << partitions[p].size();
    if (factors[p].rows() != dim || factors[p].cols() != dim)
      throw std::invalid_argument("response: factor shape does not match its partition");
    for (Eigen::Index c = 0; c < dim; ++c)
      if (std::abs(factors[p].col(c).sum() - 1.0) > 1e-9)
        throw std::invalid_argument("response: factor columns must sum to 1");
  }
}

std::vector<std::vector<int>> singleton_partitions(int num_qubits) {
  std::vector<std::vector<int>> out;
  for (int q = 0; q < num_qubits; ++q) out.push_back({q});
  return out;
}

ResponseMatrix response_from_noise(const NoiseModel& noise, int num_qubits) {
  noise.validate(num_qubits);
  ResponseMatrix r;
  r.partitions = singleton_partitions(num_qubits);
  for (int q = 0; q < num_qubits; ++q)
    r.factors.push_back(noise.readout.empty() ? Eigen::MatrixXd(Eigen::Matrix2d::Identity())
                                              : Eigen::MatrixXd(noise.readout[static_cast<std::size_t>(q)]));
  return r;
}

Eigen::MatrixXd full_response(const ResponseMatrix& r) {
  r.validate();
  const int n = r.num_qubits();
  if (n > 12) throw SizeLimit("full_response: n > 12");
  const Eigen::Index dim = Eigen::Index{1} << n;
  Eigen::MatrixXd full(dim, dim);
  for (Eigen::Index f = 0; f < dim; ++f) {
    for (Eigen::Index i = 0; i < dim; ++i) {
      double v = 1.0;
      for (std::size_t p = 0; p < r.partitions.size(); ++p) {
        const auto& qs = r.partitions[p];
        v *= r.factors[p](static_cast<Eigen::Index>(local_index(static_cast<std::uint64_t>(f), qs)),
                          static_cast<Eigen::Index>(local_index(static_cast<std::uint64_t>(i), qs)));
      }
      full(f, i) = v;
    }
  }
  return full;
}

ResponseMatrix calibrate(const ShotExecutor& executor, int num_qubits, const std::vector<std::vector<int>>& partitions,
                         std::uint64_t shots, Seed seed) {
  if (shots < 100) throw std::invalid_argument("calibrate: need at least 100 shots per basis state");
  ResponseMatrix r;
  r.partitions = partitions;
  r.shots = shots;
  for (const auto& p : partitions) {
    if (p.empty()) throw std::invalid_argument("calibrate: empty partition");
    if (p.size() > 10) throw SizeLimit("calibrate: partition too large");
    r.factors.emplace_back(Eigen::Index{1} << p.size(), Eigen::Index{1} << p.size());
  }
  // Coverage and disjointness; factor columns are filled below.
  for (auto& f : r.factors) f.setIdentity();
  r.validate();
  if (r.num_qubits() != num_qubits) throw std::invalid_argument("calibrate: partitions do not cover the register");

  const std::string zbasis = uniform_basis('Z', num_qubits);
  for (std::size_t p = 0; p < partitions.size(); ++p) {
    const auto& qs = partitions[p];
    Eigen::MatrixXd& factor = r.factors[p];
    factor.setZero();
    for (std::uint64_t i = 0; i < (std::uint64_t{1} << qs.size()); ++i) {
      std::vector<Gate> gates;
      for (std::size_t b = 0; b < qs.size(); ++b)
        if ((i >> b) & 1U) gates.push_back(Gate::single(GateKind::X, qs[b]));
      const ShotTable table = executor(Circuit(num_qubits, gates), zbasis, shots, derive_seed(seed, {p, i}));
      ++r.preparations;
      for (const auto& [bits, count] : table.counts) {
        std::uint64_t f = 0;
        for (std::size_t b = 0; b < qs.size(); ++b)
          if (bits[static_cast<std::size_t>(qs[b])] == '1') f |= std::uint64_t{1} << b;
        factor(static_cast<Eigen::Index>(f), static_cast<Eigen::Index>(i)) +=
            static_cast<double>(count) / static_cast<double>(table.shots);
      }
    }
  }
  return r;
}

double QuasiDistribution::total() const {
  double s = 0.0;
  for (const auto& [bits, t] : entries) s += t;
  return s;
}

double QuasiDistribution::negative_mass() const {
  double s = 0.0;
  for (const auto& [bits, t] : entries) s += std::max(0.0, -t);
  return s;
}

double QuasiDistribution::probability(const std::string& bits) const {
  const auto it = entries.find(bits);
  return it == entries.end() ? 0.0 : it->second;
}

QuasiDistribution empirical_distribution(const ShotTable& table) {
  if (table.shots == 0) throw std::invalid_argument("empirical_distribution: empty shot table");
  QuasiDistribution q;
  q.num_qubits = table.num_qubits();
  for (const auto& [bits, count] : table.counts)
    q.entries[bits] = static_cast<double>(count) / static_cast<double>(table.shots);
  return q;
}

QuasiDistribution apply_rem(const ShotTable& table, const ResponseMatrix& r, std::size_t top_k) {
  check_table(table, r);
  if (top_k == 0) throw std::invalid_argument("apply_rem: top_k must be positive");
  const int n = table.num_qubits();
  std::vector<double> v = dense_frequencies(table);
  QuasiDistribution q;
  q.num_qubits = n;
  for (std::size_t p = 0; p < r.partitions.size(); ++p) {
    const Inverse inv = pinv_of(r.factors[p]);
    q.singular_factor = q.singular_factor || inv.singular;
    apply_local(v, inv.pinv, r.partitions[p]);
  }
  std::vector<std::uint64_t> support;
  for (std::uint64_t k = 0; k < v.size(); ++k)
    if (v[k] != 0.0) support.push_back(k);
  if (support.size() > top_k) {
    std::partial_sort(support.begin(), support.begin() + static_cast<std::ptrdiff_t>(top_k), support.end(),
                      [&](std::uint64_t a, std::uint64_t b) { return std::abs(v[a]) > std::abs(v[b]); });
    q.truncated = support.size() - top_k;
    support.resize(top_k);
  }
  double total = 0.0;
  for (std::uint64_t k : support) total += v[k];
  if (!(std::abs(total) > 0.0)) throw std::invalid_argument("apply_rem: corrected distribution has zero total");
  for (std::uint64_t k : support) q.entries[bits_of(k, n)] = v[k] / total;
  return q;
}

QuasiDistribution project_positive(const QuasiDistribution& q) {
  QuasiDistribution out = q;
  if (q.entries.empty()) return out;
  std::vector<double> u;
  for (const auto& [bits, t] : q.entries) u.push_back(t);
  std::sort(u.begin(), u.end(), std::greater<>());
  // Largest rho with u_rho - (sum_{j<=rho} u_j - 1) / rho > 0.
  double cumulative = 0.0, tau = 0.0;
  for (std::size_t j = 0; j < u.size(); ++j) {
    cumulative += u[j];
    const double t = (cumulative - 1.0) / static_cast<double>(j + 1);
    if (u[j] - t > 0.0) tau = t;
  }
  for (auto& [bits, t] : out.entries) t = std::max(0.0, t - tau);
  return out;
}

double total_variation(const QuasiDistribution& a, const QuasiDistribution& b) {
  double s = 0.0;
  for (const auto& [bits, t] : a.entries) s += std::abs(t - b.probability(bits));
  for (const auto& [bits, t] : b.entries)
    if (!a.entries.count(bits)) s += std::abs(t);
  return 0.5 * s;
}

EnergyEstimate estimate_energy_rem(std::span<const ShotTable> tables, const PauliSum& sum, const QwcGroups& groups,
                                   const ResponseMatrix& r, bool positive, std::size_t top_k) {
  if (tables.size() != groups.groups.size())
    throw std::invalid_argument("estimate_energy_rem: need exactly one shot table per group");
  EnergyEstimate est;
  double se2 = 0.0;
  for (std::size_t g = 0; g < tables.size(); ++g) {
    const ShotTable& table = tables[g];
    const QwcGroup& group = groups.groups[g];
    check_table(table, r);
    if (table.shots < 2) throw std::invalid_argument("estimate_energy_rem: need at least 2 shots per group");
    for (std::size_t q = 0; q < group.basis.size(); ++q)
      if (group.basis[q] != 'I' && table.basis[q] != group.basis[q])
        throw std::invalid_argument("estimate_energy_rem: table basis does not match group");
    const int n = table.num_qubits();
    const double shots = static_cast<double>(table.shots);

    QuasiDistribution t = apply_rem(table, r, top_k);
    if (positive) t = project_positive(t);
    double mean = 0.0;
    for (const auto& [bits, p] : t.entries) mean += p * group_shot_value(sum, group, bits);

    double var = 0.0;
    if (positive) {
      for (const auto& [bits, p] : t.entries) {
        const double d = group_shot_value(sum, group, bits) - mean;
        var += p * d * d;
      }
      var *= shots / (shots - 1.0);
    } else {
      // Corrected per-shot observable: h~ = (R^+)^T h, so that sum_b m_b h~(b)
      // equals sum_b t_b h(b).
      std::vector<double> h(std::size_t{1} << n);
      for (std::uint64_t k = 0; k < h.size(); ++k) h[k] = group_shot_value(sum, group, bits_of(k, n));
      for (std::size_t p = 0; p < r.partitions.size(); ++p)
        apply_local(h, pinv_of(r.factors[p]).pinv.transpose(), r.partitions[p]);
      double hm = 0.0;
      for (const auto& [bits, count] : table.counts) hm += static_cast<double>(count) * h[index_of(bits)];
      hm /= shots;
      for (const auto& [bits, count] : table.counts) {
        const double d = h[index_of(bits)] - hm;
        var += static_cast<double>(count) * d * d;
      }
      var /= shots - 1.0;
    }
    est.group_means.push_back(mean);
    est.group_variances.push_back(var);
    est.shots_per_group.push_back(table.shots);
    est.value += mean;
    est.variance += var;
    se2 += var / shots;
  }
  est.std_error = std::sqrt(se2);
  return est;
}

void ZneSeries::validate() const {
  if (points.empty()) throw std::invalid_argument("ZNE series is empty");
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (points[i].fold < 1 || points[i].fold % 2 == 0) throw std::invalid_argument("ZNE folds must be odd and positive");
    if (i && points[i].fold <= points[i - 1].fold) throw std::invalid_argument("ZNE folds must increase");
    if (!std::isfinite(points[i].energy)) throw std::invalid_argument("ZNE energy is not finite");
  }
}

ZneSeries zne_run(const Circuit& bound, const FoldPipeline& pipeline, const std::vector<int>& folds) {
  if (!bound.is_bound()) throw InvalidState("zne_run: circuit has free parameters");
  ZneSeries series;
  for (int fold : folds) {
    const EnergyEstimate e = pipeline(fold_global(bound, fold), fold);
    series.points.push_back({fold, e.value, e.std_error});
  }
  series.validate();
  return series;
}

namespace {

Eigen::MatrixXd vandermonde(const ZneSeries& series, int degree) {
  series.validate();
  if (degree < 0 || static_cast<std::size_t>(degree) >= series.points.size())
    throw std::invalid_argument("extrapolation degree must be below the number of points");
  Eigen::MatrixXd phi(static_cast<Eigen::Index>(series.points.size()), degree + 1);
  for (std::size_t i = 0; i < series.points.size(); ++i)
    for (int c = 0; c <= degree; ++c)
      phi(static_cast<Eigen::Index>(i), c) = std::pow(static_cast<double>(series.points[i].fold), c);
  return phi;
}

}  // namespace

double polyfit_extrapolate(const ZneSeries& series, int degree) {
  const Eigen::MatrixXd phi = vandermonde(series, degree);
  Eigen::VectorXd y(phi.rows());
  for (Eigen::Index i = 0; i < y.size(); ++i) y(i) = series.points[static_cast<std::size_t>(i)].energy;
  const Eigen::VectorXd coef = phi.colPivHouseholderQr().solve(y);
  return coef(0);
}

BprResult bpr_extrapolate(const ZneSeries& series, int degree, double prior_sigma) {
  if (!(prior_sigma > 0.0)) throw std::invalid_argument("bpr_extrapolate: prior sigma must be positive");
  const Eigen::MatrixXd phi = vandermonde(series, degree);
  const Eigen::Index m = phi.rows(), d = phi.cols();
  BprResult out;
  // Whitened least squares with the prior appended as pseudo-observations;
  // the posterior covariance is (A^T A)^{-1} = R^{-1} R^{-T}.
  Eigen::MatrixXd a(m + d, d);
  Eigen::VectorXd b = Eigen::VectorXd::Zero(m + d);
  for (Eigen::Index i = 0; i < m; ++i) {
    double s = series.points[static_cast<std::size_t>(i)].std_error;
    if (!(s >= kStderrFloor)) {
      s = kStderrFloor;
      out.floored = true;
    }
    a.row(i) = phi.row(i) / s;
    b(i) = series.points[static_cast<std::size_t>(i)].energy / s;
  }
  a.bottomRows(d) = Eigen::MatrixXd::Identity(d, d) / prior_sigma;
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(a);
  const Eigen::MatrixXd r = qr.matrixQR().topRows(d).triangularView<Eigen::Upper>();
  const Eigen::VectorXd qtb = (qr.householderQ().transpose() * b).head(d);
  const Eigen::VectorXd coef = r.triangularView<Eigen::Upper>().solve(qtb);
  Eigen::VectorXd e0 = Eigen::VectorXd::Zero(d);
  e0(0) = 1.0;
  const Eigen::VectorXd z = r.transpose().triangularView<Eigen::Lower>().solve(e0);
  out.mean = coef(0);
  out.std = z.norm();
  return out;
}

Extrapolation make_extrapolation(std::string method, double e0, double e0_std, double ground, double margin) {
  return {std::move(method), e0, e0_std, e0 < ground - margin};
}

void write_zne_csv(std::ostream& os, const ZneSeries& series) {
  const auto flags = os.flags();
  os << std::setprecision(17) << "folds,energy,stderr\n";
  for (const auto& p : series.points) os << p.fold << ',' << p.energy << ',' << p.std_error << '\n';
  os.flags(flags);
}

void write_extrapolations_csv(std::ostream& os, std::span<const Extrapolation> rows) {
  const auto flags = os.flags();
  os << std::setprecision(17) << "method,E0,E0_std\n";
  for (const auto& r : rows) os << r.method << ',' << r.e0 << ',' << r.e0_std << '\n';
  os.flags(flags);
}

}  // namespace kagome
