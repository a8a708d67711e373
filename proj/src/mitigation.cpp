// Copyright 2026 The qempde authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "qempde/mitigation.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "qempde/common.hpp"

namespace qempde {

namespace {

std::string format_factors(const std::vector<double>& factors) {
  std::ostringstream out;
  out << "[";
  for (std::size_t i = 0; i < factors.size(); ++i) {
    if (i) out << ",";
    out << format_full(factors[i]);
  }
  out << "]";
  return out.str();
}

}  // namespace

void ZneConfig::validate(double p) const {
  if (order < 0) throw ConfigError("extrapolation order must be >= 0");
  if (!(p >= 0.0)) throw ConfigError("noise strength must be >= 0");
  if (scale_factors.size() < static_cast<std::size_t>(order) + 1) {
    throw ConfigError("need at least order+1 scale factors");
  }
  for (std::size_t i = 0; i < scale_factors.size(); ++i) {
    const double c = scale_factors[i];
    if (!(c >= 1.0)) throw ConfigError("scale factors must be >= 1");
    if (c * p > 1.0) {
      throw ConfigError("amplified strength factor*p exceeds 1");
    }
    for (std::size_t j = i + 1; j < scale_factors.size(); ++j) {
      if (c == scale_factors[j]) {
        throw ConfigError("scale factors must be distinct");
      }
    }
  }
}

std::vector<double> richardson_weights(const std::vector<double>& factors) {
  if (factors.empty()) throw ConfigError("scale factor list is empty");
  const std::size_t k = factors.size();
  std::vector<double> weights(k, 1.0);
  for (std::size_t j = 0; j < k; ++j) {
    for (std::size_t m = 0; m < k; ++m) {
      if (m == j) continue;
      const double gap = factors[m] - factors[j];
      if (gap == 0.0) throw ConfigError("scale factors must be distinct");
      weights[j] *= factors[m] / gap;
    }
  }
  return weights;
}

MitigatedEstimate zne_estimate(const std::function<double(double)>& noisy_value,
                               double p, const ZneConfig& cfg) {
  cfg.validate(p);
  const auto weights = richardson_weights(cfg.scale_factors);
  MitigatedEstimate est;
  est.raw.reserve(cfg.scale_factors.size());
  for (std::size_t j = 0; j < cfg.scale_factors.size(); ++j) {
    est.raw.push_back(noisy_value(cfg.scale_factors[j] * p));
    est.value += weights[j] * est.raw.back();
  }
  std::ostringstream meta;
  meta << "zne order=" << cfg.order
       << " scale_factors=" << format_factors(cfg.scale_factors)
       << " p=" << format_full(p);
  est.meta = meta.str();
  return est;
}

double pec_overhead(int num_gates, double p) {
  if (num_gates < 1) throw ConfigError("gate count must be >= 1");
  if (!(p >= 0.0 && p <= 0.5)) {
    throw ConfigError("depolarizing strength must lie in [0, 0.5]");
  }
  return std::pow(1.0 + 2.0 * p, 2.0 * num_gates);
}

QuasiProbability pec_inverse_coefficients(double p) {
  if (!(p >= 0.0 && p < 0.75)) {
    throw ConfigError(
        "depolarizing channel is singular at p >= 0.75; no inverse exists");
  }
  const double q = 1.0 / (1.0 - 4.0 * p / 3.0);
  QuasiProbability quasi;
  quasi.a_i = (3.0 * q + 1.0) / 4.0;
  quasi.a_x = quasi.a_y = quasi.a_z = (1.0 - q) / 4.0;
  quasi.gamma = std::abs(quasi.a_i) + std::abs(quasi.a_x) +
                std::abs(quasi.a_y) + std::abs(quasi.a_z);
  return quasi;
}

MitigatedEstimate pec_estimate(const AnsatzSpec& spec,
                               const std::vector<double>& theta,
                               const InputPoint& pt, double p,
                               std::int64_t num_samples, std::uint64_t seed,
                               const Readout& readout) {
  spec.validate();
  if (static_cast<int>(theta.size()) != spec.param_count()) {
    throw ConfigError("parameter vector length does not match the ansatz");
  }
  if (num_samples < 1) throw ConfigError("sample count must be >= 1");
  const QuasiProbability quasi = pec_inverse_coefficients(p);
  const int num_gates = spec.gate_count();
  const double gamma_total = std::pow(quasi.gamma, num_gates);
  if (gamma_total > 1e12) {
    throw ConfigError(
        "PEC sampling is infeasible: total quasi-probability norm exceeds "
        "1e12 (reduce the gate count or noise strength)");
  }

  // The gate list and its unitaries are shared by every sample; only the
  // inserted Pauli corrections differ.
  struct Step {
    bool is_cnot = false;
    int qubit = 0;
    int target = -1;
    bool counted = true;
    Matrix2 u;
  };
  std::vector<Step> steps;
  for (const auto& gate : gate_sequence(spec, theta, pt)) {
    Step step;
    step.is_cnot = gate.op.kind == GateOp::Kind::cnot;
    step.qubit = gate.op.qubit;
    step.target = gate.op.target;
    step.counted = gate.counted();
    if (!step.is_cnot) step.u = gate_matrix(gate.op);
    steps.push_back(step);
  }

  // Sampling distribution |a_k|/gamma over {I, X, Y, Z} with the signs kept
  // aside; cumulative thresholds close exactly at 1.
  const double coeff[4] = {quasi.a_i, quasi.a_x, quasi.a_y, quasi.a_z};
  double cumulative[4];
  double acc = 0.0;
  for (int k = 0; k < 4; ++k) {
    acc += std::abs(coeff[k]) / quasi.gamma;
    cumulative[k] = acc;
  }
  cumulative[3] = 1.0;
  const std::complex<double> i1(0.0, 1.0);
  Matrix2 pauli[4];
  pauli[0] << 1, 0, 0, 1;
  pauli[1] << 0, 1, 1, 0;
  pauli[2] << 0, -i1, i1, 0;
  pauli[3] << 1, 0, 0, -1;

  std::vector<double> contribution(static_cast<std::size_t>(num_samples));
  parallel_for(0, num_samples, [&](std::int64_t s) {
    Rng rng(derive_seed(seed, static_cast<std::uint64_t>(s)));
    DensityMatrix rho = DensityMatrix::zero_state(spec.num_qubits);
    double sign = 1.0;
    for (const auto& step : steps) {
      int noisy_qubit = step.qubit;
      if (step.is_cnot) {
        rho.apply_cnot(step.qubit, step.target);
        noisy_qubit = step.target;
      } else {
        rho.apply_single_qubit(step.u, step.qubit);
      }
      if (!step.counted) continue;
      rho.apply_depolarizing(p, noisy_qubit);
      const double r = rng.uniform(0.0, 1.0);
      int k = 0;
      while (k < 3 && r >= cumulative[k]) ++k;
      if (k > 0) rho.apply_single_qubit(pauli[k], noisy_qubit);
      if (coeff[k] < 0.0) sign = -sign;
    }
    contribution[static_cast<std::size_t>(s)] =
        sign * readout.apply(rho.expectation_z(readout.qubit));
  });

  MitigatedEstimate est;
  est.overhead = gamma_total * gamma_total;
  double total = 0.0;
  for (double v : contribution) total += v;
  est.value = gamma_total * total / static_cast<double>(num_samples);
  // Ten batch means (fewer when N < 10) expose the sampling spread.
  const std::int64_t batches = std::min<std::int64_t>(10, num_samples);
  for (std::int64_t b = 0; b < batches; ++b) {
    const std::int64_t lo = b * num_samples / batches;
    const std::int64_t hi = (b + 1) * num_samples / batches;
    double batch_total = 0.0;
    for (std::int64_t s = lo; s < hi; ++s) {
      batch_total += contribution[static_cast<std::size_t>(s)];
    }
    est.raw.push_back(gamma_total * batch_total /
                      static_cast<double>(hi - lo));
  }
  std::ostringstream meta;
  meta << "pec p=" << format_full(p) << " gates=" << num_gates
       << " gamma_total=" << format_full(gamma_total)
       << " analytic_overhead=" << format_full(pec_overhead(num_gates, p))
       << " samples=" << num_samples << " seed=" << seed;
  est.meta = meta.str();
  return est;
}

std::vector<double> readout_correct(const std::vector<double>& p_noisy,
                                    const ReadoutModel& model) {
  model.validate();
  const std::size_t dim = std::size_t{1} << model.num_qubits;
  if (p_noisy.size() != dim) {
    throw ConfigError("probability vector length must be 2^num_qubits");
  }
  double sum = 0.0;
  for (double v : p_noisy) {
    if (!std::isfinite(v)) throw ConfigError("probabilities must be finite");
    sum += v;
  }
  if (std::abs(sum - 1.0) > 1e-9) {
    throw ConfigError("probabilities must sum to 1 within 1e-9");
  }
  const Eigen::MatrixXd m = confusion_matrix(model);
  const Eigen::VectorXd b = Eigen::Map<const Eigen::VectorXd>(
      p_noisy.data(), static_cast<Eigen::Index>(dim));
  // epsilon < 0.5 keeps the confusion matrix nonsingular (each 2x2 tensor
  // factor has determinant 1 - 2*epsilon > 0).
  Eigen::VectorXd x = Eigen::PartialPivLU<Eigen::MatrixXd>(m).solve(b);
  double total = 0.0;
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    x[i] = std::max(x[i], 0.0);
    total += x[i];
  }
  std::vector<double> out(dim);
  for (std::size_t i = 0; i < dim; ++i) {
    out[i] = x[static_cast<Eigen::Index>(i)] / total;
  }
  return out;
}

}  // namespace qempde
