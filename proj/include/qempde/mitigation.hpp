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
//
// Error-mitigation strategies for noisy circuit evaluation:
//   * zero-noise extrapolation (ZNE): evaluate at amplified noise strengths
//     c*p and Richardson-extrapolate to c = 0;
//   * probabilistic error cancellation (PEC): express the inverse of the
//     depolarizing channel as a signed Pauli mixture and Monte-Carlo sample
//     it, paying a gamma^2 variance overhead;
//   * readout correction: invert the measurement confusion matrix.

#ifndef QEMPDE_MITIGATION_HPP_
#define QEMPDE_MITIGATION_HPP_

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "qempde/ansatz.hpp"
#include "qempde/noise.hpp"

namespace qempde {

// Noise-scaling extrapolation settings. The defaults ({1,2,3}, quadratic)
// cancel the linear and quadratic noise terms, leaving an O(p^3) bias.
struct ZneConfig {
  std::vector<double> scale_factors{1.0, 2.0, 3.0};
  int order = 2;

  // Throws ConfigError unless the factors are distinct, all >= 1, at least
  // order+1 of them, and every amplified strength factor*p stays <= 1.
  void validate(double p) const;
};

// Signed single-qubit Pauli mixture sum_k a_k P_k . P_k implementing the
// inverse of the depolarizing channel. Coefficients sum to 1; gamma is the
// one-norm sum |a_k| >= 1 that prices the Monte-Carlo sampling overhead.
struct QuasiProbability {
  double a_i = 1.0;
  double a_x = 0.0;
  double a_y = 0.0;
  double a_z = 0.0;
  double gamma = 1.0;
};

// Result of a mitigated evaluation. `raw` holds the per-scale-factor values
// for ZNE and per-batch sample means for PEC; `overhead` is the PEC variance
// cost gamma_total^2 (1.0 for ZNE); `meta` echoes the configuration.
struct MitigatedEstimate {
  double value = 0.0;
  std::vector<double> raw;
  double overhead = 1.0;
  std::string meta;
};

// Lagrange-at-zero extrapolation weights for the given scale factors:
// w_j = prod_{m != j} c_m / (c_m - c_j). Weights sum to 1 and reproduce any
// polynomial of degree < |factors| exactly. Throws ConfigError on an empty
// or duplicate-bearing factor list.
std::vector<double> richardson_weights(const std::vector<double>& factors);

// Evaluates `noisy_value` at each amplified strength c_j*p and combines with
// Richardson weights; exact for values polynomial in the strength up to the
// configured order. The evaluator must be deterministic.
MitigatedEstimate zne_estimate(
    const std::function<double(double)>& noisy_value, double p,
    const ZneConfig& cfg = ZneConfig{});

// Analytic PEC sampling-cost factor (1+2p)^(2*n_g) for n_g noisy gates at
// depolarizing strength p in [0, 0.5].
double pec_overhead(int num_gates, double p);

// Closed-form inverse of the depolarizing channel as a signed Pauli mixture:
// with q = 1/(1 - 4p/3), a_I = (3q+1)/4 and a_X = a_Y = a_Z = (1-q)/4, and
// gamma = (1+2p/3)/(1-4p/3). Throws ConfigError for p outside [0, 0.75)
// (the channel is singular at p = 0.75).
QuasiProbability pec_inverse_coefficients(double p);

// Sign-weighted Monte-Carlo PEC estimate of the ideal readout value: runs
// the circuit with one depolarizing event after every counted gate, inserts
// a Pauli correction drawn from |a_k|/gamma after each event, and averages
// gamma_total * sign * outcome over `num_samples` runs. Unbiased for the
// noiseless value with standard error <= gamma_total/sqrt(N) for unit-scale
// readouts. Sample streams derive from (seed, sample index), so the result
// is independent of the execution schedule. The returned overhead is
// gamma_total^2; `meta` also records the (1+2p)^(2 n_g) figure. Throws
// ConfigError when gamma_total exceeds 1e12 (sampling infeasible).
MitigatedEstimate pec_estimate(const AnsatzSpec& spec,
                               const std::vector<double>& theta,
                               const InputPoint& pt, double p,
                               std::int64_t num_samples, std::uint64_t seed,
                               const Readout& readout = Readout{});

// Solves M x = p_noisy for the confusion matrix M of `model`, then clips
// negative entries to zero and renormalizes to a probability vector.
// Throws ConfigError if the vector length is not 2^n or does not sum to 1
// within 1e-9.
std::vector<double> readout_correct(const std::vector<double>& p_noisy,
                                    const ReadoutModel& model);

}  // namespace qempde

#endif  // QEMPDE_MITIGATION_HPP_
