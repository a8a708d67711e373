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
// Single-qubit noise channels in Kraus form and the noise-model description
// used across the benchmark: one channel instance acts on every qubit after
// each ansatz layer, with an optional multiplicative strength scale (the knob
// zero-noise extrapolation turns).

#ifndef QEMPDE_NOISE_HPP_
#define QEMPDE_NOISE_HPP_

#include <string>

#include "qempde/qstate.hpp"

namespace qempde {

enum class ChannelKind { none, depolarizing, amplitude_damping, bit_flip };

std::string to_string(ChannelKind kind);
ChannelKind channel_kind_from_string(const std::string& name);

// Depolarizing channel: {sqrt(1-p) I, sqrt(p/3) X, sqrt(p/3) Y, sqrt(p/3) Z}.
// Requires p in [0, 1].
KrausSet make_depolarizing(double p);

// Amplitude damping: E0 = [[1,0],[0,sqrt(1-gamma)]], E1 = [[0,sqrt(gamma)],
// [0,0]]. Requires gamma in [0, 1].
KrausSet make_amplitude_damping(double gamma);

// Bit flip: {sqrt(1-p) I, sqrt(p) X}. Requires p in [0, 1].
KrausSet make_bit_flip(double p);

KrausSet make_channel(ChannelKind kind, double strength);

// Noise configuration attached to a circuit execution. `scale` multiplies the
// base strength (ZNE runs the same circuit at scale 1, 2, 3, ...); the
// effective strength must stay inside the channel's valid range.
struct NoiseModel {
  ChannelKind kind = ChannelKind::none;
  double strength = 0.0;
  double scale = 1.0;

  bool enabled() const { return kind != ChannelKind::none && strength * scale > 0.0; }

  // scale * strength, validated against [0, 1].
  double effective_strength() const;

  NoiseModel scaled(double factor) const;

  static NoiseModel none_model() { return NoiseModel{}; }
};

// Applies the configured channel to a single qubit, using the closed-form
// single-pass updates (no Kraus-set allocation on the hot path).
void apply_noise(DensityMatrix& rho, const NoiseModel& model, int qubit);

// Applies the channel to every qubit in index order (the per-layer insertion).
void apply_noise_all_qubits(DensityMatrix& rho, const NoiseModel& model);

// Heisenberg-picture (adjoint) channel O -> sum_k E_k^dag O E_k, used when
// observables are evolved backward through a noisy circuit. Depolarizing and
// bit flip are self-adjoint in this sense; amplitude damping is not.
void apply_noise_adjoint(DensityMatrix& observable, const NoiseModel& model,
                         int qubit);

// Symmetric readout-error model: each qubit's measured bit flips with
// probability epsilon, independently and identically.
struct ReadoutModel {
  double epsilon = 0.0;
  int num_qubits = 1;

  // Throws ConfigError unless 0 <= epsilon < 0.5 and 1 <= num_qubits <= 12
  // (epsilon = 0.5 makes the confusion matrix singular).
  void validate() const;
};

// The 2^n x 2^n column-stochastic confusion matrix: the n-fold tensor power
// of [[1-eps, eps], [eps, 1-eps]]. Entry (observed, true) is the probability
// of reading `observed` when the true outcome is `true`.
Eigen::MatrixXd confusion_matrix(const ReadoutModel& model);

}  // namespace qempde

#endif  // QEMPDE_NOISE_HPP_
