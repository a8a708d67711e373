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
// Gradient-descent training of the variational circuit against the composite
// data + physics loss, with optional noise during training and optional
// zero-noise-extrapolated (mitigated) loss/gradient evaluation.

#ifndef QEMPDE_TRAINING_HPP_
#define QEMPDE_TRAINING_HPP_

#include <cstdint>
#include <vector>

#include "qempde/gradients.hpp"
#include "qempde/mitigation.hpp"
#include "qempde/pde.hpp"

namespace qempde {

enum class OptimizerKind { adam, sgd };

std::string to_string(OptimizerKind kind);
OptimizerKind optimizer_from_string(const std::string& name);

struct TrainConfig {
  int epochs = 200;
  double learning_rate = 0.01;
  OptimizerKind optimizer = OptimizerKind::adam;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double eps_opt = 1e-8;
  std::uint64_t seed = 0;
  // Noise active while training (loss and gradients are evaluated under it).
  NoiseModel noise;
  // When set, every epoch's loss and gradient are Richardson-extrapolated to
  // zero noise across `zne.scale_factors` amplified evaluations, so the
  // optimizer descends the mitigated objective.
  bool zne_wrapped = false;
  ZneConfig zne;
  StencilConfig stencil;

  void validate() const;  // throws ConfigError on out-of-range fields
};

struct TrainTrace {
  std::vector<double> loss;   // objective value per epoch, pre-update
  std::vector<double> theta;  // final parameters
  // Mean overlap <psi_ideal | rho_noisy | psi_ideal> over the collocation
  // grid at the final parameters, under the training noise model (1 when
  // training was noiseless).
  double final_fidelity = 0.0;
  // Mean loss over the last 10% of epochs (at least one).
  double floor = 0.0;
};

// Uniform random angles in [-0.1, 0.1] (near-identity start).
std::vector<double> init_parameters(const AnsatzSpec& spec,
                                    std::uint64_t seed);

// Iterates `cfg.epochs` optimizer steps on the loss gradient, starting from
// init_parameters(spec, cfg.seed). Deterministic given the config. Throws
// TrainingAbort when the loss or gradient turns non-finite.
TrainTrace train(const AnsatzSpec& spec, const PdeProblem& problem,
                 const TrainConfig& cfg);

// Mean overlap of the noisy output state with the ideal pure state over the
// problem's collocation grid at fixed parameters; equals 1 without noise.
double mean_fidelity(const AnsatzSpec& spec, const std::vector<double>& theta,
                     const PdeProblem& problem, const NoiseModel& noise);

}  // namespace qempde

#endif  // QEMPDE_TRAINING_HPP_
