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

#include "qempde/training.hpp"

#include <cmath>
#include <sstream>

#include "qempde/common.hpp"

namespace qempde {

std::string to_string(OptimizerKind kind) {
  return kind == OptimizerKind::adam ? "adam" : "sgd";
}

OptimizerKind optimizer_from_string(const std::string& name) {
  if (name == "adam") return OptimizerKind::adam;
  if (name == "sgd") return OptimizerKind::sgd;
  throw ConfigError("unknown optimizer: " + name);
}

void TrainConfig::validate() const {
  if (epochs < 1) throw ConfigError("epochs must be >= 1");
  if (!(learning_rate > 0.0)) throw ConfigError("learning rate must be > 0");
  if (!(beta1 >= 0.0 && beta1 < 1.0) || !(beta2 >= 0.0 && beta2 < 1.0)) {
    throw ConfigError("Adam moment decays must lie in [0, 1)");
  }
  if (!(eps_opt > 0.0)) throw ConfigError("Adam epsilon must be > 0");
  stencil.validate();
  if (zne_wrapped) zne.validate(noise.effective_strength());
}

std::vector<double> init_parameters(const AnsatzSpec& spec,
                                    std::uint64_t seed) {
  spec.validate();
  Rng rng(seed);
  std::vector<double> theta(static_cast<std::size_t>(spec.param_count()));
  for (auto& v : theta) v = rng.uniform(-0.1, 0.1);
  return theta;
}

namespace {

// Loss and gradient of the configured objective: the plain (possibly noisy)
// loss, or its Richardson extrapolation to zero noise when zne_wrapped. The
// extrapolated gradient is exactly the gradient of the extrapolated loss
// (both are linear combinations over the same scale factors).
double objective_gradient(const AnsatzSpec& spec,
                          const std::vector<double>& theta,
                          const PdeProblem& problem, const TrainConfig& cfg,
                          std::vector<double>& grad) {
  if (!cfg.zne_wrapped) {
    double value = 0.0;
    grad = loss_gradient(spec, theta, problem, cfg.noise, cfg.stencil, &value);
    return value;
  }
  const auto weights = richardson_weights(cfg.zne.scale_factors);
  double value = 0.0;
  grad.assign(theta.size(), 0.0);
  for (std::size_t j = 0; j < weights.size(); ++j) {
    double scaled_value = 0.0;
    const auto scaled_grad =
        loss_gradient(spec, theta, problem,
                      cfg.noise.scaled(cfg.zne.scale_factors[j]), cfg.stencil,
                      &scaled_value);
    value += weights[j] * scaled_value;
    for (std::size_t i = 0; i < grad.size(); ++i) {
      grad[i] += weights[j] * scaled_grad[i];
    }
  }
  return value;
}

[[noreturn]] void abort_training(const char* what, int epoch,
                                 const PdeProblem& problem,
                                 const TrainConfig& cfg) {
  std::ostringstream msg;
  msg << "training aborted: non-finite " << what << " (pde="
      << to_string(problem.kind) << ", lambda=" << format_full(problem.lambda)
      << ", noise=" << to_string(cfg.noise.kind)
      << ", p=" << format_full(cfg.noise.effective_strength()) << ")";
  throw TrainingAbort(epoch, msg.str());
}

}  // namespace

TrainTrace train(const AnsatzSpec& spec, const PdeProblem& problem,
                 const TrainConfig& cfg) {
  spec.validate();
  problem.validate();
  cfg.validate();

  TrainTrace trace;
  trace.loss.reserve(static_cast<std::size_t>(cfg.epochs));
  std::vector<double> theta = init_parameters(spec, cfg.seed);
  std::vector<double> grad;
  std::vector<double> m(theta.size(), 0.0);
  std::vector<double> v(theta.size(), 0.0);

  for (int epoch = 0; epoch < cfg.epochs; ++epoch) {
    const double value = objective_gradient(spec, theta, problem, cfg, grad);
    if (!std::isfinite(value)) abort_training("loss", epoch, problem, cfg);
    for (double g : grad) {
      if (!std::isfinite(g)) abort_training("gradient", epoch, problem, cfg);
    }
    trace.loss.push_back(value);

    if (cfg.optimizer == OptimizerKind::sgd) {
      for (std::size_t i = 0; i < theta.size(); ++i) {
        theta[i] -= cfg.learning_rate * grad[i];
      }
    } else {
      const double t = static_cast<double>(epoch + 1);
      const double m_scale = 1.0 - std::pow(cfg.beta1, t);
      const double v_scale = 1.0 - std::pow(cfg.beta2, t);
      for (std::size_t i = 0; i < theta.size(); ++i) {
        m[i] = cfg.beta1 * m[i] + (1.0 - cfg.beta1) * grad[i];
        v[i] = cfg.beta2 * v[i] + (1.0 - cfg.beta2) * grad[i] * grad[i];
        theta[i] -= cfg.learning_rate * (m[i] / m_scale) /
                    (std::sqrt(v[i] / v_scale) + cfg.eps_opt);
      }
    }
  }

  const auto tail =
      std::max<std::size_t>(1, trace.loss.size() / 10);
  double floor = 0.0;
  for (std::size_t e = trace.loss.size() - tail; e < trace.loss.size(); ++e) {
    floor += trace.loss[e];
  }
  trace.floor = floor / static_cast<double>(tail);
  trace.theta = std::move(theta);
  trace.final_fidelity = mean_fidelity(spec, trace.theta, problem, cfg.noise);
  return trace;
}

double mean_fidelity(const AnsatzSpec& spec, const std::vector<double>& theta,
                     const PdeProblem& problem, const NoiseModel& noise) {
  const auto grid = collocation_grid(problem);
  if (!noise.enabled()) return 1.0;
  double total = 0.0;
  for (const auto& pt : grid) {
    const StateVector ideal = run_statevector(spec, theta, pt);
    const DensityMatrix noisy = output_state(spec, theta, pt, noise);
    total += ideal.overlap(noisy);
  }
  return total / static_cast<double>(grid.size());
}

}  // namespace qempde
