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
// Derivatives of the circuit field u_theta(x, t):
//   * exact parameter-shift derivatives with respect to trainable angles
//     (all generators have eigenvalues +-1/2, so the +-pi/2 rule is exact);
//   * central finite differences with respect to the inputs (encoding angles
//     are not trainable, and the simulation is exact, so truncation is the
//     only error source);
//   * the chain-rule gradient of the composite PDE loss, assembled from
//     closed-form loss partials times parameter-shift field gradients.
//
// Parameter-shift applies to expectation values only, never to the squared
// loss directly (where the rule would be invalid); the chain rule handles
// the square.

#ifndef QEMPDE_GRADIENTS_HPP_
#define QEMPDE_GRADIENTS_HPP_

#include <functional>
#include <vector>

#include "qempde/ansatz.hpp"

namespace qempde {

struct PdeProblem;  // pde.hpp

// Rectangular input-domain box; stencils are clamped to stay inside it.
// PDE problems reuse this for their (x, t) ranges.
struct Domain {
  double x_lo = 0.0;
  double x_hi = 1.0;
  double t_lo = 0.0;
  double t_hi = 1.0;

  void validate() const;  // throws ConfigError on a degenerate box
};

// Finite-difference steps for input derivatives. Defaults: h1 = 1e-3 for
// first derivatives, h2 = 1e-2 for the second derivative (exact simulation
// has no statistical noise, so truncation dominates; the larger h2 controls
// roundoff in the second difference).
struct StencilConfig {
  double h1 = 1e-3;
  double h2 = 1e-2;

  void validate() const;  // throws ConfigError unless 0 < h < 0.1
};

// Recenters a +-h stencil so it stays inside [lo, hi]; near a boundary the
// derivative is evaluated at the shifted center (one-sided recentering).
// Requires 2h < hi - lo.
double stencil_center(double v, double h, double lo, double hi);

// u and its input derivatives at one point.
struct FieldDerivs {
  double u = 0.0;
  double dx = 0.0;
  double dt = 0.0;
  double dxx = 0.0;
};

using FieldFn = std::function<double(InputPoint)>;

// Central differences of an arbitrary scalar field. Near-boundary stencils
// recenter inward (one-sided recentering keeps one code path and second-order
// accuracy); u itself is always evaluated at `pt`. Exact for quadratics.
FieldDerivs stencil_derivatives(const FieldFn& f, InputPoint pt,
                                const StencilConfig& s = StencilConfig{},
                                const Domain& domain = Domain{});

// stencil_derivatives applied to the circuit field
// u(x, t) = readout(<Z_q>) under `noise`.
FieldDerivs input_derivatives(const AnsatzSpec& spec,
                              const std::vector<double>& theta, InputPoint pt,
                              const NoiseModel& noise = NoiseModel{},
                              const StencilConfig& s = StencilConfig{},
                              const Readout& readout = Readout{},
                              const Domain& domain = Domain{});

// d u / d theta_i = [u(theta + (pi/2) e_i) - u(theta - (pi/2) e_i)] / 2.
// Exact for expectation values; no truncation error. Throws ConfigError if
// `index` is out of range.
double param_shift_grad_u(const AnsatzSpec& spec,
                          const std::vector<double>& theta, InputPoint pt,
                          const NoiseModel& noise, int index,
                          const Readout& readout = Readout{});

// All-parameter gradients of <Z_q> for each listed qubit at one input point,
// by the same +-pi/2 shift rule. Noiseless circuits use direct statevector
// runs; noisy circuits reuse cached layer prefixes and Heisenberg-evolved
// observables so each shifted evaluation costs one layer application. Both
// paths return the exact parameter-shift value (agreement asserted in tests
// to 1e-12). Result: out[k][i] = d<Z_{qubits[k]}>/d theta_i.
std::vector<std::vector<double>> z_gradients(const AnsatzSpec& spec,
                                             const std::vector<double>& theta,
                                             InputPoint pt,
                                             const NoiseModel& noise,
                                             const std::vector<int>& qubits);

// Exact chain-rule gradient of the composite loss
//   L = L_data + lambda * L_phys.
// The loss is an explicit polynomial in circuit field values at a finite set
// of stencil/collocation points; dL/d theta_i is assembled from the
// closed-form partials dL/du(q) times the parameter-shift gradient of u at
// each point q. Deterministic ordered reduction, independent of evaluation
// schedule. When `total_out` is non-null it receives the loss value itself
// (the forward field evaluations are shared, so this is free).
std::vector<double> loss_gradient(const AnsatzSpec& spec,
                                  const std::vector<double>& theta,
                                  const PdeProblem& problem,
                                  const NoiseModel& noise,
                                  const StencilConfig& s = StencilConfig{},
                                  double* total_out = nullptr);

}  // namespace qempde

#endif  // QEMPDE_GRADIENTS_HPP_
