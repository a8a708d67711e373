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
// The three benchmark PDE problems on the unit square (x, t) in [0,1]^2:
//
//   heat          u_t = kappa * u_xx               kappa = 0.1
//                 u(x,0) = sin(pi x), u(0,t) = u(1,t) = 0
//   burgers       u_t + u u_x = nu * u_xx          nu = 0.01/pi
//                 u(x,0) = -sin(pi x), zero boundary values
//   saint_venant  A_t + Q_x = 0  coupled with Manning's law
//                 Q = (1/n) A R_h^{2/3} sqrt(S0),  R_h = A / (b + 2A/b)
//                 rectangular channel: b = 1 m, n = 0.03, S0 = 1e-3,
//                 A(x,0) = 1 + 10% Gaussian bump, inflow A(0,t) = 1
//
// Each problem carries a collocation grid (uniform interior tensor grid), a
// set of data anchors sampled from a reference solution (heat: analytic;
// Burgers / Saint-Venant: fine-grid classical finite-difference solvers built
// in here), and a physics weight lambda. The composite loss is
//   L = L_data + lambda * L_phys,
// with L_data the mean squared anchor error and L_phys the mean squared
// stencil residual over the collocation grid (Saint-Venant: mean of
// r1^2 + (r2/Q_scale)^2, with Q_scale the Manning discharge at unit area so
// the two residuals are comparable magnitudes).

#ifndef QEMPDE_PDE_HPP_
#define QEMPDE_PDE_HPP_

#include <functional>
#include <string>
#include <vector>

#include "qempde/ansatz.hpp"
#include "qempde/gradients.hpp"

namespace qempde {

enum class PdeKind { heat, burgers, saint_venant };

std::string to_string(PdeKind kind);
PdeKind pde_kind_from_string(const std::string& name);

// One supervised data point: field index (into PdeProblem::readouts), input
// location, target value.
struct DataAnchor {
  int field = 0;
  InputPoint pt;
  double value = 0.0;
};

struct PdeProblem {
  PdeKind kind = PdeKind::heat;

  // Coefficients (only the ones for `kind` are read).
  double kappa = 0.1;          // heat diffusivity, length^2/time
  double nu = 0.01 / 3.14159265358979323846;  // burgers viscosity
  double n_manning = 0.03;     // Manning roughness, s * m^{-1/3}
  double width = 1.0;          // channel width b, m
  double s0 = 1e-3;            // bed slope, dimensionless

  Domain domain;
  int collocation = 16;        // N_c, factors into an n_x x n_t interior grid
  // When non-empty, these points replace the derived collocation grid
  // (minibatch training and custom sampling schemes use this).
  std::vector<InputPoint> collocation_points;
  std::vector<DataAnchor> anchors;
  double lambda = 1.0;         // physics weight, >= 0

  // How circuit qubits map to physical fields: one readout for heat/burgers
  // (u = <Z_0>), two for saint_venant (A = 1 + 0.5 <Z_0>,
  // Q = Q_scale * (1 + 0.5 <Z_1>)).
  std::vector<Readout> readouts;

  int field_count() const { return static_cast<int>(readouts.size()); }

  // Manning discharge at unit area: nondimensionalizes the momentum residual
  // so r1 and r2 are comparable magnitudes. 1 for single-field problems.
  double q_scale() const;

  void validate() const;  // throws ConfigError on violated invariants
};

// Benchmark problem with default coefficients, N_c collocation points and 16
// reference-solution anchors.
PdeProblem make_problem(PdeKind kind, int collocation = 16,
                        double lambda = 1.0);

// Uniform tensor grid over the interior of the domain (no boundary points),
// ordered x-major then t, identical across calls. N_c must factor into
// n_x x n_t with both >= 2 (n_x the largest divisor <= sqrt(N_c)). An
// explicit `collocation_points` list overrides the derived grid.
std::vector<InputPoint> collocation_grid(const PdeProblem& problem);

// --- pointwise residuals -------------------------------------------------

// u_t - kappa * u_xx (the field value itself does not enter the linear
// diffusion residual; it is accepted for signature uniformity).
double residual_heat(double u, double dt_u, double dxx_u, double kappa);

// u_t + u * u_x - nu * u_xx.
double residual_burgers(double u, double dt_u, double dx_u, double dxx_u,
                        double nu);

// Hydraulic radius of a rectangular channel: R_h = A / (b + 2A/b).
double hydraulic_radius(double area, double width);

// Manning discharge Q(A) = (1/n) A R_h(A)^{2/3} sqrt(S0), and its derivative
// dQ/dA (used by the loss chain rule and the kinematic reference solver).
double manning_discharge(double area, double n_manning, double width,
                         double s0);
double manning_discharge_dA(double area, double n_manning, double width,
                            double s0);

struct SaintVenantResidual {
  double r1 = 0.0;  // mass conservation: A_t + Q_x
  double r2 = 0.0;  // momentum closure:  Q - Manning(A)  (dimensional)
  bool dry = false; // area was clamped to A_min
};

// Wet-channel threshold: residuals below this area are evaluated at the
// clamp and flagged dry.
inline constexpr double kMinArea = 1e-6;

SaintVenantResidual residual_saint_venant(double area, double discharge,
                                          double dt_area, double dx_discharge,
                                          double n_manning, double width,
                                          double s0);

// --- composite loss ------------------------------------------------------

struct LossParts {
  double data = 0.0;     // mean squared anchor error
  double physics = 0.0;  // mean squared residual over the collocation grid
  bool dry_state = false;

  double total(double lambda) const { return data + lambda * physics; }
};

// Closed-form partial of the total loss with respect to one evaluated field
// value: dL/dv at (field, pt). Repeated (field, pt) pairs accumulate.
struct LossPartial {
  int field = 0;
  InputPoint pt;
  double weight = 0.0;
};

// Evaluates the composite loss as an explicit polynomial in field values
// supplied by `field(field_index, pt)`; when `partials` is non-null, also
// emits dL_total/dv for every value the polynomial reads. This is the single
// code path behind physics_loss, total_loss and loss_gradient, so the value
// and its gradient always refer to the same discretization.
LossParts assemble_loss(const PdeProblem& problem,
                        const std::function<double(int, InputPoint)>& field,
                        const StencilConfig& s,
                        std::vector<LossPartial>* partials);

// Composite loss of the circuit field under `noise`. Field values are
// memoized per point; multi-field problems read all fields from one
// execution.
LossParts loss_parts(const AnsatzSpec& spec, const std::vector<double>& theta,
                     const PdeProblem& problem, const NoiseModel& noise,
                     const StencilConfig& s = StencilConfig{});

// Mean of squared residual(s) over the collocation grid; >= 0.
double physics_loss(const AnsatzSpec& spec, const std::vector<double>& theta,
                    const PdeProblem& problem, const NoiseModel& noise,
                    const StencilConfig& s = StencilConfig{});

// L_data + lambda * L_phys; >= 0.
double total_loss(const AnsatzSpec& spec, const std::vector<double>& theta,
                  const PdeProblem& problem, const NoiseModel& noise,
                  const StencilConfig& s = StencilConfig{});

// --- reference solutions -------------------------------------------------

// Reference solution tabulated on a uniform (x, t) grid spanning the domain
// (boundaries included), bilinearly interpolated between nodes.
//   heat:          analytic e^{-kappa pi^2 t} sin(pi x)           (1 field)
//   burgers:       conservative Lax-Friedrichs + explicit viscosity (1 field)
//   saint_venant:  kinematic-wave upwind for A; Q via Manning      (2 fields)
struct ReferenceSolution {
  PdeKind kind = PdeKind::heat;
  Domain domain;
  int nx = 0;  // grid nodes along x (boundaries included)
  int nt = 0;  // grid nodes along t
  std::vector<std::vector<double>> values;  // [field][it * nx + ix]

  int field_count() const { return static_cast<int>(values.size()); }
  double at(int field, double x, double t) const;
};

// Computed once per kind and cached in-process.
const ReferenceSolution& reference_solution(PdeKind kind);

// Columnar CSV persistence (one file per field: header `x,t,value`), so runs
// can reuse the oracle output instead of recomputing it.
void write_reference_csv(const ReferenceSolution& ref,
                         const std::string& directory);
ReferenceSolution load_reference_csv(PdeKind kind,
                                     const std::string& directory);

// `count` anchors on a uniform interior grid, valued from the reference
// solution. Heat/Burgers anchor u; Saint-Venant anchors the area field.
std::vector<DataAnchor> reference_anchors(PdeKind kind, int count = 16);

}  // namespace qempde

#endif  // QEMPDE_PDE_HPP_
