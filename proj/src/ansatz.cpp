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

#include "qempde/ansatz.hpp"

#include <cmath>

namespace qempde {

namespace {

constexpr double kPi = 3.14159265358979323846;

// Rotation axes per slot, in applied order.
GateOp::Kind slot_kind(AnsatzVariant v, int slot) {
  if (v == AnsatzVariant::unconstrained) {
    return slot == 0 ? GateOp::Kind::ry : GateOp::Kind::rz;
  }
  switch (slot) {
    case 0:
      return GateOp::Kind::rx;
    case 1:
      return GateOp::Kind::ry;
    default:
      return GateOp::Kind::rz;
  }
}

double encoding_angle(const InputPoint& pt, int qubit) {
  return kPi * (qubit % 2 == 0 ? pt.x : pt.t);
}

void require_theta_size(const AnsatzSpec& spec,
                        const std::vector<double>& theta) {
  if (static_cast<int>(theta.size()) != spec.param_count()) {
    throw ConfigError("parameter vector has " + std::to_string(theta.size()) +
                      " entries, ansatz needs " +
                      std::to_string(spec.param_count()));
  }
}

}  // namespace

std::string to_string(AnsatzVariant v) {
  return v == AnsatzVariant::unconstrained ? "unconstrained" : "constrained";
}

AnsatzVariant ansatz_variant_from_string(const std::string& name) {
  if (name == "unconstrained") return AnsatzVariant::unconstrained;
  if (name == "constrained") return AnsatzVariant::constrained;
  throw ConfigError("unknown ansatz variant '" + name + "'");
}

int AnsatzSpec::rotations_per_qubit() const {
  return variant == AnsatzVariant::unconstrained ? 2 : 3;
}

int AnsatzSpec::param_count() const {
  return rotations_per_qubit() * num_qubits * num_layers;
}

int AnsatzSpec::gate_count() const {
  return param_count() + (num_qubits - 1) * num_layers;
}

void AnsatzSpec::validate() const {
  if (num_qubits < 1 || num_qubits > 12) {
    throw ConfigError("ansatz qubit count must be in [1, 12]");
  }
  if (num_layers < 1) {
    throw ConfigError("ansatz layer count must be >= 1");
  }
}

ParamSite param_site(const AnsatzSpec& spec, int index) {
  const int r = spec.rotations_per_qubit();
  const int per_layer = r * spec.num_qubits;
  if (index < 0 || index >= spec.param_count()) {
    throw ConfigError("parameter index out of range");
  }
  ParamSite site;
  site.layer = index / per_layer;
  site.qubit = (index % per_layer) / r;
  site.slot = index % r;
  return site;
}

int param_index(const AnsatzSpec& spec, const ParamSite& site) {
  const int r = spec.rotations_per_qubit();
  return site.layer * r * spec.num_qubits + site.qubit * r + site.slot;
}

std::vector<CircuitGate> gate_sequence(const AnsatzSpec& spec,
                                       const std::vector<double>& theta,
                                       const InputPoint& pt) {
  spec.validate();
  require_theta_size(spec, theta);
  std::vector<CircuitGate> seq;
  const int r = spec.rotations_per_qubit();
  for (int layer = 0; layer < spec.num_layers; ++layer) {
    if (spec.input_encoding) {
      for (int q = 0; q < spec.num_qubits; ++q) {
        CircuitGate g;
        g.op = GateOp::rotation(GateOp::Kind::ry, q, encoding_angle(pt, q));
        g.encoding = true;
        g.layer = layer;
        seq.push_back(g);
      }
    }
    for (int q = 0; q < spec.num_qubits; ++q) {
      for (int slot = 0; slot < r; ++slot) {
        const int idx = param_index(spec, ParamSite{layer, q, slot});
        CircuitGate g;
        g.op = GateOp::rotation(slot_kind(spec.variant, slot), q,
                                theta[static_cast<size_t>(idx)]);
        g.param_index = idx;
        g.layer = layer;
        seq.push_back(g);
      }
    }
    for (int q = 0; q + 1 < spec.num_qubits; ++q) {
      CircuitGate g;
      g.op = GateOp::cnot(q, q + 1);
      g.layer = layer;
      seq.push_back(g);
    }
  }
  return seq;
}

Matrix2 fused_rotation(const AnsatzSpec& spec, const std::vector<double>& theta,
                       const InputPoint& pt, int layer, int qubit) {
  return fused_rotation_shifted(spec, theta, pt, layer, qubit, -1, 0.0);
}

Matrix2 fused_rotation_shifted(const AnsatzSpec& spec,
                               const std::vector<double>& theta,
                               const InputPoint& pt, int layer, int qubit,
                               int shift_index, double delta) {
  // Matrix product in reverse of applied order: last rotation on the left.
  Matrix2 u = Matrix2::Identity();
  if (spec.input_encoding) {
    u = ry(encoding_angle(pt, qubit));
  }
  const int r = spec.rotations_per_qubit();
  for (int slot = 0; slot < r; ++slot) {
    const int idx = param_index(spec, ParamSite{layer, qubit, slot});
    double angle = theta[static_cast<size_t>(idx)];
    if (idx == shift_index) angle += delta;
    const GateOp::Kind kind = slot_kind(spec.variant, slot);
    switch (kind) {
      case GateOp::Kind::rx:
        u = rx(angle) * u;
        break;
      case GateOp::Kind::ry:
        u = ry(angle) * u;
        break;
      default:
        u = rz(angle) * u;
        break;
    }
  }
  return u;
}

namespace {

// Shared layer walker: applies layer `layer` of the circuit to any state-like
// object exposing apply_single_qubit / apply_cnot.
template <typename State>
void apply_layer(State& state, const AnsatzSpec& spec,
                 const std::vector<double>& theta, const InputPoint& pt,
                 int layer) {
  for (int q = 0; q < spec.num_qubits; ++q) {
    state.apply_single_qubit(fused_rotation(spec, theta, pt, layer, q), q);
  }
  for (int q = 0; q + 1 < spec.num_qubits; ++q) {
    state.apply_cnot(q, q + 1);
  }
}

}  // namespace

void apply_circuit_layer(DensityMatrix& rho, const AnsatzSpec& spec,
                         const std::vector<double>& theta,
                         const InputPoint& pt, int layer,
                         const NoiseModel& noise, int shift_index,
                         double delta) {
  if (shift_index < 0) {
    apply_layer(rho, spec, theta, pt, layer);
  } else {
    const ParamSite site = param_site(spec, shift_index);
    if (site.layer != layer) {
      throw ConfigError("shifted parameter does not belong to this layer");
    }
    for (int q = 0; q < spec.num_qubits; ++q) {
      rho.apply_single_qubit(
          fused_rotation_shifted(spec, theta, pt, layer, q, shift_index, delta),
          q);
    }
    for (int q = 0; q + 1 < spec.num_qubits; ++q) {
      rho.apply_cnot(q, q + 1);
    }
  }
  apply_noise_all_qubits(rho, noise);
}

void apply_circuit_layer_adjoint(DensityMatrix& obs, const AnsatzSpec& spec,
                                 const std::vector<double>& theta,
                                 const InputPoint& pt, int layer,
                                 const NoiseModel& noise) {
  // Reverse of the forward order: noise adjoint, CNOTs backwards (each is a
  // self-adjoint channel), then U^dagger O U for the fused rotations.
  if (noise.enabled()) {
    for (int q = 0; q < spec.num_qubits; ++q) {
      apply_noise_adjoint(obs, noise, q);
    }
  }
  for (int q = spec.num_qubits - 2; q >= 0; --q) {
    obs.apply_cnot(q, q + 1);
  }
  for (int q = 0; q < spec.num_qubits; ++q) {
    obs.apply_single_qubit(
        Matrix2(fused_rotation(spec, theta, pt, layer, q).adjoint()), q);
  }
}

DensityMatrix output_state(const AnsatzSpec& spec,
                           const std::vector<double>& theta,
                           const InputPoint& pt, const NoiseModel& noise) {
  spec.validate();
  require_theta_size(spec, theta);
  DensityMatrix rho = DensityMatrix::zero_state(spec.num_qubits);
  for (int layer = 0; layer < spec.num_layers; ++layer) {
    apply_layer(rho, spec, theta, pt, layer);
    apply_noise_all_qubits(rho, noise);
  }
  return rho;
}

StateVector run_statevector(const AnsatzSpec& spec,
                            const std::vector<double>& theta,
                            const InputPoint& pt) {
  spec.validate();
  require_theta_size(spec, theta);
  StateVector psi = StateVector::zero_state(spec.num_qubits);
  for (int layer = 0; layer < spec.num_layers; ++layer) {
    apply_layer(psi, spec, theta, pt, layer);
  }
  return psi;
}

double evaluate_u(const AnsatzSpec& spec, const std::vector<double>& theta,
                  const InputPoint& pt, const NoiseModel& noise,
                  const Readout& readout) {
  if (readout.qubit < 0 || readout.qubit >= spec.num_qubits) {
    throw ConfigError("readout qubit out of range");
  }
  if (!noise.enabled()) {
    return readout.apply(
        run_statevector(spec, theta, pt).expectation_z(readout.qubit));
  }
  return readout.apply(
      output_state(spec, theta, pt, noise).expectation_z(readout.qubit));
}

std::vector<double> evaluate_fields(const AnsatzSpec& spec,
                                    const std::vector<double>& theta,
                                    const InputPoint& pt,
                                    const NoiseModel& noise,
                                    const std::vector<Readout>& readouts) {
  std::vector<double> out;
  out.reserve(readouts.size());
  if (!noise.enabled()) {
    const StateVector psi = run_statevector(spec, theta, pt);
    for (const auto& r : readouts) {
      out.push_back(r.apply(psi.expectation_z(r.qubit)));
    }
    return out;
  }
  const DensityMatrix rho = output_state(spec, theta, pt, noise);
  for (const auto& r : readouts) {
    out.push_back(r.apply(rho.expectation_z(r.qubit)));
  }
  return out;
}

}  // namespace qempde
