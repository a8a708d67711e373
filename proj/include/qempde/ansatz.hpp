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
// Hardware-efficient ansatz for scalar fields u(x, t) on the unit square.
//
// Layer structure (applied left to right), repeated `num_layers` times:
//   1. input encoding (data re-uploading, on by default): RY(pi*x) on
//      even-indexed qubits, RY(pi*t) on odd-indexed qubits;
//   2. parameterized rotations per qubit — unconstrained variant: RY, RZ;
//      constrained variant: RX, RY, RZ;
//   3. a CNOT chain (0,1), (1,2), ..., (n-2, n-1).
// When a noise model is active, one channel acts on every qubit after each
// layer. Encoding gates carry noise like any other gate under per-gate noise
// insertion schemes, but are excluded from parameter and gate counts.
//
// Readout: u = scale * <Z_qubit> + offset.
//
// Parameter layout is layer-major, then qubit, then rotation slot in applied
// order, e.g. unconstrained: theta[layer*2n + qubit*2 + {0:RY, 1:RZ}].

#ifndef QEMPDE_ANSATZ_HPP_
#define QEMPDE_ANSATZ_HPP_

#include <vector>

#include "qempde/noise.hpp"
#include "qempde/qstate.hpp"

namespace qempde {

enum class AnsatzVariant { unconstrained, constrained };

std::string to_string(AnsatzVariant v);
AnsatzVariant ansatz_variant_from_string(const std::string& name);

// A point in the (x, t) input domain.
struct InputPoint {
  double x = 0.0;
  double t = 0.0;
};

struct AnsatzSpec {
  int num_qubits = 6;
  int num_layers = 4;
  AnsatzVariant variant = AnsatzVariant::unconstrained;
  bool input_encoding = true;

  // Rotations per qubit per layer (2 unconstrained, 3 constrained).
  int rotations_per_qubit() const;
  // Trainable parameters: rotations_per_qubit * n * L.
  int param_count() const;
  // Counted gates: parameterized rotations plus (n-1) CNOTs per layer;
  // encoding gates are excluded.
  int gate_count() const;

  void validate() const;  // throws ConfigError on out-of-range fields
};

// Linear readout of one qubit's Z expectation.
struct Readout {
  int qubit = 0;
  double scale = 1.0;
  double offset = 0.0;

  double apply(double z_expectation) const {
    return scale * z_expectation + offset;
  }
};

// Where a parameter lives in the circuit.
struct ParamSite {
  int layer = 0;
  int qubit = 0;
  int slot = 0;  // index into the per-qubit rotation list for the variant
};

ParamSite param_site(const AnsatzSpec& spec, int param_index);
int param_index(const AnsatzSpec& spec, const ParamSite& site);

// One gate of the flattened circuit with its angle resolved, plus circuit
// bookkeeping: which trainable parameter it reads (if any) and whether it is
// an (uncounted) encoding gate.
struct CircuitGate {
  GateOp op;
  int param_index = -1;   // >= 0 for trainable rotations
  bool encoding = false;  // true for data-encoding rotations
  int layer = 0;

  bool counted() const { return !encoding; }
};

// The full circuit in execution order, angles resolved from (theta, pt).
std::vector<CircuitGate> gate_sequence(const AnsatzSpec& spec,
                                       const std::vector<double>& theta,
                                       const InputPoint& pt);

// Fused 2x2 unitary collecting every rotation that acts on `qubit` in `layer`
// (encoding included), i.e. the layer's single-qubit block for that wire.
Matrix2 fused_rotation(const AnsatzSpec& spec, const std::vector<double>& theta,
                       const InputPoint& pt, int layer, int qubit);

// As above but with theta[shift_index] replaced by theta[shift_index]+delta;
// shift_index must belong to (layer, qubit). Used by the parameter-shift
// engine.
Matrix2 fused_rotation_shifted(const AnsatzSpec& spec,
                               const std::vector<double>& theta,
                               const InputPoint& pt, int layer, int qubit,
                               int shift_index, double delta);

// Applies one circuit layer (encoding, fused rotations, CNOT chain) followed
// by the per-layer noise channels. An optional parameter shift
// (theta[shift_index] += delta) is folded into the fused rotation of the
// affected wire; this is the building block of the cached parameter-shift
// engine.
void apply_circuit_layer(DensityMatrix& rho, const AnsatzSpec& spec,
                         const std::vector<double>& theta,
                         const InputPoint& pt, int layer,
                         const NoiseModel& noise, int shift_index = -1,
                         double delta = 0.0);

// Heisenberg-picture adjoint of apply_circuit_layer: evolves an observable
// backwards through the same layer so that, for every state rho,
//   Tr(obs * layer(rho)) == Tr(adjoint_layer(obs) * rho).
void apply_circuit_layer_adjoint(DensityMatrix& obs, const AnsatzSpec& spec,
                                 const std::vector<double>& theta,
                                 const InputPoint& pt, int layer,
                                 const NoiseModel& noise);

// Exact mixed-state execution: returns the final density matrix with the
// configured per-layer noise applied.
DensityMatrix output_state(const AnsatzSpec& spec,
                           const std::vector<double>& theta,
                           const InputPoint& pt, const NoiseModel& noise);

// Noiseless pure-state execution (cheaper by a factor of the Hilbert-space
// dimension; used for ideal references and noiseless training).
StateVector run_statevector(const AnsatzSpec& spec,
                            const std::vector<double>& theta,
                            const InputPoint& pt);

// u(x, t) = readout(<Z_q>) under the given noise model. Dispatches to the
// pure-state path when no noise is configured; both paths agree to 1e-12.
double evaluate_u(const AnsatzSpec& spec, const std::vector<double>& theta,
                  const InputPoint& pt,
                  const NoiseModel& noise = NoiseModel{},
                  const Readout& readout = Readout{});

// Several readouts from one execution (multi-field problems measure
// different qubits of the same state).
std::vector<double> evaluate_fields(const AnsatzSpec& spec,
                                    const std::vector<double>& theta,
                                    const InputPoint& pt,
                                    const NoiseModel& noise,
                                    const std::vector<Readout>& readouts);

}  // namespace qempde

#endif  // QEMPDE_ANSATZ_HPP_
