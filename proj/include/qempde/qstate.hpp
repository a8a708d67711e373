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
// Exact n-qubit density-matrix state with in-place local gate and channel
// application. Dense storage, no approximations: every operation below is the
// textbook linear map evaluated exactly, so results are reproducible to
// floating-point roundoff.
//
// Conventions (fixed project-wide):
//  * Basis index bit layout: qubit 0 is the MOST significant bit. For n = 2,
//    basis state |q0 q1> = |10> has index 2.
//  * Single-qubit gates are applied as rho -> U rho U^dag via two passes of
//    2x2 block updates (row pairs, then column pairs); cost O(4^n), never via
//    a 2^n x 2^n matrix product.
//  * Channels are applied as rho -> sum_k E_k rho E_k^dag.

#ifndef QEMPDE_QSTATE_HPP_
#define QEMPDE_QSTATE_HPP_

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "qempde/common.hpp"

namespace qempde {

using Matrix2 = Eigen::Matrix2cd;

// A set of Kraus operators for a single-qubit channel, checked for
// completeness (sum_k E_k^dag E_k = I within 1e-12) at construction.
struct KrausSet {
  std::vector<Matrix2> ops;
  std::string label;  // "depolarizing", "amplitude_damping", "bit_flip", ...

  KrausSet() = default;
  KrausSet(std::vector<Matrix2> operators, std::string name);
};

// One circuit gate with its angle resolved. Rotations carry one target qubit
// and an angle; CNOT carries control+target and no angle.
struct GateOp {
  enum class Kind { rx, ry, rz, cnot };
  Kind kind = Kind::ry;
  int qubit = 0;    // rotation target, or CNOT control
  int target = -1;  // CNOT target, unused for rotations
  double angle = 0.0;

  static GateOp rotation(Kind kind, int qubit, double angle);
  static GateOp cnot(int control, int target);
};

// The 2x2 unitary of a rotation GateOp.
Matrix2 gate_matrix(const GateOp& op);

// Dense density matrix on `num_qubits` qubits. The matrix is kept Hermitian,
// unit-trace and (physically) PSD by construction; `check()` verifies the
// cheap invariants and, in validation mode, PSD-ness as well.
class DensityMatrix {
 public:
  DensityMatrix(int num_qubits, Eigen::MatrixXcd mat);

  // |0...0><0...0| on `num_qubits` qubits. Throws ConfigError unless
  // 1 <= num_qubits <= 12 (dense 2^n x 2^n storage above that is pointless).
  static DensityMatrix zero_state(int num_qubits);

  // rho = |psi><psi| for a unit-norm amplitude vector (used by tests and the
  // pure-state fast paths).
  static DensityMatrix from_statevector(int num_qubits,
                                        const Eigen::VectorXcd& amplitudes);

  int num_qubits() const { return n_; }
  Eigen::Index dim() const { return mat_.rows(); }
  const Eigen::MatrixXcd& matrix() const { return mat_; }
  Eigen::MatrixXcd& matrix() { return mat_; }

  // rho -> U rho U^dag for a single-qubit unitary U on `qubit`.
  void apply_single_qubit(const Matrix2& u, int qubit);

  // rho -> CNOT rho CNOT with the given control/target (distinct qubits).
  void apply_cnot(int control, int target);

  // rho -> sum_k E_k rho E_k^dag.
  void apply_kraus(const KrausSet& channel, int qubit);

  // Fast closed-form updates for the three channels used in the benchmarks.
  // Each is algebraically identical to apply_kraus with the corresponding
  // operator set (asserted in tests) but runs in a single pass.
  void apply_depolarizing(double p, int qubit);
  void apply_amplitude_damping(double gamma, int qubit);
  void apply_bit_flip(double p, int qubit);

  // Pauli conjugation rho -> sigma rho sigma (sigma in {X, Y, Z}), used by the
  // quasi-probability sampler. `pauli` is 1=X, 2=Y, 3=Z.
  void conjugate_pauli(int pauli, int qubit);

  double trace_real() const { return mat_.trace().real(); }

  // <O> = Tr(O rho) for a Pauli string given as per-qubit letters
  // ('I','X','Y','Z'); length must equal num_qubits and at least one letter
  // must be non-identity (an all-identity "observable" is a bookkeeping bug).
  // O(2^n): only entries rho[s, f(s)] with f the X/Y bit-flip map are read.
  // The trace's imaginary part must vanish for Hermitian rho; it is asserted
  // <= 1e-10 and discarded.
  double expectation_pauli(const std::string& pauli_string) const;

  // Convenience: <Z_qubit>.
  double expectation_z(int qubit) const;

  // Measurement distribution in the computational basis (the diagonal).
  Eigen::VectorXd measurement_probabilities() const;

  double purity() const;  // Tr(rho^2), real by Hermiticity.

  // Tr(rho_ideal * rho_noisy) where rho_ideal must be pure
  // (purity >= 1 - 1e-8, else ValidationError). Symmetric in trace but the
  // purity precondition applies to `ideal`.
  static double fidelity_pure(const DensityMatrix& ideal,
                              const DensityMatrix& noisy);

  // Cheap invariants: Hermiticity and unit trace within `tol`; in validation
  // mode additionally min eigenvalue >= -tol. Throws ValidationError.
  void check(double tol = 1e-10) const;

 private:
  int n_;
  Eigen::MatrixXcd mat_;
};

// Pure-state vector used on noiseless paths; same bit conventions.
class StateVector {
 public:
  explicit StateVector(int num_qubits);

  static StateVector zero_state(int num_qubits);

  int num_qubits() const { return n_; }
  Eigen::Index dim() const { return amp_.size(); }
  const Eigen::VectorXcd& amplitudes() const { return amp_; }
  Eigen::VectorXcd& amplitudes() { return amp_; }

  void apply_single_qubit(const Matrix2& u, int qubit);
  void apply_cnot(int control, int target);

  double expectation_z(int qubit) const;
  double expectation_pauli(const std::string& pauli_string) const;

  // <psi| rho |psi>; equals DensityMatrix::fidelity_pure with |psi><psi| as
  // the ideal state but skips forming the outer product.
  double overlap(const DensityMatrix& rho) const;

  DensityMatrix to_density() const;

 private:
  int n_;
  Eigen::VectorXcd amp_;
};

// Standard single-qubit rotation matrices, exp(-i theta sigma / 2).
Matrix2 rx(double theta);
Matrix2 ry(double theta);
Matrix2 rz(double theta);
Matrix2 pauli_matrix(int pauli);  // 0=I, 1=X, 2=Y, 3=Z

// Applies one gate (rotation or CNOT) to either state representation.
void apply_gate(DensityMatrix& rho, const GateOp& op);
void apply_gate(StateVector& psi, const GateOp& op);

}  // namespace qempde

#endif  // QEMPDE_QSTATE_HPP_
