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

#include "qempde/qstate.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <cstdlib>
#include <utility>

namespace qempde {

namespace {

constexpr int kMaxQubits = 12;

void require_qubit_count(int n) {
  if (n < 1 || n > kMaxQubits) {
    throw ConfigError("qubit count must be in [1, " +
                      std::to_string(kMaxQubits) + "], got " +
                      std::to_string(n));
  }
}

void require_qubit_index(int n, int qubit) {
  if (qubit < 0 || qubit >= n) {
    throw ConfigError("qubit index " + std::to_string(qubit) +
                      " out of range for " + std::to_string(n) + " qubits");
  }
}

// Bit position of `qubit` inside a basis index (qubit 0 = most significant).
inline int bit_position(int n, int qubit) { return n - 1 - qubit; }

// Enumerates the i-th basis index whose `mask` bit is clear, i in [0, dim/2).
inline Eigen::Index paired_index(Eigen::Index i, Eigen::Index mask) {
  const Eigen::Index low = i & (mask - 1);
  const Eigen::Index high = (i & ~(mask - 1)) << 1;
  return high | low;
}

}  // namespace

// ---------------------------------------------------------------------------
// KrausSet
// ---------------------------------------------------------------------------

KrausSet::KrausSet(std::vector<Matrix2> operators, std::string name)
    : ops(std::move(operators)), label(std::move(name)) {
  if (ops.empty()) throw ConfigError("Kraus set '" + label + "' is empty");
  Matrix2 sum = Matrix2::Zero();
  for (const auto& e : ops) sum += e.adjoint() * e;
  // Completeness sum_k E_k^dag E_k = I is what makes the map trace preserving;
  // enforce it at construction so a bad channel can never touch a state.
  if ((sum - Matrix2::Identity()).cwiseAbs().maxCoeff() > 1e-12) {
    throw ValidationError("Kraus set '" + label +
                          "' violates completeness (sum E^dag E != I)");
  }
}

// ---------------------------------------------------------------------------
// DensityMatrix
// ---------------------------------------------------------------------------

DensityMatrix::DensityMatrix(int num_qubits, Eigen::MatrixXcd mat)
    : n_(num_qubits), mat_(std::move(mat)) {
  require_qubit_count(n_);
  const Eigen::Index d = Eigen::Index{1} << n_;
  if (mat_.rows() != d || mat_.cols() != d) {
    throw ConfigError("density matrix dimension mismatch");
  }
}

DensityMatrix DensityMatrix::zero_state(int num_qubits) {
  require_qubit_count(num_qubits);
  const Eigen::Index d = Eigen::Index{1} << num_qubits;
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(d, d);
  m(0, 0) = cxd(1.0, 0.0);
  return DensityMatrix(num_qubits, std::move(m));
}

DensityMatrix DensityMatrix::from_statevector(
    int num_qubits, const Eigen::VectorXcd& amplitudes) {
  require_qubit_count(num_qubits);
  const Eigen::Index d = Eigen::Index{1} << num_qubits;
  if (amplitudes.size() != d) {
    throw ConfigError("statevector dimension mismatch");
  }
  if (std::abs(amplitudes.squaredNorm() - 1.0) > 1e-10) {
    throw ValidationError("statevector is not normalized");
  }
  return DensityMatrix(num_qubits, amplitudes * amplitudes.adjoint());
}

void DensityMatrix::apply_single_qubit(const Matrix2& u, int qubit) {
  require_qubit_index(n_, qubit);
  const Eigen::Index dim = mat_.rows();
  const Eigen::Index mask = Eigen::Index{1} << bit_position(n_, qubit);
  const Eigen::Index half = dim / 2;
  const cxd u00 = u(0, 0), u01 = u(0, 1), u10 = u(1, 0), u11 = u(1, 1);

  // Pass 1: rho -> U rho (update row pairs within each column).
  for (Eigen::Index c = 0; c < dim; ++c) {
    cxd* col = mat_.data() + c * dim;  // column-major storage
    for (Eigen::Index i = 0; i < half; ++i) {
      const Eigen::Index r0 = paired_index(i, mask);
      const Eigen::Index r1 = r0 | mask;
      const cxd a = col[r0], b = col[r1];
      col[r0] = u00 * a + u01 * b;
      col[r1] = u10 * a + u11 * b;
    }
  }
  // Pass 2: rho -> rho U^dag (update column pairs within each row). Work
  // column-pair-wise so both touched columns stream contiguously.
  const cxd c00 = std::conj(u00), c01 = std::conj(u01);
  const cxd c10 = std::conj(u10), c11 = std::conj(u11);
  for (Eigen::Index i = 0; i < half; ++i) {
    const Eigen::Index col0 = paired_index(i, mask);
    const Eigen::Index col1 = col0 | mask;
    cxd* p0 = mat_.data() + col0 * dim;
    cxd* p1 = mat_.data() + col1 * dim;
    for (Eigen::Index r = 0; r < dim; ++r) {
      const cxd a = p0[r], b = p1[r];
      p0[r] = a * c00 + b * c01;
      p1[r] = a * c10 + b * c11;
    }
  }
}

void DensityMatrix::apply_cnot(int control, int target) {
  require_qubit_index(n_, control);
  require_qubit_index(n_, target);
  if (control == target) {
    throw ConfigError("CNOT control and target must differ");
  }
  const Eigen::Index dim = mat_.rows();
  const Eigen::Index cmask = Eigen::Index{1} << bit_position(n_, control);
  const Eigen::Index tmask = Eigen::Index{1} << bit_position(n_, target);

  // CNOT is the basis permutation i -> i ^ tmask on indices with the control
  // bit set; conjugation swaps the corresponding rows, then columns.
  for (Eigen::Index c = 0; c < dim; ++c) {
    cxd* col = mat_.data() + c * dim;
    for (Eigen::Index r = 0; r < dim; ++r) {
      if ((r & cmask) && !(r & tmask)) std::swap(col[r], col[r | tmask]);
    }
  }
  for (Eigen::Index c = 0; c < dim; ++c) {
    if ((c & cmask) && !(c & tmask)) {
      mat_.col(c).swap(mat_.col(c | tmask));
    }
  }
}

void DensityMatrix::apply_kraus(const KrausSet& channel, int qubit) {
  require_qubit_index(n_, qubit);
  // sum_k E_k rho E_k^dag accumulated from per-operator single-qubit updates.
  Eigen::MatrixXcd acc = Eigen::MatrixXcd::Zero(mat_.rows(), mat_.cols());
  Eigen::MatrixXcd scratch;
  for (const auto& e : channel.ops) {
    scratch = mat_;
    DensityMatrix view(n_, std::move(scratch));
    view.apply_single_qubit(e, qubit);
    acc += view.matrix();
  }
  mat_ = std::move(acc);
}

void DensityMatrix::apply_depolarizing(double p, int qubit) {
  require_qubit_index(n_, qubit);
  if (p < 0.0 || p > 1.0) throw ConfigError("depolarizing p must be in [0, 1]");
  const Eigen::Index dim = mat_.rows();
  const Eigen::Index mask = Eigen::Index{1} << bit_position(n_, qubit);
  const Eigen::Index half = dim / 2;
  // Closed form of (1-p) rho + p/3 (X rho X + Y rho Y + Z rho Z) per 2x2
  // block: populations mix through the bit-flipped entry, coherences shrink.
  const double keep = 1.0 - 2.0 * p / 3.0;   // same-bit entries
  const double mix = 2.0 * p / 3.0;          // bit-flipped partner weight
  const double shrink = 1.0 - 4.0 * p / 3.0; // differing-bit entries
  for (Eigen::Index i = 0; i < half; ++i) {
    const Eigen::Index c0 = paired_index(i, mask);
    const Eigen::Index c1 = c0 | mask;
    cxd* p0 = mat_.data() + c0 * dim;
    cxd* p1 = mat_.data() + c1 * dim;
    for (Eigen::Index j = 0; j < half; ++j) {
      const Eigen::Index r0 = paired_index(j, mask);
      const Eigen::Index r1 = r0 | mask;
      const cxd m00 = p0[r0], m01 = p1[r0], m10 = p0[r1], m11 = p1[r1];
      p0[r0] = keep * m00 + mix * m11;
      p1[r1] = keep * m11 + mix * m00;
      p1[r0] = shrink * m01;
      p0[r1] = shrink * m10;
    }
  }
}

void DensityMatrix::apply_amplitude_damping(double gamma, int qubit) {
  require_qubit_index(n_, qubit);
  if (gamma < 0.0 || gamma > 1.0) {
    throw ConfigError("amplitude damping gamma must be in [0, 1]");
  }
  const Eigen::Index dim = mat_.rows();
  const Eigen::Index mask = Eigen::Index{1} << bit_position(n_, qubit);
  const Eigen::Index half = dim / 2;
  const double s = std::sqrt(1.0 - gamma);
  // E0 = diag(1, s), E1 = sqrt(gamma) |0><1|: excited population relaxes into
  // the ground entry, coherences pick up one factor of s per excited index.
  for (Eigen::Index i = 0; i < half; ++i) {
    const Eigen::Index c0 = paired_index(i, mask);
    const Eigen::Index c1 = c0 | mask;
    cxd* p0 = mat_.data() + c0 * dim;
    cxd* p1 = mat_.data() + c1 * dim;
    for (Eigen::Index j = 0; j < half; ++j) {
      const Eigen::Index r0 = paired_index(j, mask);
      const Eigen::Index r1 = r0 | mask;
      const cxd m00 = p0[r0], m01 = p1[r0], m10 = p0[r1], m11 = p1[r1];
      p0[r0] = m00 + gamma * m11;
      p1[r0] = s * m01;
      p0[r1] = s * m10;
      p1[r1] = (1.0 - gamma) * m11;
    }
  }
}

void DensityMatrix::apply_bit_flip(double p, int qubit) {
  require_qubit_index(n_, qubit);
  if (p < 0.0 || p > 1.0) throw ConfigError("bit flip p must be in [0, 1]");
  const Eigen::Index dim = mat_.rows();
  const Eigen::Index mask = Eigen::Index{1} << bit_position(n_, qubit);
  const Eigen::Index half = dim / 2;
  const double q = 1.0 - p;
  // (1-p) rho + p X rho X: every entry blends with its double-bit-flip image.
  for (Eigen::Index i = 0; i < half; ++i) {
    const Eigen::Index c0 = paired_index(i, mask);
    const Eigen::Index c1 = c0 | mask;
    cxd* p0 = mat_.data() + c0 * dim;
    cxd* p1 = mat_.data() + c1 * dim;
    for (Eigen::Index j = 0; j < half; ++j) {
      const Eigen::Index r0 = paired_index(j, mask);
      const Eigen::Index r1 = r0 | mask;
      const cxd m00 = p0[r0], m01 = p1[r0], m10 = p0[r1], m11 = p1[r1];
      p0[r0] = q * m00 + p * m11;
      p1[r1] = q * m11 + p * m00;
      p1[r0] = q * m01 + p * m10;
      p0[r1] = q * m10 + p * m01;
    }
  }
}

void DensityMatrix::conjugate_pauli(int pauli, int qubit) {
  require_qubit_index(n_, qubit);
  if (pauli < 0 || pauli > 3) throw ConfigError("pauli must be in {0,1,2,3}");
  if (pauli == 0) return;
  const Eigen::Index dim = mat_.rows();
  const Eigen::Index mask = Eigen::Index{1} << bit_position(n_, qubit);
  const Eigen::Index half = dim / 2;
  for (Eigen::Index i = 0; i < half; ++i) {
    const Eigen::Index c0 = paired_index(i, mask);
    const Eigen::Index c1 = c0 | mask;
    cxd* p0 = mat_.data() + c0 * dim;
    cxd* p1 = mat_.data() + c1 * dim;
    for (Eigen::Index j = 0; j < half; ++j) {
      const Eigen::Index r0 = paired_index(j, mask);
      const Eigen::Index r1 = r0 | mask;
      const cxd m00 = p0[r0], m01 = p1[r0], m10 = p0[r1], m11 = p1[r1];
      switch (pauli) {
        case 1:  // X rho X: swap both bits.
          p0[r0] = m11;
          p1[r1] = m00;
          p1[r0] = m10;
          p0[r1] = m01;
          break;
        case 2:  // Y rho Y: swap both bits, negate mixed-bit entries.
          p0[r0] = m11;
          p1[r1] = m00;
          p1[r0] = -m10;
          p0[r1] = -m01;
          break;
        default:  // Z rho Z: negate mixed-bit entries.
          p1[r0] = -m01;
          p0[r1] = -m10;
          break;
      }
    }
  }
}

double DensityMatrix::expectation_pauli(const std::string& pauli_string) const {
  if (static_cast<int>(pauli_string.size()) != n_) {
    throw ConfigError("Pauli string length must equal qubit count");
  }
  if (pauli_string.find_first_not_of('I') == std::string::npos) {
    throw ConfigError("observable must contain a non-identity Pauli factor");
  }
  const Eigen::Index dim = mat_.rows();
  Eigen::Index flip = 0;   // bits toggled by X/Y letters
  Eigen::Index zmask = 0;  // bits contributing a (-1)^bit sign (Z and Y)
  Eigen::Index ymask = 0;  // bits contributing an i/-i phase (Y)
  for (int q = 0; q < n_; ++q) {
    const Eigen::Index m = Eigen::Index{1} << bit_position(n_, q);
    switch (pauli_string[static_cast<size_t>(q)]) {
      case 'I':
        break;
      case 'X':
        flip |= m;
        break;
      case 'Y':
        flip |= m;
        ymask |= m;
        zmask |= m;
        break;
      case 'Z':
        zmask |= m;
        break;
      default:
        throw ConfigError("Pauli string may only contain I, X, Y, Z");
    }
  }
  // Tr(O rho) = sum_s O[f(s), s] rho[s, f(s)] with f(s) = s ^ flip. The
  // element O[f(s), s] factorizes per qubit: X gives 1, Z gives (-1)^bit, and
  // Y gives <1|Y|0> = i on a set input bit, <0|Y|1> = -i on a clear one, i.e.
  // a constant i per Y letter times (-1)^bit — which is why Y letters
  // contribute to both zmask (sign) and the global i^k phase below.
  const int y_total = static_cast<int>(__builtin_popcountll(
      static_cast<unsigned long long>(ymask)));
  static const cxd kIPow[4] = {cxd(1, 0), cxd(0, 1), cxd(-1, 0), cxd(0, -1)};
  const cxd y_phase = kIPow[y_total % 4];
  cxd total(0.0, 0.0);
  for (Eigen::Index s = 0; s < dim; ++s) {
    const Eigen::Index t = s ^ flip;
    const int z_par = static_cast<int>(__builtin_popcountll(
                          static_cast<unsigned long long>(s & zmask))) &
                      1;
    total += (z_par ? -y_phase : y_phase) * mat_(s, t);
  }
  if (std::abs(total.imag()) > 1e-10) {
    throw ValidationError("expectation value has non-vanishing imaginary part " +
                          format_full(total.imag()));
  }
  return total.real();
}

double DensityMatrix::expectation_z(int qubit) const {
  require_qubit_index(n_, qubit);
  const Eigen::Index dim = mat_.rows();
  const Eigen::Index mask = Eigen::Index{1} << bit_position(n_, qubit);
  double acc = 0.0;
  for (Eigen::Index s = 0; s < dim; ++s) {
    const double d = mat_(s, s).real();
    acc += (s & mask) ? -d : d;
  }
  return acc;
}

Eigen::VectorXd DensityMatrix::measurement_probabilities() const {
  return mat_.diagonal().real();
}

double DensityMatrix::purity() const {
  // Tr(rho^2) = sum_ij rho_ij conj(rho_ij) for Hermitian rho.
  return mat_.squaredNorm();
}

double DensityMatrix::fidelity_pure(const DensityMatrix& ideal,
                                    const DensityMatrix& noisy) {
  if (ideal.n_ != noisy.n_) {
    throw ConfigError("fidelity operands must have equal qubit counts");
  }
  if (ideal.purity() < 1.0 - 1e-8) {
    throw ValidationError(
        "fidelity_pure requires a pure ideal state (purity >= 1 - 1e-8)");
  }
  // Tr(A B) = sum_ij A_ij B_ji = sum_ij A_ij conj(B_ij) for Hermitian B.
  const cxd t = (ideal.mat_.array() * noisy.mat_.array().conjugate()).sum();
  return t.real();
}

void DensityMatrix::check(double tol) const {
  const double trace_err = std::abs(mat_.trace().real() - 1.0) +
                           std::abs(mat_.trace().imag());
  if (trace_err > tol) {
    throw ValidationError("density matrix trace drifted by " +
                          format_full(trace_err));
  }
  const double herm_err = (mat_ - mat_.adjoint()).cwiseAbs().maxCoeff();
  if (herm_err > tol) {
    throw ValidationError("density matrix Hermiticity violated by " +
                          format_full(herm_err));
  }
  if (validation_mode().load(std::memory_order_relaxed)) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(
        mat_, Eigen::EigenvaluesOnly);
    const double lam_min = es.eigenvalues().minCoeff();
    if (lam_min < -tol) {
      throw ValidationError("density matrix not PSD: min eigenvalue " +
                            format_full(lam_min));
    }
  }
}

// ---------------------------------------------------------------------------
// StateVector
// ---------------------------------------------------------------------------

StateVector::StateVector(int num_qubits) : n_(num_qubits) {
  require_qubit_count(n_);
  amp_ = Eigen::VectorXcd::Zero(Eigen::Index{1} << n_);
  amp_(0) = cxd(1.0, 0.0);
}

StateVector StateVector::zero_state(int num_qubits) {
  return StateVector(num_qubits);
}

void StateVector::apply_single_qubit(const Matrix2& u, int qubit) {
  require_qubit_index(n_, qubit);
  const Eigen::Index dim = amp_.size();
  const Eigen::Index mask = Eigen::Index{1} << bit_position(n_, qubit);
  const Eigen::Index half = dim / 2;
  const cxd u00 = u(0, 0), u01 = u(0, 1), u10 = u(1, 0), u11 = u(1, 1);
  cxd* a = amp_.data();
  for (Eigen::Index i = 0; i < half; ++i) {
    const Eigen::Index r0 = paired_index(i, mask);
    const Eigen::Index r1 = r0 | mask;
    const cxd x = a[r0], y = a[r1];
    a[r0] = u00 * x + u01 * y;
    a[r1] = u10 * x + u11 * y;
  }
}

void StateVector::apply_cnot(int control, int target) {
  require_qubit_index(n_, control);
  require_qubit_index(n_, target);
  if (control == target) {
    throw ConfigError("CNOT control and target must differ");
  }
  const Eigen::Index dim = amp_.size();
  const Eigen::Index cmask = Eigen::Index{1} << bit_position(n_, control);
  const Eigen::Index tmask = Eigen::Index{1} << bit_position(n_, target);
  cxd* a = amp_.data();
  for (Eigen::Index s = 0; s < dim; ++s) {
    if ((s & cmask) && !(s & tmask)) std::swap(a[s], a[s | tmask]);
  }
}

double StateVector::expectation_z(int qubit) const {
  require_qubit_index(n_, qubit);
  const Eigen::Index dim = amp_.size();
  const Eigen::Index mask = Eigen::Index{1} << bit_position(n_, qubit);
  double acc = 0.0;
  for (Eigen::Index s = 0; s < dim; ++s) {
    const double w = std::norm(amp_(s));
    acc += (s & mask) ? -w : w;
  }
  return acc;
}

double StateVector::expectation_pauli(const std::string& pauli_string) const {
  // Delegate through the density representation; only used on cold paths.
  return to_density().expectation_pauli(pauli_string);
}

double StateVector::overlap(const DensityMatrix& rho) const {
  if (rho.num_qubits() != n_) {
    throw ConfigError("overlap operands must have equal qubit counts");
  }
  const cxd v = (amp_.adjoint() * rho.matrix() * amp_)(0, 0);
  return v.real();
}

DensityMatrix StateVector::to_density() const {
  return DensityMatrix::from_statevector(n_, amp_);
}

// ---------------------------------------------------------------------------
// Gate matrices
// ---------------------------------------------------------------------------

Matrix2 rx(double theta) {
  const double c = std::cos(theta / 2.0), s = std::sin(theta / 2.0);
  Matrix2 m;
  m << cxd(c, 0), cxd(0, -s), cxd(0, -s), cxd(c, 0);
  return m;
}

Matrix2 ry(double theta) {
  const double c = std::cos(theta / 2.0), s = std::sin(theta / 2.0);
  Matrix2 m;
  m << cxd(c, 0), cxd(-s, 0), cxd(s, 0), cxd(c, 0);
  return m;
}

Matrix2 rz(double theta) {
  const double c = std::cos(theta / 2.0), s = std::sin(theta / 2.0);
  Matrix2 m;
  m << cxd(c, -s), cxd(0, 0), cxd(0, 0), cxd(c, s);
  return m;
}

GateOp GateOp::rotation(Kind kind, int qubit, double angle) {
  if (kind == Kind::cnot) throw ConfigError("CNOT is not a rotation");
  GateOp op;
  op.kind = kind;
  op.qubit = qubit;
  op.angle = angle;
  return op;
}

GateOp GateOp::cnot(int control, int target) {
  if (control == target) throw ConfigError("CNOT control and target must differ");
  GateOp op;
  op.kind = Kind::cnot;
  op.qubit = control;
  op.target = target;
  return op;
}

Matrix2 gate_matrix(const GateOp& op) {
  switch (op.kind) {
    case GateOp::Kind::rx:
      return rx(op.angle);
    case GateOp::Kind::ry:
      return ry(op.angle);
    case GateOp::Kind::rz:
      return rz(op.angle);
    case GateOp::Kind::cnot:
      break;
  }
  throw ConfigError("CNOT has no 2x2 gate matrix");
}

void apply_gate(DensityMatrix& rho, const GateOp& op) {
  if (op.kind == GateOp::Kind::cnot) {
    rho.apply_cnot(op.qubit, op.target);
  } else {
    rho.apply_single_qubit(gate_matrix(op), op.qubit);
  }
}

void apply_gate(StateVector& psi, const GateOp& op) {
  if (op.kind == GateOp::Kind::cnot) {
    psi.apply_cnot(op.qubit, op.target);
  } else {
    psi.apply_single_qubit(gate_matrix(op), op.qubit);
  }
}

Matrix2 pauli_matrix(int pauli) {
  Matrix2 m;
  switch (pauli) {
    case 0:
      m << 1, 0, 0, 1;
      break;
    case 1:
      m << 0, 1, 1, 0;
      break;
    case 2:
      m << cxd(0, 0), cxd(0, -1), cxd(0, 1), cxd(0, 0);
      break;
    case 3:
      m << 1, 0, 0, -1;
      break;
    default:
      throw ConfigError("pauli index must be in {0,1,2,3}");
  }
  return m;
}

}  // namespace qempde
