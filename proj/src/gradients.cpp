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

#include "qempde/gradients.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <map>
#include <utility>

#include "qempde/common.hpp"
#include "qempde/pde.hpp"

namespace qempde {

namespace {

constexpr double kHalfPi = 1.57079632679489661923;

}  // namespace

void Domain::validate() const {
  if (!(x_lo < x_hi) || !(t_lo < t_hi)) {
    throw ConfigError("degenerate input domain");
  }
}

void StencilConfig::validate() const {
  if (!(h1 > 0.0) || !(h1 < 0.1) || !(h2 > 0.0) || !(h2 < 0.1)) {
    throw ConfigError("stencil steps must lie in (0, 0.1)");
  }
}

double stencil_center(double v, double h, double lo, double hi) {
  if (2.0 * h >= hi - lo) {
    throw ConfigError("stencil does not fit inside the domain");
  }
  if (v - h < lo) return lo + h;
  if (v + h > hi) return hi - h;
  return v;
}

FieldDerivs stencil_derivatives(const FieldFn& f, InputPoint pt,
                                const StencilConfig& s, const Domain& domain) {
  s.validate();
  domain.validate();
  const double xc1 = stencil_center(pt.x, s.h1, domain.x_lo, domain.x_hi);
  const double tc1 = stencil_center(pt.t, s.h1, domain.t_lo, domain.t_hi);
  const double xc2 = stencil_center(pt.x, s.h2, domain.x_lo, domain.x_hi);
  FieldDerivs d;
  d.u = f(pt);
  d.dx = (f({xc1 + s.h1, pt.t}) - f({xc1 - s.h1, pt.t})) / (2.0 * s.h1);
  d.dt = (f({pt.x, tc1 + s.h1}) - f({pt.x, tc1 - s.h1})) / (2.0 * s.h1);
  const double center = xc2 == pt.x ? d.u : f({xc2, pt.t});
  d.dxx = (f({xc2 + s.h2, pt.t}) - 2.0 * center + f({xc2 - s.h2, pt.t})) /
          (s.h2 * s.h2);
  return d;
}

FieldDerivs input_derivatives(const AnsatzSpec& spec,
                              const std::vector<double>& theta, InputPoint pt,
                              const NoiseModel& noise, const StencilConfig& s,
                              const Readout& readout, const Domain& domain) {
  return stencil_derivatives(
      [&](InputPoint q) { return evaluate_u(spec, theta, q, noise, readout); },
      pt, s, domain);
}

double param_shift_grad_u(const AnsatzSpec& spec,
                          const std::vector<double>& theta, InputPoint pt,
                          const NoiseModel& noise, int index,
                          const Readout& readout) {
  spec.validate();
  if (index < 0 || index >= spec.param_count()) {
    throw ConfigError("parameter index out of range");
  }
  std::vector<double> shifted = theta;
  shifted[static_cast<std::size_t>(index)] = theta[index] + kHalfPi;
  const double plus = evaluate_u(spec, shifted, pt, noise, readout);
  shifted[static_cast<std::size_t>(index)] = theta[index] - kHalfPi;
  const double minus = evaluate_u(spec, shifted, pt, noise, readout);
  return 0.5 * (plus - minus);
}

namespace {

DensityMatrix z_observable(int num_qubits, int qubit) {
  const Eigen::Index d = Eigen::Index{1} << num_qubits;
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(d, d);
  const Eigen::Index bit = Eigen::Index{1} << (num_qubits - 1 - qubit);
  for (Eigen::Index i = 0; i < d; ++i) m(i, i) = (i & bit) ? -1.0 : 1.0;
  return DensityMatrix(num_qubits, std::move(m));
}

// Tr(O rho) = sum_ij O_ij rho_ji; real for Hermitian pairs.
double hs_trace(const DensityMatrix& obs, const DensityMatrix& rho) {
  return obs.matrix().cwiseProduct(rho.matrix().transpose()).sum().real();
}

// Cached parameter-shift engine for noisy circuits. Per layer boundary k it
// holds the forward state (k layers applied) and, per readout qubit, the
// observable pulled back through layers L..k+1 in the Heisenberg picture, so
//   <Z_q>(theta with theta_i shifted) = Tr(obs[q][k+1], Layer_k^shifted(fwd[k]))
// costs one layer application instead of a full circuit run. The per-wire
// base states additionally pre-apply every unshifted rotation of the layer
// (single-qubit gates on distinct wires commute), leaving one fused rotation,
// the CNOT chain and the noise channels per shifted evaluation.
class ShiftEngine {
 public:
  ShiftEngine(const AnsatzSpec& spec, const std::vector<double>& theta,
              InputPoint pt, const NoiseModel& noise,
              const std::vector<int>& qubits)
      : spec_(spec), theta_(theta), pt_(pt), noise_(noise), qubits_(qubits) {
    const int layers = spec.num_layers;
    const int n = spec.num_qubits;
    forward_.reserve(static_cast<std::size_t>(layers) + 1);
    forward_.push_back(DensityMatrix::zero_state(n));
    for (int layer = 0; layer < layers; ++layer) {
      DensityMatrix next = forward_.back();
      apply_circuit_layer(next, spec_, theta_, pt_, layer, noise_);
      forward_.push_back(std::move(next));
    }
    for (int q : qubits) {
      std::vector<DensityMatrix> back;
      back.reserve(static_cast<std::size_t>(layers) + 1);
      back.push_back(z_observable(n, q));
      for (int layer = layers - 1; layer >= 0; --layer) {
        DensityMatrix prev = back.back();
        apply_circuit_layer_adjoint(prev, spec_, theta_, pt_, layer, noise_);
        back.push_back(std::move(prev));
      }
      std::reverse(back.begin(), back.end());
      backward_.push_back(std::move(back));
    }
    // base_[layer][wire]: forward_[layer] with every other wire's fused
    // rotation already applied.
    base_.resize(static_cast<std::size_t>(layers));
    for (int layer = 0; layer < layers; ++layer) {
      auto& row = base_[static_cast<std::size_t>(layer)];
      row.reserve(static_cast<std::size_t>(n));
      for (int wire = 0; wire < n; ++wire) {
        DensityMatrix sigma = forward_[static_cast<std::size_t>(layer)];
        for (int other = 0; other < n; ++other) {
          if (other == wire) continue;
          sigma.apply_single_qubit(
              fused_rotation(spec_, theta_, pt_, layer, other), other);
        }
        row.push_back(std::move(sigma));
      }
    }
  }

  // <Z_q> with theta_index shifted by delta, for every tracked qubit.
  std::vector<double> shifted_values(int index, double delta) const {
    const ParamSite site = param_site(spec_, index);
    DensityMatrix sigma =
        base_[static_cast<std::size_t>(site.layer)]
             [static_cast<std::size_t>(site.qubit)];
    sigma.apply_single_qubit(
        fused_rotation_shifted(spec_, theta_, pt_, site.layer, site.qubit,
                               index, delta),
        site.qubit);
    for (int q = 0; q + 1 < spec_.num_qubits; ++q) sigma.apply_cnot(q, q + 1);
    apply_noise_all_qubits(sigma, noise_);
    std::vector<double> vals;
    vals.reserve(qubits_.size());
    for (std::size_t k = 0; k < qubits_.size(); ++k) {
      vals.push_back(hs_trace(
          backward_[k][static_cast<std::size_t>(site.layer) + 1], sigma));
    }
    return vals;
  }

  std::vector<std::vector<double>> gradients() const {
    const int params = spec_.param_count();
    std::vector<std::vector<double>> out(
        qubits_.size(), std::vector<double>(static_cast<std::size_t>(params)));
    parallel_for(0, params, [&](std::int64_t i) {
      const auto plus = shifted_values(static_cast<int>(i), kHalfPi);
      const auto minus = shifted_values(static_cast<int>(i), -kHalfPi);
      for (std::size_t k = 0; k < qubits_.size(); ++k) {
        out[k][static_cast<std::size_t>(i)] = 0.5 * (plus[k] - minus[k]);
      }
    });
    return out;
  }

 private:
  const AnsatzSpec& spec_;
  const std::vector<double>& theta_;
  InputPoint pt_;
  const NoiseModel& noise_;
  std::vector<int> qubits_;
  std::vector<DensityMatrix> forward_;
  std::vector<std::vector<DensityMatrix>> backward_;  // [qubit slot][boundary]
  std::vector<std::vector<DensityMatrix>> base_;      // [layer][wire]
};

}  // namespace

std::vector<std::vector<double>> z_gradients(const AnsatzSpec& spec,
                                             const std::vector<double>& theta,
                                             InputPoint pt,
                                             const NoiseModel& noise,
                                             const std::vector<int>& qubits) {
  spec.validate();
  if (static_cast<int>(theta.size()) != spec.param_count()) {
    throw ConfigError("parameter vector size mismatch");
  }
  for (int q : qubits) {
    if (q < 0 || q >= spec.num_qubits) {
      throw ConfigError("readout qubit out of range");
    }
  }
  const int params = spec.param_count();
  if (noise.enabled()) {
    return ShiftEngine(spec, theta, pt, noise, qubits).gradients();
  }
  // Noiseless: two statevector runs per parameter serve every qubit.
  std::vector<std::vector<double>> out(
      qubits.size(), std::vector<double>(static_cast<std::size_t>(params)));
  parallel_for(0, params, [&](std::int64_t i) {
    std::vector<double> shifted = theta;
    shifted[static_cast<std::size_t>(i)] = theta[i] + kHalfPi;
    const StateVector plus = run_statevector(spec, shifted, pt);
    shifted[static_cast<std::size_t>(i)] = theta[i] - kHalfPi;
    const StateVector minus = run_statevector(spec, shifted, pt);
    for (std::size_t k = 0; k < qubits.size(); ++k) {
      out[k][static_cast<std::size_t>(i)] =
          0.5 * (plus.expectation_z(qubits[k]) -
                 minus.expectation_z(qubits[k]));
    }
  });
  return out;
}

std::vector<double> loss_gradient(const AnsatzSpec& spec,
                                  const std::vector<double>& theta,
                                  const PdeProblem& problem,
                                  const NoiseModel& noise,
                                  const StencilConfig& s, double* total_out) {
  spec.validate();
  problem.validate();
  for (const auto& r : problem.readouts) {
    if (r.qubit < 0 || r.qubit >= spec.num_qubits) {
      throw ConfigError("readout qubit out of range");
    }
  }

  // Value pass: the loss as a polynomial in field values, with closed-form
  // partials dL/dv. Field evaluations are memoized per point.
  using Key = std::pair<std::uint64_t, std::uint64_t>;
  const auto key_of = [](InputPoint pt) {
    return Key{std::bit_cast<std::uint64_t>(pt.x),
               std::bit_cast<std::uint64_t>(pt.t)};
  };
  std::map<Key, std::vector<double>> value_cache;
  const auto field = [&](int f, InputPoint q) {
    auto it = value_cache.find(key_of(q));
    if (it == value_cache.end()) {
      it = value_cache
               .emplace(key_of(q),
                        evaluate_fields(spec, theta, q, noise,
                                        problem.readouts))
               .first;
    }
    return it->second[static_cast<std::size_t>(f)];
  };
  std::vector<LossPartial> partials;
  const LossParts parts = assemble_loss(problem, field, s, &partials);
  if (total_out != nullptr) *total_out = parts.total(problem.lambda);

  // Merge repeated (field, point) reads; the map key gives a deterministic
  // accumulation order independent of evaluation schedule.
  struct PointEntry {
    InputPoint pt;
    std::vector<double> weight;  // per field
  };
  std::map<Key, PointEntry> merged;
  const auto fields = static_cast<std::size_t>(problem.field_count());
  for (const auto& p : partials) {
    auto [it, inserted] = merged.try_emplace(key_of(p.pt));
    if (inserted) {
      it->second.pt = p.pt;
      it->second.weight.assign(fields, 0.0);
    }
    it->second.weight[static_cast<std::size_t>(p.field)] += p.weight;
  }

  std::vector<int> qubits;
  qubits.reserve(fields);
  for (const auto& r : problem.readouts) qubits.push_back(r.qubit);

  std::vector<double> grad(static_cast<std::size_t>(spec.param_count()), 0.0);
  for (const auto& [key, entry] : merged) {
    (void)key;
    const bool live = std::any_of(entry.weight.begin(), entry.weight.end(),
                                  [](double w) { return w != 0.0; });
    if (!live) continue;
    const auto dz = z_gradients(spec, theta, entry.pt, noise, qubits);
    for (std::size_t f = 0; f < fields; ++f) {
      const double w = entry.weight[f] * problem.readouts[f].scale;
      if (w == 0.0) continue;
      for (std::size_t i = 0; i < grad.size(); ++i) {
        grad[i] += w * dz[f][i];
      }
    }
  }
  return grad;
}

}  // namespace qempde
