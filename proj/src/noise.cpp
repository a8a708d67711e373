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

#include "qempde/noise.hpp"

#include <cmath>

namespace qempde {

std::string to_string(ChannelKind kind) {
  switch (kind) {
    case ChannelKind::none:
      return "none";
    case ChannelKind::depolarizing:
      return "depolarizing";
    case ChannelKind::amplitude_damping:
      return "amplitude_damping";
    case ChannelKind::bit_flip:
      return "bit_flip";
  }
  throw ConfigError("unknown channel kind");
}

ChannelKind channel_kind_from_string(const std::string& name) {
  if (name == "none") return ChannelKind::none;
  if (name == "depolarizing") return ChannelKind::depolarizing;
  if (name == "amplitude_damping") return ChannelKind::amplitude_damping;
  if (name == "bit_flip") return ChannelKind::bit_flip;
  throw ConfigError("unknown noise channel '" + name + "'");
}

KrausSet make_depolarizing(double p) {
  if (p < 0.0 || p > 1.0) {
    throw ConfigError("depolarizing strength must be in [0, 1]");
  }
  const double w0 = std::sqrt(1.0 - p);
  const double w = std::sqrt(p / 3.0);
  return KrausSet({w0 * pauli_matrix(0), w * pauli_matrix(1),
                   w * pauli_matrix(2), w * pauli_matrix(3)},
                  "depolarizing");
}

KrausSet make_amplitude_damping(double gamma) {
  if (gamma < 0.0 || gamma > 1.0) {
    throw ConfigError("amplitude damping strength must be in [0, 1]");
  }
  Matrix2 e0, e1;
  e0 << 1.0, 0.0, 0.0, std::sqrt(1.0 - gamma);
  e1 << 0.0, std::sqrt(gamma), 0.0, 0.0;
  return KrausSet({e0, e1}, "amplitude_damping");
}

KrausSet make_bit_flip(double p) {
  if (p < 0.0 || p > 1.0) {
    throw ConfigError("bit flip strength must be in [0, 1]");
  }
  return KrausSet({std::sqrt(1.0 - p) * pauli_matrix(0),
                   std::sqrt(p) * pauli_matrix(1)},
                  "bit_flip");
}

KrausSet make_channel(ChannelKind kind, double strength) {
  switch (kind) {
    case ChannelKind::depolarizing:
      return make_depolarizing(strength);
    case ChannelKind::amplitude_damping:
      return make_amplitude_damping(strength);
    case ChannelKind::bit_flip:
      return make_bit_flip(strength);
    case ChannelKind::none:
      break;
  }
  throw ConfigError("cannot build a Kraus set for channel kind 'none'");
}

double NoiseModel::effective_strength() const {
  if (kind == ChannelKind::none) return 0.0;
  const double eff = strength * scale;
  if (eff < 0.0 || eff > 1.0) {
    throw ConfigError("scaled noise strength " + format_full(eff) +
                      " leaves [0, 1] (strength=" + format_full(strength) +
                      ", scale=" + format_full(scale) + ")");
  }
  return eff;
}

NoiseModel NoiseModel::scaled(double factor) const {
  NoiseModel out = *this;
  out.scale = scale * factor;
  return out;
}

void apply_noise(DensityMatrix& rho, const NoiseModel& model, int qubit) {
  if (!model.enabled()) return;
  const double eff = model.effective_strength();
  switch (model.kind) {
    case ChannelKind::depolarizing:
      rho.apply_depolarizing(eff, qubit);
      return;
    case ChannelKind::amplitude_damping:
      rho.apply_amplitude_damping(eff, qubit);
      return;
    case ChannelKind::bit_flip:
      rho.apply_bit_flip(eff, qubit);
      return;
    case ChannelKind::none:
      return;
  }
}

void apply_noise_all_qubits(DensityMatrix& rho, const NoiseModel& model) {
  if (!model.enabled()) return;
  for (int q = 0; q < rho.num_qubits(); ++q) apply_noise(rho, model, q);
}

void apply_noise_adjoint(DensityMatrix& observable, const NoiseModel& model,
                         int qubit) {
  if (!model.enabled()) return;
  const double eff = model.effective_strength();
  switch (model.kind) {
    case ChannelKind::depolarizing:
      // sum_s (p/3) s O s + (1-p) O is its own adjoint map.
      observable.apply_depolarizing(eff, qubit);
      return;
    case ChannelKind::bit_flip:
      observable.apply_bit_flip(eff, qubit);
      return;
    case ChannelKind::amplitude_damping: {
      // E0^dag O E0 + E1^dag O E1 with E0 = diag(1, s), E1 = sqrt(g)|0><1|:
      // ground-entry weight flows *into* the excited entry, the opposite of
      // the Schroedinger-picture direction.
      auto& m = observable.matrix();
      const Eigen::Index dim = m.rows();
      const Eigen::Index mask = Eigen::Index{1}
                                << (observable.num_qubits() - 1 - qubit);
      const double s = std::sqrt(1.0 - eff);
      for (Eigen::Index c = 0; c < dim; ++c) {
        for (Eigen::Index r = 0; r < dim; ++r) {
          if ((r & mask) == 0 && (c & mask) == 0) {
            const Eigen::Index r1 = r | mask, c1 = c | mask;
            const cxd o00 = m(r, c), o01 = m(r, c1), o10 = m(r1, c),
                      o11 = m(r1, c1);
            m(r, c) = o00;
            m(r, c1) = s * o01;
            m(r1, c) = s * o10;
            m(r1, c1) = (1.0 - eff) * o11 + eff * o00;
          }
        }
      }
      return;
    }
    case ChannelKind::none:
      return;
  }
}

void ReadoutModel::validate() const {
  if (epsilon < 0.0 || epsilon >= 0.5) {
    throw ConfigError("readout flip probability must be in [0, 0.5)");
  }
  if (num_qubits < 1 || num_qubits > 12) {
    throw ConfigError("readout model qubit count must be in [1, 12]");
  }
}

Eigen::MatrixXd confusion_matrix(const ReadoutModel& model) {
  model.validate();
  const Eigen::Index dim = Eigen::Index{1} << model.num_qubits;
  Eigen::MatrixXd m(dim, dim);
  for (Eigen::Index truth = 0; truth < dim; ++truth) {
    for (Eigen::Index obs = 0; obs < dim; ++obs) {
      const int flips = static_cast<int>(__builtin_popcountll(
          static_cast<unsigned long long>(obs ^ truth)));
      m(obs, truth) = std::pow(model.epsilon, flips) *
                      std::pow(1.0 - model.epsilon, model.num_qubits - flips);
    }
  }
  return m;
}

}  // namespace qempde
