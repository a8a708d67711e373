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

#include <doctest.h>

#include <cmath>

#include "oracle.hpp"
#include "qempde/pde.hpp"

using namespace qempde;

namespace {

constexpr double kPi = 3.14159265358979323846;

std::vector<double> random_theta(const AnsatzSpec& spec, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<double> theta(static_cast<size_t>(spec.param_count()));
  for (auto& v : theta) v = rng.uniform(-3.0, 3.0);
  return theta;
}

// d/d theta_i of evaluate_u by central finite differences.
double fd_grad_u(const AnsatzSpec& spec, const std::vector<double>& theta,
                 InputPoint pt, const NoiseModel& noise, int index,
                 double step) {
  return oracle::central_difference(
      [&](double v) {
        std::vector<double> t = theta;
        t[static_cast<size_t>(index)] = v;
        return evaluate_u(spec, t, pt, noise);
      },
      theta[static_cast<size_t>(index)], step);
}

}  // namespace

TEST_SUITE("gradients") {

TEST_CASE("single rotation gradient matches the analytic derivative") {
  AnsatzSpec spec{1, 1, AnsatzVariant::unconstrained, false};
  // u = <Z> after RY(a) RZ(b) = cos(a); RZ leaves <Z> unchanged.
  std::vector<double> theta{0.0, 0.4};
  CHECK(param_shift_grad_u(spec, theta, {0.5, 0.5}, NoiseModel{}, 0) ==
        doctest::Approx(0.0).epsilon(1e-14));
  theta[0] = kPi / 2.0;
  CHECK(param_shift_grad_u(spec, theta, {0.5, 0.5}, NoiseModel{}, 0) ==
        doctest::Approx(-1.0).epsilon(1e-12));
  CHECK(param_shift_grad_u(spec, theta, {0.5, 0.5}, NoiseModel{}, 1) ==
        doctest::Approx(0.0).epsilon(1e-14));
}

TEST_CASE("parameter index bounds are enforced") {
  AnsatzSpec spec{2, 1, AnsatzVariant::unconstrained, true};
  const auto theta = random_theta(spec, 3);
  CHECK_THROWS_AS(param_shift_grad_u(spec, theta, {0.5, 0.5}, NoiseModel{}, -1),
                  ConfigError);
  CHECK_THROWS_AS(param_shift_grad_u(spec, theta, {0.5, 0.5}, NoiseModel{},
                                     spec.param_count()),
                  ConfigError);
}

TEST_CASE("parameter shift matches finite differences on the ideal circuit") {
  AnsatzSpec spec;  // 6 qubits, 4 layers
  const auto theta = random_theta(spec, 7);
  const InputPoint pt{0.3, 0.7};
  for (int i = 0; i < spec.param_count(); ++i) {
    const double ps = param_shift_grad_u(spec, theta, pt, NoiseModel{}, i);
    const double fd = fd_grad_u(spec, theta, pt, NoiseModel{}, i, 1e-5);
    CHECK(std::abs(ps - fd) <= 1e-6);
  }
}

TEST_CASE("parameter shift matches finite differences under every channel") {
  AnsatzSpec spec{3, 2, AnsatzVariant::unconstrained, true};
  const auto theta = random_theta(spec, 11);
  const InputPoint pt{0.25, 0.6};
  const NoiseModel models[] = {
      {ChannelKind::depolarizing, 0.05, 1.0},
      {ChannelKind::amplitude_damping, 0.1, 1.0},
      {ChannelKind::bit_flip, 0.08, 1.0},
  };
  for (const auto& noise : models) {
    CAPTURE(static_cast<int>(noise.kind));
    for (int i = 0; i < spec.param_count(); ++i) {
      const double ps = param_shift_grad_u(spec, theta, pt, noise, i);
      const double fd = fd_grad_u(spec, theta, pt, noise, i, 1e-5);
      CHECK(std::abs(ps - fd) <= 1e-6);
    }
  }
}

TEST_CASE("stencil derivatives are exact for polynomials up to quadratics") {
  const StencilConfig s;
  const InputPoint pt{0.5, 0.5};
  const auto quad = [](InputPoint p) { return p.x * p.x; };
  const auto d = stencil_derivatives(quad, pt, s);
  CHECK(d.u == doctest::Approx(0.25).epsilon(1e-14));
  CHECK(d.dx == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(d.dxx == doctest::Approx(2.0).epsilon(1e-6));
  CHECK(d.dt == 0.0);

  const auto lin = [](InputPoint p) { return 3.0 * p.t; };
  const auto dl = stencil_derivatives(lin, pt, s);
  CHECK(dl.dt == doctest::Approx(3.0).epsilon(1e-10));
  CHECK(std::abs(dl.dxx) <= 1e-9);

  const auto con = [](InputPoint) { return 0.7; };
  const auto dc = stencil_derivatives(con, pt, s);
  CHECK(dc.dx == 0.0);
  CHECK(dc.dt == 0.0);
  CHECK(dc.dxx == 0.0);
}

TEST_CASE("stencil derivative of the sine profile") {
  const auto f = [](InputPoint p) { return std::sin(kPi * p.x); };
  const auto d = stencil_derivatives(f, {0.5, 0.5}, StencilConfig{});
  CHECK(std::abs(d.dx) <= 1e-4);  // cosine zero at x = 1/2
  CHECK(d.dxx == doctest::Approx(-kPi * kPi).epsilon(1e-4));
}

TEST_CASE("boundary stencils recenter and keep second-order accuracy") {
  const StencilConfig s;
  const auto quad = [](InputPoint p) { return p.x * p.x; };
  // At x = 0 the +-h stencils shift inward; the estimates are the derivatives
  // at the shifted centers (2*h1 for the slope of x^2), still exact for
  // quadratics.
  const auto d0 = stencil_derivatives(quad, {0.0, 0.5}, s);
  CHECK(d0.dx == doctest::Approx(2.0 * s.h1).epsilon(1e-9));
  CHECK(d0.dxx == doctest::Approx(2.0).epsilon(1e-6));
  const auto lin = [](InputPoint p) { return p.x; };
  CHECK(stencil_derivatives(lin, {1.0, 0.5}, s).dx ==
        doctest::Approx(1.0).epsilon(1e-10));
  // Steps must fit the domain and the (0, 0.1) bound.
  CHECK_THROWS_AS(stencil_derivatives(quad, {0.5, 0.5}, {0.0, 1e-2}),
                  ConfigError);
  CHECK_THROWS_AS(stencil_derivatives(quad, {0.5, 0.5}, {1e-3, 0.2}),
                  ConfigError);
}

TEST_CASE("input derivatives recover the encoded cosine profile") {
  // One qubit, theta = 0: u(x, t) = <Z> after RY(pi x) = cos(pi x).
  AnsatzSpec spec{1, 1, AnsatzVariant::unconstrained, true};
  const std::vector<double> theta{0.0, 0.0};
  const double x = 0.37;
  const auto d = input_derivatives(spec, theta, {x, 0.9});
  CHECK(d.u == doctest::Approx(std::cos(kPi * x)).epsilon(1e-12));
  CHECK(d.dx == doctest::Approx(-kPi * std::sin(kPi * x)).epsilon(1e-4));
  CHECK(d.dxx ==
        doctest::Approx(-kPi * kPi * std::cos(kPi * x)).epsilon(1e-3));
  CHECK(d.dt == 0.0);  // qubit 0 encodes x only
}

TEST_CASE("inline layer shift equals shifting the parameter vector") {
  AnsatzSpec spec{3, 2, AnsatzVariant::constrained, true};
  const auto theta = random_theta(spec, 21);
  const InputPoint pt{0.4, 0.8};
  const NoiseModel noise{ChannelKind::depolarizing, 0.02, 1.0};
  const int idx = 5;  // layer 0
  const double delta = 0.7;

  DensityMatrix a = DensityMatrix::zero_state(3);
  apply_circuit_layer(a, spec, theta, pt, 0, noise, idx, delta);
  auto shifted = theta;
  shifted[idx] += delta;
  DensityMatrix b = DensityMatrix::zero_state(3);
  apply_circuit_layer(b, spec, shifted, pt, 0, noise);
  CHECK((a.matrix() - b.matrix()).cwiseAbs().maxCoeff() <= 1e-14);

  // A shift index outside the layer is a configuration error.
  DensityMatrix c = DensityMatrix::zero_state(3);
  const int other_layer_idx = spec.param_count() - 1;
  CHECK_THROWS_AS(
      apply_circuit_layer(c, spec, theta, pt, 0, noise, other_layer_idx, 0.1),
      ConfigError);
}

TEST_CASE("adjoint layer satisfies the trace duality") {
  AnsatzSpec spec{3, 2, AnsatzVariant::unconstrained, true};
  const auto theta = random_theta(spec, 31);
  const InputPoint pt{0.15, 0.85};
  const NoiseModel models[] = {
      {ChannelKind::depolarizing, 0.1, 1.0},
      {ChannelKind::amplitude_damping, 0.2, 1.0},
      {ChannelKind::bit_flip, 0.07, 1.0},
  };
  std::uint64_t seed = 77;
  for (const auto& noise : models) {
    const DensityMatrix rho(3, oracle::random_density(3, seed++));
    const DensityMatrix obs(3, oracle::random_density(3, seed++));
    DensityMatrix evolved = rho;
    apply_circuit_layer(evolved, spec, theta, pt, 1, noise);
    DensityMatrix pulled = obs;
    apply_circuit_layer_adjoint(pulled, spec, theta, pt, 1, noise);
    const double lhs = (obs.matrix() * evolved.matrix()).trace().real();
    const double rhs = (pulled.matrix() * rho.matrix()).trace().real();
    CHECK(std::abs(lhs - rhs) <= 1e-12);
  }
}

TEST_CASE("cached noisy gradients equal naive parameter shifts") {
  const NoiseModel models[] = {
      {ChannelKind::depolarizing, 0.03, 1.0},
      {ChannelKind::amplitude_damping, 0.1, 1.0},
      {ChannelKind::bit_flip, 0.08, 1.0},
  };
  AnsatzSpec spec{3, 2, AnsatzVariant::unconstrained, true};
  const auto theta = random_theta(spec, 41);
  const InputPoint pt{0.55, 0.35};
  for (const auto& noise : models) {
    CAPTURE(static_cast<int>(noise.kind));
    const auto dz = z_gradients(spec, theta, pt, noise, {0, 2});
    for (int i = 0; i < spec.param_count(); ++i) {
      const double naive0 =
          param_shift_grad_u(spec, theta, pt, noise, i, Readout{0, 1.0, 0.0});
      const double naive2 =
          param_shift_grad_u(spec, theta, pt, noise, i, Readout{2, 1.0, 0.0});
      CHECK(std::abs(dz[0][i] - naive0) <= 1e-12);
      CHECK(std::abs(dz[1][i] - naive2) <= 1e-12);
    }
  }
  // Constrained variant exercises the three-rotation fused blocks.
  AnsatzSpec cspec{3, 2, AnsatzVariant::constrained, true};
  const auto ctheta = random_theta(cspec, 43);
  const NoiseModel dep{ChannelKind::depolarizing, 0.05, 1.0};
  const auto dz = z_gradients(cspec, ctheta, pt, dep, {1});
  for (int i = 0; i < cspec.param_count(); ++i) {
    const double naive =
        param_shift_grad_u(cspec, ctheta, pt, dep, i, Readout{1, 1.0, 0.0});
    CHECK(std::abs(dz[0][i] - naive) <= 1e-12);
  }
}

TEST_CASE("batch and single-parameter paths agree on ideal circuits") {
  AnsatzSpec spec{4, 2, AnsatzVariant::unconstrained, true};
  const auto theta = random_theta(spec, 51);
  const InputPoint pt{0.62, 0.18};
  const auto dz = z_gradients(spec, theta, pt, NoiseModel{}, {0, 3});
  for (int i = 0; i < spec.param_count(); ++i) {
    CHECK(std::abs(dz[0][i] - param_shift_grad_u(spec, theta, pt, NoiseModel{},
                                                 i, Readout{0, 1.0, 0.0})) <=
          1e-12);
    CHECK(std::abs(dz[1][i] - param_shift_grad_u(spec, theta, pt, NoiseModel{},
                                                 i, Readout{3, 1.0, 0.0})) <=
          1e-12);
  }
}

TEST_CASE("loss gradient matches finite differences of the full loss") {
  AnsatzSpec spec{2, 1, AnsatzVariant::unconstrained, true};
  const auto theta = random_theta(spec, 61);
  struct Scenario {
    PdeKind kind;
    NoiseModel noise;
  };
  const Scenario scenarios[] = {
      {PdeKind::heat, NoiseModel{}},
      {PdeKind::heat, {ChannelKind::depolarizing, 0.05, 1.0}},
      {PdeKind::burgers, NoiseModel{}},
      {PdeKind::saint_venant, NoiseModel{}},
      {PdeKind::saint_venant, {ChannelKind::amplitude_damping, 0.08, 1.0}},
  };
  for (const auto& sc : scenarios) {
    CAPTURE(to_string(sc.kind));
    const PdeProblem prob = make_problem(sc.kind, 4, 1.0);
    const auto grad = loss_gradient(spec, theta, prob, sc.noise);
    REQUIRE(grad.size() == static_cast<size_t>(spec.param_count()));
    double scale = 1.0;
    for (double g : grad) scale = std::max(scale, std::abs(g));
    for (int i = 0; i < spec.param_count(); ++i) {
      const double fd = oracle::central_difference(
          [&](double v) {
            std::vector<double> t = theta;
            t[static_cast<size_t>(i)] = v;
            return total_loss(spec, t, prob, sc.noise);
          },
          theta[static_cast<size_t>(i)], 1e-5);
      CHECK(std::abs(grad[static_cast<size_t>(i)] - fd) <= 1e-5 * scale);
    }
  }
}

TEST_CASE("perfect data fit with zero physics weight gives a zero gradient") {
  AnsatzSpec spec{2, 1, AnsatzVariant::unconstrained, true};
  const auto theta = random_theta(spec, 71);
  PdeProblem prob = make_problem(PdeKind::heat, 4, 0.0);
  for (auto& a : prob.anchors) {
    a.value = evaluate_u(spec, theta, a.pt, NoiseModel{}, prob.readouts[0]);
  }
  const auto grad = loss_gradient(spec, theta, prob, NoiseModel{});
  for (double g : grad) CHECK(g == 0.0);
}

TEST_CASE("loss gradients are linear in the loss") {
  AnsatzSpec spec{2, 1, AnsatzVariant::unconstrained, true};
  const auto theta = random_theta(spec, 81);

  // Mean squared error over a disjoint anchor split: half the sum of the
  // halves' gradients (data-only loss).
  PdeProblem whole = make_problem(PdeKind::heat, 4, 0.0);
  PdeProblem first = whole, second = whole;
  first.anchors.assign(whole.anchors.begin(), whole.anchors.begin() + 8);
  second.anchors.assign(whole.anchors.begin() + 8, whole.anchors.end());
  const auto gw = loss_gradient(spec, theta, whole, NoiseModel{});
  const auto g1 = loss_gradient(spec, theta, first, NoiseModel{});
  const auto g2 = loss_gradient(spec, theta, second, NoiseModel{});
  for (size_t i = 0; i < gw.size(); ++i) {
    CHECK(gw[i] == doctest::Approx(0.5 * (g1[i] + g2[i])).epsilon(1e-12));
  }

  // The physics term enters linearly in lambda.
  PdeProblem l0 = make_problem(PdeKind::heat, 4, 0.0);
  PdeProblem l1 = make_problem(PdeKind::heat, 4, 1.0);
  PdeProblem l2 = make_problem(PdeKind::heat, 4, 2.0);
  const auto a0 = loss_gradient(spec, theta, l0, NoiseModel{});
  const auto a1 = loss_gradient(spec, theta, l1, NoiseModel{});
  const auto a2 = loss_gradient(spec, theta, l2, NoiseModel{});
  for (size_t i = 0; i < a0.size(); ++i) {
    CHECK(a2[i] - a0[i] ==
          doctest::Approx(2.0 * (a1[i] - a0[i])).epsilon(1e-12));
  }
}

TEST_CASE("loss gradient is deterministic") {
  AnsatzSpec spec{2, 1, AnsatzVariant::unconstrained, true};
  const auto theta = random_theta(spec, 91);
  const PdeProblem prob = make_problem(PdeKind::burgers, 4, 1.0);
  const NoiseModel noise{ChannelKind::depolarizing, 0.02, 1.0};
  const auto g1 = loss_gradient(spec, theta, prob, noise);
  const auto g2 = loss_gradient(spec, theta, prob, noise);
  REQUIRE(g1.size() == g2.size());
  for (size_t i = 0; i < g1.size(); ++i) CHECK(g1[i] == g2[i]);
}

}  // TEST_SUITE
