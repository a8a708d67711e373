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

#include "qempde/mitigation.hpp"

#include <doctest.h>

#include <cmath>
#include <complex>

#include "oracle.hpp"

using namespace qempde;

namespace {

std::vector<double> random_theta(const AnsatzSpec& spec, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<double> theta(static_cast<size_t>(spec.param_count()));
  for (auto& v : theta) v = rng.uniform(-3.0, 3.0);
  return theta;
}

double round_sig3(double v) {
  const double mag = std::pow(10.0, 2.0 - std::floor(std::log10(v)));
  return std::round(v * mag) / mag;
}

}  // namespace

TEST_SUITE("mitigation") {

TEST_CASE("richardson weights reproduce the textbook factor sets") {
  const auto w123 = richardson_weights({1.0, 2.0, 3.0});
  REQUIRE(w123.size() == 3);
  CHECK(w123[0] == doctest::Approx(3.0).epsilon(1e-12));
  CHECK(w123[1] == doctest::Approx(-3.0).epsilon(1e-12));
  CHECK(w123[2] == doctest::Approx(1.0).epsilon(1e-12));

  const auto w12 = richardson_weights({1.0, 2.0});
  CHECK(w12[0] == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(w12[1] == doctest::Approx(-1.0).epsilon(1e-12));

  const auto w1 = richardson_weights({1.0});
  REQUIRE(w1.size() == 1);
  CHECK(w1[0] == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("richardson weights sum to one for any distinct factors") {
  Rng rng(99);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<double> factors;
    double c = 1.0;
    const int count = 2 + trial % 4;
    for (int j = 0; j < count; ++j) {
      factors.push_back(c);
      c += rng.uniform(0.3, 2.0);
    }
    const auto w = richardson_weights(factors);
    double sum = 0.0;
    for (double v : w) sum += v;
    CHECK(sum == doctest::Approx(1.0).epsilon(1e-9));
  }
  CHECK_THROWS_AS(richardson_weights({1.0, 2.0, 2.0}), ConfigError);
  CHECK_THROWS_AS(richardson_weights({}), ConfigError);
}

TEST_CASE("extrapolation is exact on polynomials up to the order") {
  const auto quadratic = [](double q) {
    return 0.8 - 1.7 * q + 4.2 * q * q;
  };
  const auto est = zne_estimate(quadratic, 0.02, ZneConfig{});
  CHECK(est.value == doctest::Approx(0.8).epsilon(1e-12));
  REQUIRE(est.raw.size() == 3);
  CHECK(est.raw[0] == doctest::Approx(quadratic(0.02)).epsilon(1e-12));
  CHECK(est.overhead == doctest::Approx(1.0));

  const auto constant = [](double) { return 0.31; };
  CHECK(zne_estimate(constant, 0.05).value ==
        doctest::Approx(0.31).epsilon(1e-12));

  ZneConfig cubic_cfg;
  cubic_cfg.scale_factors = {1.0, 2.0, 3.0, 4.0};
  cubic_cfg.order = 3;
  const auto cubic = [](double q) {
    return 0.25 + q - 2.0 * q * q + 5.0 * q * q * q;
  };
  CHECK(zne_estimate(cubic, 0.01, cubic_cfg).value ==
        doctest::Approx(0.25).epsilon(1e-12));
}

TEST_CASE("extrapolation configuration is validated") {
  const auto f = [](double q) { return q; };
  CHECK_THROWS_AS(zne_estimate(f, 0.4), ConfigError);  // 3*0.4 > 1
  CHECK_THROWS_AS(zne_estimate(f, -0.01), ConfigError);
  ZneConfig dup;
  dup.scale_factors = {1.0, 2.0, 2.0};
  CHECK_THROWS_AS(zne_estimate(f, 0.01, dup), ConfigError);
  ZneConfig few;
  few.scale_factors = {1.0, 2.0};
  few.order = 2;
  CHECK_THROWS_AS(zne_estimate(f, 0.01, few), ConfigError);
  ZneConfig low;
  low.scale_factors = {0.5, 1.0, 2.0};
  CHECK_THROWS_AS(zne_estimate(f, 0.01, low), ConfigError);
}

TEST_CASE("extrapolation sharply reduces small-strength circuit error") {
  AnsatzSpec spec{3, 2, AnsatzVariant::unconstrained, true};
  const auto theta = random_theta(spec, 11);
  const InputPoint pt{0.4, 0.6};
  const double ideal = evaluate_u(spec, theta, pt);
  const auto noisy = [&](double q) {
    return evaluate_u(spec, theta, pt,
                      NoiseModel{ChannelKind::depolarizing, q, 1.0});
  };
  const double p = 0.001;
  const double unmitigated = std::abs(noisy(p) - ideal);
  REQUIRE(unmitigated > 1e-6);  // the cell actually suffers from noise
  const double mitigated = std::abs(zne_estimate(noisy, p).value - ideal);
  CHECK(mitigated <= 0.2 * unmitigated);
}

TEST_CASE("analytic sampling cost table") {
  CHECK(round_sig3(pec_overhead(20, 0.001)) ==
        doctest::Approx(1.08).epsilon(1e-9));
  CHECK(round_sig3(pec_overhead(40, 0.005)) ==
        doctest::Approx(2.22).epsilon(1e-9));
  CHECK(round_sig3(pec_overhead(60, 0.01)) ==
        doctest::Approx(10.8).epsilon(1e-9));
  CHECK(round_sig3(pec_overhead(80, 0.02)) ==
        doctest::Approx(531.0).epsilon(1e-9));
  CHECK(round_sig3(pec_overhead(100, 0.001)) ==
        doctest::Approx(1.49).epsilon(1e-9));
  CHECK(round_sig3(pec_overhead(100, 0.05)) ==
        doctest::Approx(1.9e8).epsilon(1e-9));

  for (int n_g : {10, 40, 90}) {
    for (double p : {0.004, 0.03}) {
      CHECK(std::log(pec_overhead(n_g, p)) ==
            doctest::Approx(2.0 * n_g * std::log1p(2.0 * p)).epsilon(1e-12));
      CHECK(pec_overhead(n_g + 1, p) > pec_overhead(n_g, p));
      CHECK(pec_overhead(n_g, p + 0.001) > pec_overhead(n_g, p));
    }
  }
  CHECK_THROWS_AS(pec_overhead(0, 0.01), ConfigError);
  CHECK_THROWS_AS(pec_overhead(10, -0.1), ConfigError);
  CHECK_THROWS_AS(pec_overhead(10, 0.6), ConfigError);
}

TEST_CASE("inverse coefficients cancel the depolarizing channel") {
  const QuasiProbability trivial = pec_inverse_coefficients(0.0);
  CHECK(trivial.a_i == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(trivial.a_x == 0.0);
  CHECK(trivial.gamma == doctest::Approx(1.0).epsilon(1e-15));

  const std::complex<double> i1(0.0, 1.0);
  Matrix2 sigma[3];
  sigma[0] << 0, 1, 1, 0;
  sigma[1] << 0, -i1, i1, 0;
  sigma[2] << 1, 0, 0, -1;

  std::uint64_t seed = 404;
  for (double p : {0.01, 0.3}) {
    const QuasiProbability quasi = pec_inverse_coefficients(p);
    CHECK(quasi.a_i + quasi.a_x + quasi.a_y + quasi.a_z ==
          doctest::Approx(1.0).epsilon(1e-12));
    CHECK(quasi.gamma ==
          doctest::Approx((1.0 + 2.0 * p / 3.0) / (1.0 - 4.0 * p / 3.0))
              .epsilon(1e-12));
    for (int trial = 0; trial < 25; ++trial) {
      const Eigen::MatrixXcd rho = oracle::random_density(1, seed++);
      DensityMatrix noisy(1, rho);
      noisy.apply_depolarizing(p, 0);
      const Eigen::MatrixXcd after = noisy.matrix();
      Eigen::MatrixXcd recovered = quasi.a_i * after;
      const double signed_coeff[3] = {quasi.a_x, quasi.a_y, quasi.a_z};
      for (int k = 0; k < 3; ++k) {
        recovered += signed_coeff[k] * sigma[k] * after * sigma[k];
      }
      CHECK((recovered - rho).cwiseAbs().maxCoeff() <= 1e-12);
    }
  }

  // One-norm expands as 1 + 2p + O(p^2), the per-gate factor of the
  // analytic overhead formula.
  const double small = 1e-4;
  CHECK(std::abs(pec_inverse_coefficients(small).gamma - (1.0 + 2.0 * small)) <=
        1e-7);
  CHECK_THROWS_AS(pec_inverse_coefficients(0.75), ConfigError);
  CHECK_THROWS_AS(pec_inverse_coefficients(-0.01), ConfigError);
}

TEST_CASE("sampling estimator reduces to plain evaluation without noise") {
  AnsatzSpec spec{2, 1, AnsatzVariant::unconstrained, true};
  const auto theta = random_theta(spec, 21);
  const InputPoint pt{0.3, 0.7};
  const auto est = pec_estimate(spec, theta, pt, 0.0, 64, 3);
  CHECK(est.value == doctest::Approx(evaluate_u(spec, theta, pt)).epsilon(1e-12));
  CHECK(est.overhead == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(est.raw.size() == 10);
}

TEST_CASE("sampling estimator hits the ideal value within the error bound") {
  AnsatzSpec spec{2, 1, AnsatzVariant::unconstrained, true};
  REQUIRE(spec.gate_count() == 5);  // 2 rotations per qubit + one CNOT
  const auto theta = random_theta(spec, 21);
  const InputPoint pt{0.3, 0.7};
  const double ideal = evaluate_u(spec, theta, pt);
  const double p = 0.01;
  const std::int64_t n = 20000;
  const double gamma_total = std::pow(pec_inverse_coefficients(p).gamma, 5);
  const double standard_error = gamma_total / std::sqrt(double(n));

  const auto est = pec_estimate(spec, theta, pt, p, n, 5);
  CHECK(std::abs(est.value - ideal) <= 3.0 * standard_error);
  CHECK(est.overhead ==
        doctest::Approx(gamma_total * gamma_total).epsilon(1e-12));

  // Bit-for-bit reproducible, and the batch means agree with the total.
  const auto rerun = pec_estimate(spec, theta, pt, p, n, 5);
  CHECK(rerun.value == est.value);
  double batch_mean = 0.0;
  for (double v : est.raw) batch_mean += v;
  batch_mean /= static_cast<double>(est.raw.size());
  CHECK(batch_mean == doctest::Approx(est.value).epsilon(1e-9));

  // Across seeds the spread obeys the advertised 1/sqrt(N) scaling.
  std::vector<double> values;
  for (std::uint64_t seed = 100; seed < 108; ++seed) {
    values.push_back(pec_estimate(spec, theta, pt, p, n, seed).value);
  }
  double mean = 0.0;
  for (double v : values) mean += v;
  mean /= static_cast<double>(values.size());
  double var = 0.0;
  for (double v : values) var += (v - mean) * (v - mean);
  var /= static_cast<double>(values.size() - 1);
  CHECK(std::sqrt(var) <= 1.5 * standard_error);
  CHECK(std::abs(mean - ideal) <=
        3.0 * standard_error / std::sqrt(double(values.size())));
}

TEST_CASE("sampling estimator rejects infeasible demands") {
  AnsatzSpec spec;  // 6 qubits, 4 layers: 68 counted gates
  const auto theta = random_theta(spec, 2);
  const InputPoint pt{0.5, 0.5};
  // gamma_gate = 2 at p = 0.3, so gamma_total = 2^68 >> 1e12.
  CHECK_THROWS_AS(pec_estimate(spec, theta, pt, 0.3, 10, 1), ConfigError);
  CHECK_THROWS_AS(pec_estimate(spec, theta, pt, 0.8, 10, 1), ConfigError);
  CHECK_THROWS_AS(pec_estimate(spec, theta, pt, 0.01, 0, 1), ConfigError);
}

TEST_CASE("readout correction inverts the confusion model") {
  // No readout error: identity map.
  const ReadoutModel clean{0.0, 2};
  const std::vector<double> p4{0.4, 0.3, 0.2, 0.1};
  const auto same = readout_correct(p4, clean);
  for (int i = 0; i < 4; ++i) CHECK(same[i] == doctest::Approx(p4[i]).epsilon(1e-12));

  // Worked single-qubit cell: (0.9, 0.1) is exactly the noisy image of (1, 0).
  const ReadoutModel one{0.1, 1};
  const auto corrected = readout_correct({0.9, 0.1}, one);
  CHECK(corrected[0] == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(corrected[1] == doctest::Approx(0.0).epsilon(1e-12));

  // Round trip correct(M p) = p across sizes and error rates.
  std::uint64_t seed = 31;
  for (double eps : {0.01, 0.05, 0.1}) {
    for (int n = 1; n <= 4; ++n) {
      const ReadoutModel model{eps, n};
      const Eigen::MatrixXd m = confusion_matrix(model);
      const int dim = 1 << n;
      Rng rng(seed++);
      for (int trial = 0; trial < 9; ++trial) {
        Eigen::VectorXd p(dim);
        double total = 0.0;
        for (int i = 0; i < dim; ++i) {
          p[i] = rng.uniform(0.0, 1.0);
          total += p[i];
        }
        p /= total;
        const Eigen::VectorXd noisy = m * p;
        std::vector<double> noisy_vec(noisy.data(), noisy.data() + dim);
        const auto recovered = readout_correct(noisy_vec, model);
        for (int i = 0; i < dim; ++i) {
          CHECK(std::abs(recovered[i] - p[i]) <= 1e-9);
        }
      }
    }
  }
}

TEST_CASE("readout correction clips unphysical quasi-probabilities") {
  const ReadoutModel model{0.1, 1};
  // (1, 0) cannot arise from any true distribution at eps = 0.1; the raw
  // solve gives (1.125, -0.125), clipped and renormalized to (1, 0).
  const auto clipped = readout_correct({1.0, 0.0}, model);
  CHECK(clipped[0] == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(clipped[1] == doctest::Approx(0.0).epsilon(1e-12));
  double sum = 0.0;
  for (double v : clipped) sum += v;
  CHECK(sum == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("readout correction validates its input") {
  CHECK_THROWS_AS(readout_correct({0.5, 0.5, 0.0}, ReadoutModel{0.1, 1}),
                  ConfigError);
  CHECK_THROWS_AS(readout_correct({0.7, 0.1}, ReadoutModel{0.1, 1}),
                  ConfigError);
  CHECK_THROWS_AS(readout_correct({0.5, 0.5}, ReadoutModel{0.5, 1}),
                  ConfigError);
}

}  // TEST_SUITE
