// Copyright 2026 The qmeas authors
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

#include <cmath>
#include <numbers>
#include <random>

#include <doctest.h>

#include "qmeas/discrimination.hpp"
#include "qmeas/measurement.hpp"
#include "test_support.hpp"

using namespace qmeas;

namespace {
const double kInvSqrt2 = 1.0 / std::numbers::sqrt2;
}

TEST_CASE("measurement models must close to the identity") {
  const Matrix half = Matrix::identity(2) * 0.5;
  CHECK_THROWS_AS(MeasurementModel({{half, "only"}}), std::invalid_argument);
  CHECK_NOTHROW(decay_kraus(0.3));
}

TEST_CASE("decay step probabilities and conditional states") {
  const double eta = 0.5;
  const MeasurementModel model = decay_kraus(eta);
  const DensityMatrix plus =
      pure_to_density(PureState({kInvSqrt2, kInvSqrt2}));

  const std::vector<double> probs = outcome_probabilities(plus, model);
  REQUIRE(probs.size() == 2);
  CHECK(probs[0] == doctest::Approx(1.0 - eta / 2.0).epsilon(1e-12));
  CHECK(probs[1] == doctest::Approx(eta / 2.0).epsilon(1e-12));
  CHECK(model.label(0) == "no-click");

  // No-click softly steers toward the ground state.
  const MeasurementOutcome quiet = selective_update(plus, model, 0);
  const PureState steer = PureState::normalized(
      {Complex(1.0, 0.0), Complex(std::sqrt(1.0 - eta), 0.0)});
  CHECK(born_probability(quiet.state, Projector::onto(steer)) ==
        doctest::Approx(1.0).epsilon(1e-12));

  // A click collapses to the ground state.
  const MeasurementOutcome click = selective_update(plus, model, 1);
  CHECK(std::real(click.state.entry(0, 0)) == doctest::Approx(1.0).epsilon(1e-12));

  CHECK_THROWS_AS(selective_update(pure_to_density(PureState::basis(2, 0)), model, 1),
                  std::runtime_error);
}

TEST_CASE("nonselective decay trajectory matches the closed form") {
  // Independent oracle: after n steps the excited population scales by
  // (1-eta)^n and the coherence by (1-eta)^(n/2).
  const double eta = 0.1;
  const DensityMatrix rho0 =
      pure_to_density(PureState({0.6, 0.8}));
  const std::vector<DensityMatrix> traj =
      decay_trajectory(rho0, DecayModel{eta, 20});
  REQUIRE(traj.size() == 21);
  const double p0 = std::real(rho0.entry(1, 1));
  const Complex c0 = rho0.entry(0, 1);
  for (std::size_t n = 0; n < traj.size(); ++n) {
    const double scale = std::pow(1.0 - eta, static_cast<double>(n));
    CHECK(std::abs(std::real(traj[n].entry(1, 1)) - p0 * scale) < 1e-12);
    CHECK(std::abs(traj[n].entry(0, 1) - c0 * std::sqrt(scale)) < 1e-12);
    CHECK(std::abs(std::real(trace(traj[n].matrix())) - 1.0) < 1e-12);
  }
}

TEST_CASE("half-life step size solves the survival equation") {
  for (std::size_t n : {1, 2, 10, 137}) {
    const double eta = eta_for_half_life_steps(n);
    CHECK(std::pow(1.0 - eta, static_cast<double>(n)) ==
          doctest::Approx(0.5).epsilon(1e-12));
  }
}

TEST_CASE("uniform01 is deterministic, in range, and seed-sensitive") {
  std::mt19937_64 a(42);
  std::mt19937_64 b(42);
  std::mt19937_64 c(43);
  bool differs = false;
  for (int k = 0; k < 1000; ++k) {
    const double ua = uniform01(a);
    CHECK(ua >= 0.0);
    CHECK(ua < 1.0);
    CHECK(ua == uniform01(b));
    differs = differs || (ua != uniform01(c));
  }
  CHECK(differs);
}

TEST_CASE("sampled outcomes follow the Born distribution") {
  const double eta = 0.5;
  const MeasurementModel model = decay_kraus(eta);
  const DensityMatrix plus =
      pure_to_density(PureState({kInvSqrt2, kInvSqrt2}));
  std::mt19937_64 rng(99);
  const std::size_t trials = 20000;
  std::size_t clicks = 0;
  for (std::size_t t = 0; t < trials; ++t) {
    const SampledOutcome got = sample_outcome(plus, model, rng);
    if (got.index == 1) {
      ++clicks;
      CHECK(got.label == "click");
    }
  }
  // Binomial oracle: p = eta/2 = 0.25, four sigma band.
  const double p = eta / 2.0;
  const double sigma = std::sqrt(p * (1.0 - p) / static_cast<double>(trials));
  CHECK(std::abs(static_cast<double>(clicks) / static_cast<double>(trials) - p) <
        4.0 * sigma);
}

TEST_CASE("povm elements are PSD and complete") {
  const std::vector<PovmElement> povm = povm_from_kraus(decay_kraus(0.37));
  Matrix total = Matrix::zero(2, 2);
  for (const PovmElement& e : povm) {
    CHECK(is_psd(e.matrix));
    total = total + e.matrix;
  }
  CHECK(max_abs_diff(total, Matrix::identity(2)) < 1e-12);
}

TEST_CASE("naimark dilation reproduces POVM statistics projectively") {
  std::mt19937_64 rng(7);

  // Two POVMs: a two-element decay model and a three-element unambiguous
  // discriminator on a qubit.
  std::vector<std::vector<PovmElement>> povms;
  povms.push_back(povm_from_kraus(decay_kraus(0.5)));
  const double s = kInvSqrt2;
  const StateEnsemble pair = StateEnsemble::equal_priors(
      {PureState({1.0, 0.0}),
       PureState({Complex(s, 0.0), Complex(std::sqrt(1.0 - s * s), 0.0)})});
  povms.push_back(optimal_usd(pair).povm);

  for (const std::vector<PovmElement>& povm : povms) {
    const NaimarkDilation dilation = naimark_dilation(povm);
    CHECK(dilation.ancilla_dim == povm.size());
    CHECK(max_abs_diff(matmul(dagger(dilation.isometry), dilation.isometry),
                       Matrix::identity(2)) < 1e-12);
    for (int rep = 0; rep < 25; ++rep) {
      const DensityMatrix rho = test::random_density(rng, 2);
      const std::vector<double> dilated = dilated_probabilities(dilation, rho);
      for (std::size_t i = 0; i < povm.size(); ++i) {
        const double direct = std::real(trace(matmul(povm[i].matrix, rho.matrix())));
        CHECK(std::abs(direct - dilated[i]) < 1e-10);
      }
    }
  }
}

TEST_CASE("naimark dilation rejects incomplete POVMs") {
  std::vector<PovmElement> short_povm;
  short_povm.emplace_back(Matrix::identity(2) * 0.5);
  CHECK_THROWS_AS(naimark_dilation(short_povm), std::invalid_argument);
}
