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

#include <array>
#include <cmath>
#include <numbers>
#include <random>

#include <doctest.h>

#include "qmeas/discrimination.hpp"
#include "qmeas/linalg.hpp"
#include "test_support.hpp"

using namespace qmeas;

namespace {

const double kInvSqrt2 = 1.0 / std::numbers::sqrt2;

StateEnsemble pair_with_overlap(double s, double prior_a = 0.5) {
  return StateEnsemble(
      {PureState({1.0, 0.0}),
       PureState({Complex(s, 0.0), Complex(std::sqrt(1.0 - s * s), 0.0)})},
      {prior_a, 1.0 - prior_a});
}

void check_povm_closure(const DiscriminationReport& rep, std::size_t dim) {
  Matrix total = Matrix::zero(dim, dim);
  for (const PovmElement& e : rep.povm) {
    CHECK(is_psd(e.matrix, 1e-8));
    total = total + e.matrix;
  }
  CHECK(max_abs_diff(total, Matrix::identity(dim)) < 1e-9);
  CHECK(rep.p_success + rep.p_error + rep.p_inconclusive ==
        doctest::Approx(1.0).epsilon(1e-9));
}

// Success probability of a strategy that announces the sign split of the
// Hermitian operator p0 rho0 - p1 rho1 rotated by angle t on the Bloch
// sphere; used to probe optimality of the minimum-error measurement.
double projective_guess_success(const StateEnsemble& ensemble, double theta,
                                double phi) {
  const PureState dir({Complex(std::cos(theta / 2.0), 0.0),
                       std::exp(Complex(0.0, phi)) * std::sin(theta / 2.0)});
  const Projector p = Projector::onto(dir);
  const Matrix q = Matrix::identity(2) - p.matrix();
  const DensityMatrix rho0 = pure_to_density(ensemble.states[0]);
  const DensityMatrix rho1 = pure_to_density(ensemble.states[1]);
  // Announce 0 on the projector; the better labeling of the two is allowed.
  const double a = ensemble.priors[0] * std::real(trace(matmul(p.matrix(), rho0.matrix()))) +
                   ensemble.priors[1] * std::real(trace(matmul(q, rho1.matrix())));
  const double b = ensemble.priors[0] * std::real(trace(matmul(q, rho0.matrix()))) +
                   ensemble.priors[1] * std::real(trace(matmul(p.matrix(), rho1.matrix())));
  return std::max(a, b);
}

}  // namespace

TEST_CASE("helstrom reproduces the two-state closed form") {
  const StateEnsemble ensemble = pair_with_overlap(kInvSqrt2);
  const DiscriminationReport rep = helstrom(ensemble);
  check_povm_closure(rep, 2);
  CHECK(std::abs(rep.p_error - 0.5 * (1.0 - std::sqrt(0.5))) < 1e-12);
  CHECK(rep.p_inconclusive == doctest::Approx(0.0).epsilon(1e-12));

  // Unequal priors.
  for (const double prior : {0.1, 0.3, 0.8}) {
    for (const double s : {0.0, 0.4, 0.9}) {
      const StateEnsemble e = pair_with_overlap(s, prior);
      const double c = std::sqrt(1.0 - 4.0 * prior * (1.0 - prior) * s * s);
      CHECK(std::abs(helstrom(e).p_error - 0.5 * (1.0 - c)) < 1e-10);
    }
  }
}

TEST_CASE("no projective guess beats the minimum-error measurement") {
  std::mt19937_64 rng(41);
  for (int rep_i = 0; rep_i < 10; ++rep_i) {
    const double s = uniform01(rng);
    const double prior = 0.1 + 0.8 * uniform01(rng);
    const StateEnsemble ensemble = pair_with_overlap(s, prior);
    const double best = helstrom(ensemble).p_success;
    for (int k = 0; k < 60; ++k) {
      const double theta = std::numbers::pi * uniform01(rng);
      const double phi = 2.0 * std::numbers::pi * uniform01(rng);
      CHECK(projective_guess_success(ensemble, theta, phi) <= best + 1e-9);
    }
  }
}

TEST_CASE("projective unambiguous strategy certifies without error") {
  const double s = kInvSqrt2;
  const StateEnsemble ensemble = pair_with_overlap(s);
  const DiscriminationReport rep = projective_usd(ensemble);
  check_povm_closure(rep, 2);
  CHECK(std::abs(rep.p_success - 0.5 * (1.0 - s * s)) < 1e-12);
  CHECK(rep.p_error == doctest::Approx(0.0).epsilon(1e-12));

  // The conclusive element never fires on the state it excludes.
  const DensityMatrix rho_b = pure_to_density(ensemble.states[1]);
  for (std::size_t k = 0; k < rep.povm.size(); ++k) {
    if (rep.identifies[k] == 0) {
      CHECK(std::real(trace(matmul(rep.povm[k].matrix, rho_b.matrix()))) < 1e-12);
    }
  }
}

TEST_CASE("optimal unambiguous strategy saturates the overlap bound") {
  for (const double s : {0.0, 0.2, kInvSqrt2, 0.95}) {
    const StateEnsemble ensemble = pair_with_overlap(s);
    const DiscriminationReport rep = optimal_usd(ensemble);
    check_povm_closure(rep, 2);
    CHECK(std::abs(rep.p_success - (1.0 - s)) < 1e-10);
    CHECK(std::abs(rep.p_inconclusive - s) < 1e-10);
    CHECK(rep.p_error == doctest::Approx(0.0).epsilon(1e-12));

    // Zero cross-firing.
    for (std::size_t k = 0; k < rep.povm.size(); ++k) {
      if (rep.identifies[k] < 0) {
        continue;
      }
      const DensityMatrix other =
          pure_to_density(ensemble.states[1 - rep.identifies[k]]);
      CHECK(std::real(trace(matmul(rep.povm[k].matrix, other.matrix()))) < 1e-10);
    }
  }
  CHECK_THROWS_AS(optimal_usd(pair_with_overlap(1.0)), std::invalid_argument);
}

TEST_CASE("numeric optimizer matches the two-state closed form") {
  std::mt19937_64 rng(43);
  for (int rep_i = 0; rep_i < 8; ++rep_i) {
    const double s = 0.05 + 0.9 * uniform01(rng);
    const StateEnsemble ensemble = pair_with_overlap(s);
    const DiscriminationReport numeric = numeric_usd(ensemble);
    check_povm_closure(numeric, 2);
    CHECK(std::abs(numeric.p_success - (1.0 - s)) < 1e-6);
    CHECK(numeric.p_error < 1e-10);
  }
}

TEST_CASE("numeric optimizer beats random feasible strategies on qutrits") {
  // Oracle: every unambiguous strategy built on the reciprocal basis is a
  // point alpha = t(w) * w on some ray; sampling many rays lower-bounds the
  // optimum, and no sample may exceed the optimizer's result.
  std::mt19937_64 rng(44);
  for (int instance = 0; instance < 6; ++instance) {
    std::vector<PureState> states;
    for (int k = 0; k < 3; ++k) {
      states.push_back(test::random_state(rng, 3));
    }
    // Reject nearly dependent triples: the reciprocal construction needs a
    // well-conditioned Gram matrix.
    Matrix gram(3, 3);
    for (std::size_t i = 0; i < 3; ++i) {
      for (std::size_t j = 0; j < 3; ++j) {
        gram(i, j) = states[i].inner(states[j]);
      }
    }
    if (min_eigenvalue(0.5 * (gram + dagger(gram))) < 0.05) {
      continue;
    }

    const StateEnsemble ensemble = StateEnsemble::equal_priors(states);
    const DiscriminationReport numeric = numeric_usd(ensemble);
    check_povm_closure(numeric, 3);
    CHECK(numeric.p_error < 1e-9);

    // Conclusive projectors Q_k from the report itself, re-derived: the
    // element announced as k, normalized to unit scale.
    std::vector<Matrix> q;
    std::vector<double> gain(3, 0.0);
    for (std::size_t k = 0; k < numeric.povm.size(); ++k) {
      const int who = numeric.identifies[k];
      if (who < 0) {
        continue;
      }
      const Matrix& e = numeric.povm[k].matrix;
      const double scale = std::real(trace(e));
      q.push_back(e * (1.0 / scale));
      gain[static_cast<std::size_t>(who)] =
          std::real(trace(matmul(e, pure_to_density(states[static_cast<std::size_t>(
                                         who)]).matrix()))) /
          scale;
    }
    REQUIRE(q.size() == 3);

    double best_sampled = 0.0;
    for (int draw = 0; draw < 4000; ++draw) {
      std::array<double, 3> w = {uniform01(rng), uniform01(rng), uniform01(rng)};
      Matrix sum = Matrix::zero(3, 3);
      for (std::size_t k = 0; k < 3; ++k) {
        sum = sum + q[k] * w[k];
      }
      const EigenSystem eig = eig_hermitian(0.5 * (sum + dagger(sum)));
      const double lambda_max = eig.eigenvalues.back();
      if (lambda_max < 1e-12) {
        continue;
      }
      const double t = 1.0 / lambda_max;
      double success = 0.0;
      for (std::size_t k = 0; k < 3; ++k) {
        success += t * w[k] * gain[k] / 3.0;
      }
      best_sampled = std::max(best_sampled, success);
    }
    CHECK(numeric.p_success >= best_sampled - 1e-9);
    CHECK(numeric.p_success <= best_sampled + 0.02);  // rays sample densely
  }
}

TEST_CASE("symmetric qutrit triples follow the overlap closed form") {
  for (const double s : {0.2, 0.5, 0.8}) {
    Matrix gram(3, 3);
    for (std::size_t i = 0; i < 3; ++i) {
      for (std::size_t j = 0; j < 3; ++j) {
        gram(i, j) = i == j ? 1.0 : s;
      }
    }
    const Matrix root = sqrt_psd(gram);
    std::vector<PureState> states;
    for (std::size_t k = 0; k < 3; ++k) {
      states.push_back(PureState::normalized(
          {root(0, k), root(1, k), root(2, k)}));
    }
    const DiscriminationReport rep =
        numeric_usd(StateEnsemble::equal_priors(states));
    CHECK(std::abs(rep.p_success - (1.0 - s)) < 1e-6);
    // Unambiguous beats a random projective guess only while 1 - s > 1/3.
    if (s < 2.0 / 3.0) {
      CHECK(rep.p_success > 1.0 / 3.0);
    }
  }
}

TEST_CASE("discrimination sampling tallies match the analytic rates") {
  std::mt19937_64 rng(45);
  const StateEnsemble ensemble = pair_with_overlap(kInvSqrt2);

  const DiscriminationCounts usd_counts =
      simulate_discrimination(optimal_usd(ensemble), ensemble, 20000, rng);
  CHECK(usd_counts.wrong == 0);
  const double s_rate =
      static_cast<double>(usd_counts.correct) / 20000.0;
  CHECK(std::abs(s_rate - (1.0 - kInvSqrt2)) <
        4.0 * std::sqrt(kInvSqrt2 * (1.0 - kInvSqrt2) / 20000.0));

  const DiscriminationCounts h_counts =
      simulate_discrimination(helstrom(ensemble), ensemble, 20000, rng);
  CHECK(h_counts.inconclusive == 0);
  const double p_err = 0.5 * (1.0 - std::sqrt(0.5));
  CHECK(std::abs(static_cast<double>(h_counts.wrong) / 20000.0 - p_err) <
        4.0 * std::sqrt(p_err * (1.0 - p_err) / 20000.0));
}

TEST_CASE("ensembles validate their priors") {
  CHECK_THROWS_AS(StateEnsemble({PureState({1.0, 0.0})}, {0.5, 0.5}),
                  std::invalid_argument);
  CHECK_THROWS_AS(StateEnsemble({PureState({1.0, 0.0}), PureState({0.0, 1.0})},
                                {0.7, 0.7}),
                  std::invalid_argument);
  const StateEnsemble eq = StateEnsemble::equal_priors(
      {PureState({1.0, 0.0}), PureState({0.0, 1.0})});
  CHECK(eq.priors_equal());
}
