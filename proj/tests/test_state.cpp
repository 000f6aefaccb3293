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

#include "qmeas/state.hpp"
#include "test_support.hpp"

using namespace qmeas;

namespace {
const double kInvSqrt2 = 1.0 / std::numbers::sqrt2;
}

TEST_CASE("pure states must arrive normalized") {
  CHECK_THROWS_AS(PureState({0.5, 0.5}), std::invalid_argument);
  CHECK_NOTHROW(PureState({kInvSqrt2, kInvSqrt2}));
  CHECK_THROWS_AS(PureState::normalized({0.0, 0.0}), std::invalid_argument);
  const PureState s = PureState::normalized({3.0, 4.0});
  CHECK(std::abs(s.amplitude(0) - Complex(0.6, 0.0)) < 1e-15);
  CHECK(std::abs(s.amplitude(1) - Complex(0.8, 0.0)) < 1e-15);
}

TEST_CASE("inner products, fidelity, and outer products") {
  const PureState a = PureState::basis(2, 0);
  const PureState plus({kInvSqrt2, kInvSqrt2});
  CHECK(std::abs(a.inner(plus) - Complex(kInvSqrt2, 0.0)) < 1e-15);
  CHECK(a.fidelity(plus) == doctest::Approx(0.5).epsilon(1e-12));
  const Matrix op = outer(a, plus);
  CHECK(std::abs(op(0, 0) - Complex(kInvSqrt2, 0.0)) < 1e-15);
  CHECK(std::abs(op(1, 0) - Complex(0.0, 0.0)) < 1e-15);
}

TEST_CASE("density matrix constructor rejects invalid operators") {
  CHECK_THROWS_AS(DensityMatrix(Matrix::from_rows({{0.5, 0.5}, {0.0, 0.5}})),
                  std::invalid_argument);  // not Hermitian
  CHECK_THROWS_AS(DensityMatrix(Matrix::from_rows({{0.7, 0.0}, {0.0, 0.7}})),
                  std::invalid_argument);  // trace != 1
  CHECK_THROWS_AS(DensityMatrix(Matrix::from_rows({{1.5, 0.0}, {0.0, -0.5}})),
                  std::invalid_argument);  // negative eigenvalue
  CHECK_NOTHROW(DensityMatrix(Matrix::from_rows({{0.5, 0.25}, {0.25, 0.5}})));
}

TEST_CASE("projector constructor enforces idempotence") {
  CHECK_THROWS_AS(Projector(Matrix::from_rows({{0.5, 0.0}, {0.0, 0.5}})),
                  std::invalid_argument);
  const Projector p = Projector::onto(PureState({kInvSqrt2, kInvSqrt2}));
  CHECK(max_abs_diff(matmul(p.matrix(), p.matrix()), p.matrix()) < 1e-12);
}

TEST_CASE("mixtures validate weights and dimensions") {
  const DensityMatrix g = pure_to_density(PureState::basis(2, 0));
  const DensityMatrix e = pure_to_density(PureState::basis(2, 1));
  const DensityMatrix m = mix({{0.25, g}, {0.75, e}});
  CHECK(std::real(m.entry(0, 0)) == doctest::Approx(0.25).epsilon(1e-12));
  CHECK_THROWS_AS(mix({{0.6, g}, {0.6, e}}), std::invalid_argument);
  CHECK_THROWS_AS(mix({{-0.5, g}, {1.5, e}}), std::invalid_argument);
}

TEST_CASE("born probabilities and projective update") {
  const PureState plus({kInvSqrt2, kInvSqrt2});
  const DensityMatrix rho = pure_to_density(plus);
  const Projector p0 = Projector::onto(PureState::basis(2, 0));
  CHECK(born_probability(rho, p0) == doctest::Approx(0.5).epsilon(1e-12));

  const ProjectedState after = project_update(rho, p0);
  CHECK(after.probability == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(std::real(after.state.entry(0, 0)) == doctest::Approx(1.0).epsilon(1e-12));

  // Zero-probability branch is rejected.
  const Projector p1 = Projector::onto(PureState::basis(2, 1));
  const DensityMatrix ground = pure_to_density(PureState::basis(2, 0));
  CHECK_THROWS_AS(project_update(ground, p1), std::runtime_error);
}

TEST_CASE("purity separates pure states from mixtures") {
  std::mt19937_64 rng(21);
  const DensityMatrix pure = pure_to_density(test::random_state(rng, 3));
  CHECK(purity(pure) == doctest::Approx(1.0).epsilon(1e-10));
  const DensityMatrix mixed = DensityMatrix(Matrix::identity(2) * 0.5);
  CHECK(purity(mixed) == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("bloch vector places the ground state at the south pole") {
  const auto ground = bloch_vector(pure_to_density(PureState::basis(2, 0)));
  CHECK(ground[2] == doctest::Approx(-1.0).epsilon(1e-12));
  const auto plus = bloch_vector(pure_to_density(PureState({kInvSqrt2, kInvSqrt2})));
  CHECK(plus[0] == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(plus[2] == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("tensor products compose amplitudes with the left factor slow") {
  const PureState a({0.6, 0.8});
  const PureState b = PureState::basis(3, 2);
  const PureState ab = tensor(a, b);
  REQUIRE(ab.dim() == 6);
  CHECK(std::abs(ab.amplitude(2) - Complex(0.6, 0.0)) < 1e-15);
  CHECK(std::abs(ab.amplitude(5) - Complex(0.8, 0.0)) < 1e-15);
}

TEST_CASE("entangled pair reduces to the maximally mixed qubit") {
  // (|e0> + |g1>)/sqrt(2) with qubit factors (atom, photon-count).
  std::vector<Complex> amps(4, Complex(0.0, 0.0));
  amps[2] = kInvSqrt2;  // |e,0> with atom excited = index 1 slow factor
  amps[1] = kInvSqrt2;  // |g,1>
  const PureState joint(std::move(amps));
  const DensityMatrix rho = pure_to_density(joint);
  const DimSpec dims{{2, 2}};
  for (std::size_t keep = 0; keep < 2; ++keep) {
    const Matrix reduced = partial_trace(rho.matrix(), dims, keep);
    CHECK(max_abs_diff(reduced, Matrix::identity(2) * 0.5) < 1e-12);
  }
}
