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
#include <random>

#include <doctest.h>

#include "qmeas/linalg.hpp"
#include "test_support.hpp"

using namespace qmeas;

TEST_CASE("matrix product against hand-computed entries") {
  const Matrix a = Matrix::from_rows({{1.0, Complex(0.0, 2.0)}, {3.0, -1.0}});
  const Matrix b = Matrix::from_rows({{0.0, 1.0}, {Complex(0.0, 1.0), 2.0}});
  const Matrix c = matmul(a, b);
  CHECK(std::abs(c(0, 0) - Complex(-2.0, 0.0)) < 1e-15);
  CHECK(std::abs(c(0, 1) - Complex(1.0, 4.0)) < 1e-15);
  CHECK(std::abs(c(1, 0) - Complex(0.0, -1.0)) < 1e-15);
  CHECK(std::abs(c(1, 1) - Complex(1.0, 0.0)) < 1e-15);
  CHECK_THROWS_AS(matmul(a, Matrix(3, 3)), std::invalid_argument);
}

TEST_CASE("dagger conjugates and transposes") {
  const Matrix a = Matrix::from_rows({{Complex(1.0, 2.0), 3.0}, {0.0, Complex(0.0, -1.0)}});
  const Matrix d = dagger(a);
  CHECK(std::abs(d(0, 0) - Complex(1.0, -2.0)) < 1e-15);
  CHECK(std::abs(d(1, 0) - Complex(3.0, 0.0)) < 1e-15);
  CHECK(std::abs(d(0, 1) - Complex(0.0, 0.0)) < 1e-15);
  CHECK(std::abs(d(1, 1) - Complex(0.0, 1.0)) < 1e-15);
}

TEST_CASE("trace requires square input and sums the diagonal") {
  const Matrix a = Matrix::from_rows({{1.0, 5.0}, {7.0, Complex(2.0, 3.0)}});
  CHECK(std::abs(trace(a) - Complex(3.0, 3.0)) < 1e-15);
  CHECK_THROWS_AS(trace(Matrix(2, 3)), std::invalid_argument);
}

TEST_CASE("kron follows the row-major slow-left convention") {
  const Matrix a = Matrix::from_rows({{1.0, 2.0}, {3.0, 4.0}});
  const Matrix b = Matrix::from_rows({{0.0, 5.0}, {6.0, 7.0}});
  const Matrix k = kron(a, b);
  REQUIRE(k.rows() == 4);
  CHECK(std::abs(k(0, 1) - Complex(5.0, 0.0)) < 1e-15);   // a00 * b01
  CHECK(std::abs(k(2, 0) - Complex(0.0, 0.0)) < 1e-15);   // a10 * b00
  CHECK(std::abs(k(3, 1) - Complex(21.0, 0.0)) < 1e-15);  // a10 * b11
  CHECK(std::abs(k(2, 3) - Complex(20.0, 0.0)) < 1e-15);  // a11 * b01
}

TEST_CASE("eigendecomposition of Pauli-z") {
  const Matrix pauli_z = Matrix::from_rows({{1.0, 0.0}, {0.0, -1.0}});
  const EigenSystem eig = eig_hermitian(pauli_z);
  REQUIRE(eig.eigenvalues.size() == 2);
  CHECK(eig.eigenvalues[0] == doctest::Approx(-1.0).epsilon(1e-12));
  CHECK(eig.eigenvalues[1] == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("eigendecomposition properties on random Hermitian matrices") {
  std::mt19937_64 rng(11);
  for (std::size_t dim : {2, 3, 5, 8}) {
    for (int rep = 0; rep < 5; ++rep) {
      const Matrix m = test::random_hermitian(rng, dim);
      const EigenSystem eig = eig_hermitian(m);

      double sum = 0.0;
      for (std::size_t k = 0; k + 1 < eig.eigenvalues.size(); ++k) {
        CHECK(eig.eigenvalues[k] <= eig.eigenvalues[k + 1] + 1e-12);
      }
      for (const double v : eig.eigenvalues) {
        sum += v;
      }
      CHECK(std::abs(sum - std::real(trace(m))) < 1e-10);

      // Columns orthonormal.
      CHECK(max_abs_diff(matmul(dagger(eig.eigenvectors), eig.eigenvectors),
                         Matrix::identity(dim)) < 1e-10);

      // m v_k = a_k v_k.
      const Matrix mv = matmul(m, eig.eigenvectors);
      for (std::size_t k = 0; k < dim; ++k) {
        for (std::size_t i = 0; i < dim; ++i) {
          CHECK(std::abs(mv(i, k) - eig.eigenvalues[k] * eig.eigenvectors(i, k)) <
                1e-9);
        }
      }
    }
  }
  CHECK_THROWS_AS(eig_hermitian(Matrix::from_rows({{0.0, 1.0}, {0.0, 0.0}})),
                  std::invalid_argument);
}

TEST_CASE("degenerate spectra reproduce the spectral projector") {
  // Doubly degenerate subspace: compare projectors, not eigenvector choices.
  std::mt19937_64 rng(12);
  const std::vector<PureState> basis = test::random_orthonormal_basis(rng, 3);
  Matrix m = outer(basis[0], basis[0]) * 2.0 + outer(basis[1], basis[1]) * 2.0 +
             outer(basis[2], basis[2]) * 5.0;
  const EigenSystem eig = eig_hermitian(0.5 * (m + dagger(m)));
  Matrix projector(3, 3);
  for (std::size_t k = 0; k < 3; ++k) {
    if (std::abs(eig.eigenvalues[k] - 2.0) < 1e-6) {
      for (std::size_t i = 0; i < 3; ++i) {
        for (std::size_t j = 0; j < 3; ++j) {
          projector(i, j) +=
              eig.eigenvectors(i, k) * std::conj(eig.eigenvectors(j, k));
        }
      }
    }
  }
  const Matrix expected =
      outer(basis[0], basis[0]) + outer(basis[1], basis[1]);
  CHECK(max_abs_diff(projector, expected) < 1e-8);
}

TEST_CASE("partial trace recovers tensor factors") {
  std::mt19937_64 rng(13);
  const Matrix rho_a = test::random_density(rng, 2).matrix();
  const Matrix rho_b = test::random_density(rng, 3).matrix();
  const Matrix joint = kron(rho_a, rho_b);
  const DimSpec dims{{2, 3}};
  CHECK(max_abs_diff(partial_trace(joint, dims, 0), rho_a) < 1e-12);
  CHECK(max_abs_diff(partial_trace(joint, dims, 1), rho_b) < 1e-12);

  // Trace is preserved for arbitrary (non-product) operators.
  const Matrix any = test::random_hermitian(rng, 6);
  CHECK(std::abs(trace(partial_trace(any, dims, 0)) - trace(any)) < 1e-12);

  // Three factors.
  const Matrix rho_c = test::random_density(rng, 2).matrix();
  const Matrix triple = kron(kron(rho_a, rho_b), rho_c);
  CHECK(max_abs_diff(partial_trace(triple, DimSpec{{2, 3, 2}}, 1), rho_b) < 1e-12);
}

TEST_CASE("psd square root squares back") {
  std::mt19937_64 rng(14);
  for (int rep = 0; rep < 5; ++rep) {
    const Matrix p = test::random_psd(rng, 4);
    const Matrix r = sqrt_psd(p);
    CHECK(max_abs_diff(matmul(r, r), p) < 1e-8);
    CHECK(min_eigenvalue(r) > -1e-9);
  }
  const Matrix not_psd = Matrix::from_rows({{-1.0, 0.0}, {0.0, 1.0}});
  CHECK_THROWS_AS(sqrt_psd(not_psd), std::runtime_error);
}

TEST_CASE("min_eigenvalue and psd classification") {
  const Matrix m = Matrix::from_rows({{2.0, 0.0}, {0.0, -0.5}});
  CHECK(min_eigenvalue(m) == doctest::Approx(-0.5).epsilon(1e-12));
  CHECK_FALSE(is_psd(m));
  CHECK(is_psd(Matrix::identity(3)));
}

TEST_CASE("max_abs_diff and max_abs") {
  const Matrix a = Matrix::from_rows({{1.0, 2.0}, {3.0, 4.0}});
  Matrix b = a;
  b(1, 0) += Complex(0.0, 0.25);
  CHECK(max_abs_diff(a, b) == doctest::Approx(0.25).epsilon(1e-12));
  CHECK(max_abs(b) == doctest::Approx(4.0).epsilon(1e-12));
  CHECK_THROWS_AS(max_abs_diff(a, Matrix(3, 2)), std::invalid_argument);
}
