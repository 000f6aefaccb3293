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

#pragma once

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <vector>

namespace qmeas {

using Complex = std::complex<double>;

// Default tolerance for validation checks (hermiticity, positivity, ...).
inline constexpr double kDefaultTol = 1e-9;

/**
 * Dense row-major complex matrix sized for small quantum problems
 * (dimensions up to a few hundred).  Entries must stay finite; factory
 * functions that accept data validate this.
 */
class Matrix {
 public:
  Matrix() : rows_(0), cols_(0) {}
  Matrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), data_(rows * cols, Complex(0.0, 0.0)) {}

  static Matrix identity(std::size_t n);
  static Matrix zero(std::size_t rows, std::size_t cols);
  // Builds a matrix from nested brace lists; rows must have equal length.
  static Matrix from_rows(
      std::initializer_list<std::initializer_list<Complex>> rows);
  // Builds a matrix from a flat row-major buffer; validates finiteness.
  static Matrix from_data(std::size_t rows, std::size_t cols,
                          std::vector<Complex> data);
  // n x 1 column vector.
  static Matrix column(const std::vector<Complex>& amplitudes);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool is_square() const { return rows_ == cols_; }

  Complex& operator()(std::size_t i, std::size_t j) {
    return data_[i * cols_ + j];
  }
  const Complex& operator()(std::size_t i, std::size_t j) const {
    return data_[i * cols_ + j];
  }
  // Bounds-checked access; throws std::out_of_range.
  Complex at(std::size_t i, std::size_t j) const;

  const std::vector<Complex>& data() const { return data_; }

  Matrix operator+(const Matrix& other) const;
  Matrix operator-(const Matrix& other) const;
  Matrix operator*(const Matrix& other) const;
  Matrix operator*(Complex scalar) const;
  Matrix operator*(double scalar) const;

  // Throws std::runtime_error if any entry is non-finite.
  void ensure_finite() const;

 private:
  std::size_t rows_;
  std::size_t cols_;
  std::vector<Complex> data_;
};

Matrix operator*(Complex scalar, const Matrix& m);
Matrix operator*(double scalar, const Matrix& m);

/**
 * Dimension layout of a tensor-product space.  `factors` lists the local
 * dimensions in row-major (leftmost factor slowest) order.
 */
struct DimSpec {
  std::vector<std::size_t> factors;

  std::size_t product() const;
};

// Conjugate transpose.
Matrix dagger(const Matrix& m);

// Matrix product; throws std::invalid_argument naming both shapes on
// dimension mismatch.
Matrix matmul(const Matrix& a, const Matrix& b);

// Kronecker product, row-major convention: the left factor is the slow
// index, kron(A, B)[(i*p + k), (j*q + l)] = A[i,j] * B[k,l].
Matrix kron(const Matrix& a, const Matrix& b);

// Trace of a square matrix; throws std::invalid_argument otherwise.
Complex trace(const Matrix& m);

/**
 * Partial trace over all factors except `keep`.  `dims.product()` must equal
 * the matrix dimension and the matrix must be square.  Works for any number
 * of tensor factors.
 */
Matrix partial_trace(const Matrix& m, const DimSpec& dims, std::size_t keep);

struct EigenSystem {
  // Ascending real eigenvalues.
  std::vector<double> eigenvalues;
  // Orthonormal eigenvectors as columns, aligned with `eigenvalues`.
  Matrix eigenvectors;
};

/**
 * Eigendecomposition of a Hermitian matrix by cyclic complex Jacobi
 * rotations.  Sweeps until the off-diagonal Frobenius norm drops below
 * 1e-12, capped at 100 sweeps.  Inputs whose hermiticity deviation exceeds
 * `tol` are rejected with the measured deviation in the message.
 */
EigenSystem eig_hermitian(const Matrix& m, double tol = kDefaultTol);

// Smallest eigenvalue of a Hermitian matrix.
double min_eigenvalue(const Matrix& m, double tol = kDefaultTol);

// True iff `m` is Hermitian within `tol` and its minimum eigenvalue is
// >= -tol.
bool is_psd(const Matrix& m, double tol = kDefaultTol);

// Principal square root of a positive semidefinite matrix.  Eigenvalues in
// [-tol, 0) are clamped to zero; more negative ones raise std::runtime_error.
Matrix sqrt_psd(const Matrix& m, double tol = kDefaultTol);

// max_ij |a(i,j) - b(i,j)|; shapes must match.
double max_abs_diff(const Matrix& a, const Matrix& b);

// max_ij |m(i,j)|.
double max_abs(const Matrix& m);

// max_ij |m(i,j) - conj(m(j,i))| for a square matrix.
double hermiticity_gap(const Matrix& m);

}  // namespace qmeas
