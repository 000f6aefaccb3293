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

#include "qmeas/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <string>

namespace qmeas {

namespace {

std::string shape_of(const Matrix& m) {
  return std::to_string(m.rows()) + "x" + std::to_string(m.cols());
}

void require_square(const Matrix& m, const char* op) {
  if (!m.is_square()) {
    throw std::invalid_argument(std::string(op) + ": matrix must be square, got " +
                                shape_of(m));
  }
}

void require_same_shape(const Matrix& a, const Matrix& b, const char* op) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw std::invalid_argument(std::string(op) + ": shape mismatch, " +
                                shape_of(a) + " vs " + shape_of(b));
  }
}

// Frobenius norm of the strict off-diagonal part.
double offdiag_norm(const Matrix& a) {
  double sum = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) {
      if (i != j) sum += std::norm(a(i, j));
    }
  }
  return std::sqrt(sum);
}

}  // namespace

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = Complex(1.0, 0.0);
  return m;
}

Matrix Matrix::zero(std::size_t rows, std::size_t cols) {
  return Matrix(rows, cols);
}

Matrix Matrix::from_rows(
    std::initializer_list<std::initializer_list<Complex>> rows) {
  const std::size_t r = rows.size();
  if (r == 0) throw std::invalid_argument("from_rows: empty matrix");
  const std::size_t c = rows.begin()->size();
  Matrix m(r, c);
  std::size_t i = 0;
  for (const auto& row : rows) {
    if (row.size() != c) {
      throw std::invalid_argument("from_rows: ragged rows, row " +
                                  std::to_string(i) + " has " +
                                  std::to_string(row.size()) + " entries, expected " +
                                  std::to_string(c));
    }
    std::size_t j = 0;
    for (const Complex& v : row) m(i, j++) = v;
    ++i;
  }
  m.ensure_finite();
  return m;
}

Matrix Matrix::from_data(std::size_t rows, std::size_t cols,
                         std::vector<Complex> data) {
  if (data.size() != rows * cols) {
    throw std::invalid_argument("from_data: buffer holds " +
                                std::to_string(data.size()) + " entries, expected " +
                                std::to_string(rows * cols));
  }
  Matrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = data[i * cols + j];
  m.ensure_finite();
  return m;
}

Matrix Matrix::column(const std::vector<Complex>& amplitudes) {
  Matrix m(amplitudes.size(), 1);
  for (std::size_t i = 0; i < amplitudes.size(); ++i) m(i, 0) = amplitudes[i];
  m.ensure_finite();
  return m;
}

Complex Matrix::at(std::size_t i, std::size_t j) const {
  if (i >= rows_ || j >= cols_) {
    throw std::out_of_range("Matrix::at(" + std::to_string(i) + ", " +
                            std::to_string(j) + ") outside " + shape_of(*this));
  }
  return (*this)(i, j);
}

Matrix Matrix::operator+(const Matrix& other) const {
  require_same_shape(*this, other, "operator+");
  Matrix out(rows_, cols_);
  for (std::size_t k = 0; k < data_.size(); ++k) out.data_[k] = data_[k] + other.data_[k];
  return out;
}

Matrix Matrix::operator-(const Matrix& other) const {
  require_same_shape(*this, other, "operator-");
  Matrix out(rows_, cols_);
  for (std::size_t k = 0; k < data_.size(); ++k) out.data_[k] = data_[k] - other.data_[k];
  return out;
}

Matrix Matrix::operator*(const Matrix& other) const { return matmul(*this, other); }

Matrix Matrix::operator*(Complex scalar) const {
  Matrix out(rows_, cols_);
  for (std::size_t k = 0; k < data_.size(); ++k) out.data_[k] = data_[k] * scalar;
  return out;
}

Matrix Matrix::operator*(double scalar) const { return (*this) * Complex(scalar, 0.0); }

void Matrix::ensure_finite() const {
  for (const Complex& v : data_) {
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
      throw std::runtime_error("matrix entry is not finite");
    }
  }
}

Matrix operator*(Complex scalar, const Matrix& m) { return m * scalar; }
Matrix operator*(double scalar, const Matrix& m) { return m * scalar; }

std::size_t DimSpec::product() const {
  std::size_t p = 1;
  for (std::size_t f : factors) p *= f;
  return p;
}

Matrix dagger(const Matrix& m) {
  Matrix out(m.cols(), m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out(j, i) = std::conj(m(i, j));
  return out;
}

Matrix matmul(const Matrix& a, const Matrix& b) {
  if (a.cols() != b.rows()) {
    throw std::invalid_argument("matmul: inner dimensions differ, " + shape_of(a) +
                                " times " + shape_of(b));
  }
  Matrix out(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const Complex aik = a(i, k);
      if (aik == Complex(0.0, 0.0)) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) out(i, j) += aik * b(k, j);
    }
  }
  return out;
}

Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) {
      const Complex aij = a(i, j);
      if (aij == Complex(0.0, 0.0)) continue;
      for (std::size_t k = 0; k < b.rows(); ++k)
        for (std::size_t l = 0; l < b.cols(); ++l)
          out(i * b.rows() + k, j * b.cols() + l) = aij * b(k, l);
    }
  return out;
}

Complex trace(const Matrix& m) {
  require_square(m, "trace");
  Complex t(0.0, 0.0);
  for (std::size_t i = 0; i < m.rows(); ++i) t += m(i, i);
  return t;
}

namespace {

// Flattens a multi-index where `kept` sits at position `keep` and `rest`
// enumerates the remaining factors in row-major order.
std::size_t compose_index(const std::vector<std::size_t>& factors, std::size_t keep,
                          std::size_t kept, std::size_t rest) {
  std::vector<std::size_t> digits(factors.size(), 0);
  for (std::size_t f = factors.size(); f-- > 0;) {
    if (f == keep) continue;
    digits[f] = rest % factors[f];
    rest /= factors[f];
  }
  digits[keep] = kept;
  std::size_t idx = 0;
  for (std::size_t f = 0; f < factors.size(); ++f) idx = idx * factors[f] + digits[f];
  return idx;
}

}  // namespace

Matrix partial_trace(const Matrix& m, const DimSpec& dims, std::size_t keep) {
  require_square(m, "partial_trace");
  if (dims.factors.empty()) {
    throw std::invalid_argument("partial_trace: empty dimension list");
  }
  if (keep >= dims.factors.size()) {
    throw std::invalid_argument("partial_trace: keep index " + std::to_string(keep) +
                                " outside " + std::to_string(dims.factors.size()) +
                                " factors");
  }
  if (dims.product() != m.rows()) {
    throw std::invalid_argument("partial_trace: factors multiply to " +
                                std::to_string(dims.product()) + ", matrix is " +
                                shape_of(m));
  }
  const std::size_t d = dims.factors[keep];
  std::size_t rest = 1;
  for (std::size_t f = 0; f < dims.factors.size(); ++f)
    if (f != keep) rest *= dims.factors[f];

  Matrix out(d, d);
  for (std::size_t a = 0; a < d; ++a)
    for (std::size_t b = 0; b < d; ++b) {
      Complex sum(0.0, 0.0);
      for (std::size_t e = 0; e < rest; ++e) {
        const std::size_t i = compose_index(dims.factors, keep, a, e);
        const std::size_t j = compose_index(dims.factors, keep, b, e);
        sum += m(i, j);
      }
      out(a, b) = sum;
    }
  return out;
}

EigenSystem eig_hermitian(const Matrix& m, double tol) {
  require_square(m, "eig_hermitian");
  const double gap = hermiticity_gap(m);
  if (gap > tol) {
    std::ostringstream msg;
    msg << "eig_hermitian: matrix deviates from Hermitian by " << gap
        << " (tolerance " << tol << ")";
    throw std::invalid_argument(msg.str());
  }

  const std::size_t n = m.rows();
  // Work on the Hermitian average so roundoff in the input cannot leak
  // imaginary parts into the eigenvalues.
  Matrix a = (m + dagger(m)) * 0.5;
  Matrix v = Matrix::identity(n);

  constexpr int kMaxSweeps = 100;

  // Rotations re-inject roundoff of order eps * scale into entries already
  // annihilated, so the off-diagonal norm bottoms out near n * eps * scale.
  // Aim for that floor (the quadratic convergence reaches it in a couple of
  // extra sweeps) and stop early if a sweep no longer makes progress.
  const double scale = max_abs(a);
  const double floor_target = std::max(
      1e-18, 8.0 * std::numeric_limits<double>::epsilon() * scale *
                 static_cast<double>(n));

  double off = offdiag_norm(a);
  double prev_off = std::numeric_limits<double>::infinity();
  int sweep = 0;
  while (off > floor_target && off < prev_off && sweep < kMaxSweeps) {
    prev_off = off;
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const Complex apq = a(p, q);
        const double mag = std::abs(apq);
        if (mag == 0.0) continue;
        const Complex phase = apq / mag;
        const double app = a(p, p).real();
        const double aqq = a(q, q).real();
        const double tau = (aqq - app) / (2.0 * mag);
        const double sign = tau >= 0.0 ? 1.0 : -1.0;
        const double t = sign / (std::abs(tau) + std::hypot(1.0, tau));
        const double c = 1.0 / std::hypot(1.0, t);
        const double s = t * c;
        const Complex sp = s * phase;             // rotates column q into p
        const Complex spc = s * std::conj(phase);  // rotates column p into q

        // Right-multiply by the plane rotation (columns p, q).
        for (std::size_t r = 0; r < n; ++r) {
          const Complex arp = a(r, p);
          const Complex arq = a(r, q);
          a(r, p) = c * arp - spc * arq;
          a(r, q) = sp * arp + c * arq;
        }
        // Left-multiply by its adjoint (rows p, q).
        for (std::size_t cidx = 0; cidx < n; ++cidx) {
          const Complex apc = a(p, cidx);
          const Complex aqc = a(q, cidx);
          a(p, cidx) = c * apc - sp * aqc;
          a(q, cidx) = spc * apc + c * aqc;
        }
        // Accumulate the eigenvector basis.
        for (std::size_t r = 0; r < n; ++r) {
          const Complex vrp = v(r, p);
          const Complex vrq = v(r, q);
          v(r, p) = c * vrp - spc * vrq;
          v(r, q) = sp * vrp + c * vrq;
        }
        a(p, q) = Complex(0.0, 0.0);
        a(q, p) = Complex(0.0, 0.0);
      }
    }
    off = offdiag_norm(a);
    ++sweep;
  }
  if (off > std::max(1e-12, 1e-12 * scale)) {
    std::ostringstream msg;
    msg << "eig_hermitian: no convergence after " << sweep
        << " sweeps, off-diagonal norm " << off;
    throw std::runtime_error(msg.str());
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&a](std::size_t x, std::size_t y) {
    return a(x, x).real() < a(y, y).real();
  });

  EigenSystem out;
  out.eigenvalues.resize(n);
  out.eigenvectors = Matrix(n, n);
  for (std::size_t k = 0; k < n; ++k) {
    out.eigenvalues[k] = a(order[k], order[k]).real();
    for (std::size_t r = 0; r < n; ++r) out.eigenvectors(r, k) = v(r, order[k]);
  }
  return out;
}

double min_eigenvalue(const Matrix& m, double tol) {
  return eig_hermitian(m, tol).eigenvalues.front();
}

bool is_psd(const Matrix& m, double tol) {
  if (!m.is_square()) return false;
  if (hermiticity_gap(m) > tol) return false;
  return min_eigenvalue(m, tol) >= -tol;
}

Matrix sqrt_psd(const Matrix& m, double tol) {
  const EigenSystem eig = eig_hermitian(m, tol);
  const std::size_t n = m.rows();
  Matrix out(n, n);
  for (std::size_t k = 0; k < n; ++k) {
    double lam = eig.eigenvalues[k];
    if (lam < -tol) {
      std::ostringstream msg;
      msg << "sqrt_psd: eigenvalue " << lam << " below -" << tol;
      throw std::runtime_error(msg.str());
    }
    if (lam < 0.0) lam = 0.0;
    const double root = std::sqrt(lam);
    for (std::size_t i = 0; i < n; ++i) {
      const Complex vi = eig.eigenvectors(i, k);
      if (vi == Complex(0.0, 0.0)) continue;
      for (std::size_t j = 0; j < n; ++j) {
        out(i, j) += root * vi * std::conj(eig.eigenvectors(j, k));
      }
    }
  }
  return out;
}

double max_abs_diff(const Matrix& a, const Matrix& b) {
  require_same_shape(a, b, "max_abs_diff");
  double worst = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      worst = std::max(worst, std::abs(a(i, j) - b(i, j)));
  return worst;
}

double max_abs(const Matrix& m) {
  double worst = 0.0;
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) worst = std::max(worst, std::abs(m(i, j)));
  return worst;
}

double hermiticity_gap(const Matrix& m) {
  require_square(m, "hermiticity_gap");
  double worst = 0.0;
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      worst = std::max(worst, std::abs(m(i, j) - std::conj(m(j, i))));
  return worst;
}

}  // namespace qmeas
