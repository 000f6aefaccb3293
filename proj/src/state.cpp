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

#include "qmeas/state.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace qmeas {

namespace {

double vector_norm(const std::vector<Complex>& amps) {
  double sum = 0.0;
  for (const Complex& a : amps) sum += std::norm(a);
  return std::sqrt(sum);
}

}  // namespace

PureState::PureState(std::vector<Complex> amplitudes, double tol)
    : amps_(std::move(amplitudes)) {
  if (amps_.empty()) throw std::invalid_argument("PureState: empty amplitude vector");
  for (const Complex& a : amps_) {
    if (!std::isfinite(a.real()) || !std::isfinite(a.imag())) {
      throw std::invalid_argument("PureState: non-finite amplitude");
    }
  }
  const double norm = vector_norm(amps_);
  if (std::abs(norm - 1.0) > tol) {
    std::ostringstream msg;
    msg << "PureState: norm " << norm << " deviates from 1 beyond " << tol;
    throw std::invalid_argument(msg.str());
  }
  for (Complex& a : amps_) a /= norm;
}

PureState PureState::basis(std::size_t dim, std::size_t index) {
  if (index >= dim) {
    throw std::invalid_argument("PureState::basis: index " + std::to_string(index) +
                                " outside dimension " + std::to_string(dim));
  }
  std::vector<Complex> amps(dim, Complex(0.0, 0.0));
  amps[index] = Complex(1.0, 0.0);
  return PureState(std::move(amps));
}

PureState PureState::normalized(std::vector<Complex> amplitudes) {
  const double norm = vector_norm(amplitudes);
  if (norm < 1e-12) {
    throw std::invalid_argument("PureState::normalized: vector norm below 1e-12");
  }
  for (Complex& a : amplitudes) a /= norm;
  return PureState(std::move(amplitudes));
}

Complex PureState::amplitude(std::size_t i) const {
  if (i >= amps_.size()) {
    throw std::out_of_range("PureState::amplitude: index " + std::to_string(i) +
                            " outside dimension " + std::to_string(amps_.size()));
  }
  return amps_[i];
}

Complex PureState::inner(const PureState& other) const {
  if (dim() != other.dim()) {
    throw std::invalid_argument("PureState::inner: dimensions differ, " +
                                std::to_string(dim()) + " vs " +
                                std::to_string(other.dim()));
  }
  Complex sum(0.0, 0.0);
  for (std::size_t i = 0; i < amps_.size(); ++i)
    sum += std::conj(amps_[i]) * other.amps_[i];
  return sum;
}

double PureState::fidelity(const PureState& other) const {
  return std::norm(inner(other));
}

Matrix PureState::to_column() const { return Matrix::column(amps_); }

Matrix outer(const PureState& ket, const PureState& bra) {
  Matrix out(ket.dim(), bra.dim());
  for (std::size_t i = 0; i < ket.dim(); ++i) {
    const Complex ki = ket.amplitude(i);
    for (std::size_t j = 0; j < bra.dim(); ++j)
      out(i, j) = ki * std::conj(bra.amplitude(j));
  }
  return out;
}

PureState tensor(const PureState& a, const PureState& b) {
  std::vector<Complex> amps(a.dim() * b.dim());
  for (std::size_t i = 0; i < a.dim(); ++i)
    for (std::size_t j = 0; j < b.dim(); ++j)
      amps[i * b.dim() + j] = a.amplitude(i) * b.amplitude(j);
  return PureState(std::move(amps));
}

DensityMatrix::DensityMatrix(Matrix m, double tol) : m_(std::move(m)) {
  if (!m_.is_square()) {
    throw std::invalid_argument("DensityMatrix: matrix must be square");
  }
  const double herm = hermiticity_gap(m_);
  if (herm > tol) {
    std::ostringstream msg;
    msg << "DensityMatrix: hermiticity deviation " << herm << " beyond " << tol;
    throw std::invalid_argument(msg.str());
  }
  const double tr_gap = std::abs(trace(m_) - Complex(1.0, 0.0));
  if (tr_gap > tol) {
    std::ostringstream msg;
    msg << "DensityMatrix: trace deviates from 1 by " << tr_gap << " beyond " << tol;
    throw std::invalid_argument(msg.str());
  }
  const double min_eig = min_eigenvalue(m_, tol);
  if (min_eig < -tol) {
    std::ostringstream msg;
    msg << "DensityMatrix: negative eigenvalue " << min_eig << " beyond -" << tol;
    throw std::invalid_argument(msg.str());
  }
}

Projector::Projector(Matrix m, double tol) : m_(std::move(m)) {
  if (!m_.is_square()) throw std::invalid_argument("Projector: matrix must be square");
  const double herm = hermiticity_gap(m_);
  if (herm > tol) {
    std::ostringstream msg;
    msg << "Projector: hermiticity deviation " << herm << " beyond " << tol;
    throw std::invalid_argument(msg.str());
  }
  const double idem = max_abs_diff(matmul(m_, m_), m_);
  if (idem > tol) {
    std::ostringstream msg;
    msg << "Projector: idempotence deviation " << idem << " beyond " << tol;
    throw std::invalid_argument(msg.str());
  }
}

Projector Projector::onto(const PureState& state) {
  return Projector(outer(state, state));
}

Projector Projector::identity(std::size_t dim) {
  return Projector(Matrix::identity(dim));
}

DensityMatrix pure_to_density(const PureState& psi) {
  return DensityMatrix(outer(psi, psi));
}

DensityMatrix mix(const std::vector<std::pair<double, DensityMatrix>>& components) {
  if (components.empty()) throw std::invalid_argument("mix: empty component list");
  const std::size_t dim = components.front().second.dim();
  double total = 0.0;
  Matrix sum(dim, dim);
  for (const auto& [weight, rho] : components) {
    if (weight < -1e-12) {
      throw std::invalid_argument("mix: negative weight " + std::to_string(weight));
    }
    if (rho.dim() != dim) {
      throw std::invalid_argument("mix: component dimensions differ");
    }
    total += weight;
    sum = sum + rho.matrix() * weight;
  }
  if (std::abs(total - 1.0) > 1e-9) {
    std::ostringstream msg;
    msg << "mix: weights sum to " << total << ", expected 1";
    throw std::invalid_argument(msg.str());
  }
  return DensityMatrix(std::move(sum));
}

double born_probability(const DensityMatrix& rho, const Projector& p) {
  if (rho.dim() != p.dim()) {
    throw std::invalid_argument("born_probability: dimensions differ, " +
                                std::to_string(rho.dim()) + " vs " +
                                std::to_string(p.dim()));
  }
  const double raw = trace(matmul(p.matrix(), rho.matrix())).real();
  constexpr double kClamp = 1e-10;
  if (raw < -kClamp || raw > 1.0 + kClamp) {
    std::ostringstream msg;
    msg << "born_probability: value " << raw << " outside [0, 1] beyond " << kClamp;
    throw std::runtime_error(msg.str());
  }
  return std::min(1.0, std::max(0.0, raw));
}

ProjectedState project_update(const DensityMatrix& rho, const Projector& p) {
  const double prob = born_probability(rho, p);
  if (prob <= 1e-12) {
    throw std::runtime_error(
        "project_update: outcome probability " + std::to_string(prob) +
        " too small to condition on");
  }
  Matrix updated = matmul(matmul(p.matrix(), rho.matrix()), p.matrix()) * (1.0 / prob);
  return ProjectedState{DensityMatrix(std::move(updated)), prob};
}

double purity(const DensityMatrix& rho) {
  return trace(matmul(rho.matrix(), rho.matrix())).real();
}

std::array<double, 3> bloch_vector(const DensityMatrix& rho) {
  if (rho.dim() != 2) {
    throw std::invalid_argument("bloch_vector: expected a qubit, got dimension " +
                                std::to_string(rho.dim()));
  }
  const Complex off = rho.entry(0, 1);
  const double z = rho.entry(1, 1).real() - rho.entry(0, 0).real();
  return {2.0 * off.real(), -2.0 * off.imag(), z};
}

}  // namespace qmeas
