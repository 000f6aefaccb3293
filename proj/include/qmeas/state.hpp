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

#include <array>
#include <cstddef>
#include <utility>
#include <vector>

#include "qmeas/linalg.hpp"

namespace qmeas {

/**
 * Normalized state vector.  The constructor rejects inputs whose norm
 * deviates from 1 beyond `tol`, then rescales so the stored amplitudes are
 * unit-norm to machine precision.
 */
class PureState {
 public:
  explicit PureState(std::vector<Complex> amplitudes, double tol = 1e-8);

  // Computational basis vector |index> in `dim` dimensions.
  static PureState basis(std::size_t dim, std::size_t index);
  // Rescales an arbitrary nonzero vector to unit norm.
  static PureState normalized(std::vector<Complex> amplitudes);

  std::size_t dim() const { return amps_.size(); }
  const std::vector<Complex>& amplitudes() const { return amps_; }
  Complex amplitude(std::size_t i) const;

  // <this|other>.
  Complex inner(const PureState& other) const;
  // |<this|other>|^2.
  double fidelity(const PureState& other) const;
  // dim x 1 column matrix.
  Matrix to_column() const;

 private:
  std::vector<Complex> amps_;
};

// |ket><bra|.
Matrix outer(const PureState& ket, const PureState& bra);

// Tensor product of two pure states (left factor is the slow index).
PureState tensor(const PureState& a, const PureState& b);

/**
 * Density operator.  Construction validates hermiticity, unit trace, and
 * positivity, each within `tol`; violations raise std::invalid_argument
 * naming the failed check and its deviation.
 */
class DensityMatrix {
 public:
  explicit DensityMatrix(Matrix m, double tol = kDefaultTol);

  std::size_t dim() const { return m_.rows(); }
  const Matrix& matrix() const { return m_; }
  Complex entry(std::size_t i, std::size_t j) const { return m_.at(i, j); }

 private:
  Matrix m_;
};

/**
 * Orthogonal projector.  Construction validates hermiticity and idempotence
 * within `tol`.
 */
class Projector {
 public:
  explicit Projector(Matrix m, double tol = kDefaultTol);

  static Projector onto(const PureState& state);
  static Projector identity(std::size_t dim);

  std::size_t dim() const { return m_.rows(); }
  const Matrix& matrix() const { return m_; }

 private:
  Matrix m_;
};

// |psi><psi| as a density operator.
DensityMatrix pure_to_density(const PureState& psi);

// Convex mixture sum_k p_k rho_k.  Weights must be nonnegative and sum to 1
// within 1e-9; dimensions must agree.
DensityMatrix mix(const std::vector<std::pair<double, DensityMatrix>>& components);

// Tr(P rho), clamped into [0, 1]; clamping beyond 1e-10 is an error.
double born_probability(const DensityMatrix& rho, const Projector& p);

struct ProjectedState {
  DensityMatrix state;
  double probability;
};

// Selective projective update rho -> P rho P / Tr(P rho).  Outcomes with
// probability <= 1e-12 raise std::runtime_error.
ProjectedState project_update(const DensityMatrix& rho, const Projector& p);

// Tr(rho^2).
double purity(const DensityMatrix& rho);

// Bloch components (x, y, z) of a qubit state with basis order (ground,
// excited); the ground state sits at z = -1.
std::array<double, 3> bloch_vector(const DensityMatrix& rho);

}  // namespace qmeas
