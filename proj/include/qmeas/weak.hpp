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

#include <cstddef>
#include <stdexcept>
#include <vector>

#include "qmeas/state.hpp"

namespace qmeas {

// Units: hbar = 1 throughout.

/**
 * Pre- and post-selected pair of normalized states of the same dimension.
 */
struct PrePostSelection {
  PrePostSelection(PureState initial, PureState final_state);

  PureState initial;
  PureState final_state;
};

struct WeakValue {
  Complex value;               // <f|A|i> / <f|i>
  Complex overlap;             // <f|i>
  double postselection_prob;   // |<f|i>|^2
};

// Raised when the selection pair is orthogonal; carries |<f|A|i>| so the
// caller can see whether the undefined ratio had a nonzero numerator.
struct OrthogonalSelectionError : std::runtime_error {
  OrthogonalSelectionError(const std::string& message, double numerator);

  double numerator_magnitude;
};

// Weak value of a Hermitian observable for the given selection.  Overlaps
// with |<f|i>| <= `overlap_threshold` are rejected.
WeakValue weak_value(const Matrix& observable, const PrePostSelection& selection,
                     double overlap_threshold = 1e-10);

// sum_f |<f|i>|^2 Re a_w(f) over a complete orthonormal postselection
// basis; equals <i|A|i>.  Computed through the product form
// Re(<i|f><f|A|i>), which extends continuously to vanishing overlaps.
double weak_value_sum_rule(const Matrix& observable, const PureState& initial,
                           const std::vector<PureState>& final_basis);

/**
 * Pointer wavefunction tabulated on a uniform grid.  The canonical initial
 * shape is proportional to exp(-x^2 / 4 sigma^2), centered at zero, with
 * discrete norm 1 (sum |psi|^2 dx).
 */
struct GaussianPointer {
  double x_min = 0.0;
  double x_max = 0.0;
  std::size_t n_points = 0;
  double sigma = 0.0;
  std::vector<Complex> wavefunction;

  static GaussianPointer centered(double sigma, std::size_t n_points = 2048,
                                  double half_width_sigmas = 12.0);

  double dx() const;
  double x(std::size_t j) const;
  double norm_squared() const;
};

struct CouplingSpec {
  double strength = 0.0;  // G in the interaction G * A * p
};

/**
 * Entangled system x pointer state after the impulsive coupling
 * exp(-i G A p): each eigencomponent of A carries a pointer packet
 * displaced by G times its eigenvalue.  Amplitudes are system-major
 * (index s * n_points + j) in the computational basis of the system.
 */
struct JointPointerState {
  std::size_t system_dim = 0;
  double x_min = 0.0;
  double x_max = 0.0;
  std::size_t n_points = 0;
  double sigma = 0.0;
  std::vector<Complex> amplitudes;

  double dx() const;
  double x(std::size_t j) const;
};

// Applies the coupling exactly via the eigendecomposition of `observable`
// (Hermitian), sampling each displaced packet analytically.  Errors if any
// displaced packet keeps less than 1 - 1e-6 of its norm inside the grid.
JointPointerState pointer_couple_exact(const GaussianPointer& pointer,
                                       const PureState& system,
                                       const Matrix& observable,
                                       const CouplingSpec& coupling);

// Pointer-position mean of the unconditioned joint state; equals G <A>.
double joint_pointer_mean_x(const JointPointerState& joint);

struct PointerPostselection {
  std::vector<Complex> wavefunction;  // normalized conditional pointer state
  double mean_x = 0.0;
  double mean_p = 0.0;  // discrete Fourier transform, periodic convention
  double p_select = 0.0;
};

// Projects the system onto `final_state` and reports the conditional
// pointer statistics.  In the weak regime mean_x -> G Re a_w and
// mean_p -> G Im a_w / (2 sigma^2).
PointerPostselection pointer_postselect(const JointPointerState& joint,
                                        const PureState& final_state);

// Conditional probabilities of the intermediate projective outcomes given
// the pre- and post-selection, computed by simulating the intermediate
// measurement and conditioning on postselection success.  `projectors` must
// form a complete orthogonal set.
std::vector<double> abl_probability(const PrePostSelection& selection,
                                    const std::vector<Projector>& projectors);

/**
 * Weak-coupled occupation numbers of the overlapping-interferometer pair,
 * postselected on the joint dark-port outcome.
 */
struct HardyWeakTable {
  double n_inner_outer = 0.0;  // + particle inner, - particle outer
  double n_outer_inner = 0.0;
  double n_inner_inner = 0.0;
  double n_outer_outer = 0.0;
  double n_inner_plus = 0.0;   // single-particle occupations
  double n_outer_plus = 0.0;
  double n_inner_minus = 0.0;
  double n_outer_minus = 0.0;
};

// Computed by direct projection arithmetic on the post-interaction state.
HardyWeakTable hardy_weak_table();

// Weak value rebuilt from conditional-probability ingredients:
// sum_j a_j <Proj(f) Proj(j)> / <Proj(f)> over the spectral projectors of
// the observable, expectations taken in the initial state.  Agrees with
// weak_value().
Complex bayes_weak_value(const Matrix& observable, const PrePostSelection& selection,
                         double overlap_threshold = 1e-10);

}  // namespace qmeas
