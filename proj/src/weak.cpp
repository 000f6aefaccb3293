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

#include "qmeas/weak.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "qmeas/interferometry.hpp"

namespace qmeas {

namespace {

void require_observable(const Matrix& observable, std::size_t dim) {
  if (!observable.is_square() || observable.rows() != dim) {
    throw std::invalid_argument("observable must be square and match the state dimension");
  }
  const double gap = hermiticity_gap(observable);
  if (gap > kDefaultTol) {
    std::ostringstream msg;
    msg << "observable is not Hermitian (deviation " << gap << ")";
    throw std::invalid_argument(msg.str());
  }
}

// <bra|M|ket>.
Complex sandwich(const PureState& bra, const Matrix& m, const PureState& ket) {
  const Matrix result = matmul(dagger(bra.to_column()), matmul(m, ket.to_column()));
  return result(0, 0);
}

}  // namespace

PrePostSelection::PrePostSelection(PureState initial_in, PureState final_in)
    : initial(std::move(initial_in)), final_state(std::move(final_in)) {
  if (initial.dim() != final_state.dim()) {
    throw std::invalid_argument("pre- and post-selected states must share a dimension");
  }
}

OrthogonalSelectionError::OrthogonalSelectionError(const std::string& message,
                                                   double numerator)
    : std::runtime_error(message), numerator_magnitude(numerator) {}

WeakValue weak_value(const Matrix& observable, const PrePostSelection& selection,
                     double overlap_threshold) {
  require_observable(observable, selection.initial.dim());
  const Complex overlap = selection.final_state.inner(selection.initial);
  const Complex numerator = sandwich(selection.final_state, observable, selection.initial);
  if (std::abs(overlap) <= overlap_threshold) {
    std::ostringstream msg;
    msg << "post-selection is orthogonal to the pre-selection (|overlap| = "
        << std::abs(overlap) << "); the conditioned mean is undefined";
    throw OrthogonalSelectionError(msg.str(), std::abs(numerator));
  }
  WeakValue result;
  result.value = numerator / overlap;
  result.overlap = overlap;
  result.postselection_prob = std::norm(overlap);
  return result;
}

double weak_value_sum_rule(const Matrix& observable, const PureState& initial,
                           const std::vector<PureState>& final_basis) {
  const std::size_t dim = initial.dim();
  require_observable(observable, dim);
  if (final_basis.size() != dim) {
    throw std::invalid_argument("post-selection basis must contain dim states");
  }
  Matrix completeness = Matrix::zero(dim, dim);
  for (const PureState& f : final_basis) {
    if (f.dim() != dim) {
      throw std::invalid_argument("post-selection basis dimension mismatch");
    }
    completeness = completeness + outer(f, f);
  }
  const double gap = max_abs_diff(completeness, Matrix::identity(dim));
  if (gap > kDefaultTol) {
    std::ostringstream msg;
    msg << "post-selection basis is not complete/orthonormal (deviation " << gap << ")";
    throw std::invalid_argument(msg.str());
  }
  // |<f|i>|^2 * Re(<f|A|i> / <f|i>) = Re(<i|f> <f|A|i>), which stays finite
  // for vanishing overlaps.
  double total = 0.0;
  for (const PureState& f : final_basis) {
    const Complex overlap = f.inner(initial);
    const Complex numerator = sandwich(f, observable, initial);
    total += std::real(std::conj(overlap) * numerator);
  }
  return total;
}

GaussianPointer GaussianPointer::centered(double sigma, std::size_t n_points,
                                          double half_width_sigmas) {
  if (!(sigma > 0.0)) {
    throw std::invalid_argument("pointer width must be positive");
  }
  if (n_points < 16) {
    throw std::invalid_argument("pointer grid needs at least 16 points");
  }
  if (!(half_width_sigmas > 0.0)) {
    throw std::invalid_argument("pointer window must be positive");
  }
  GaussianPointer pointer;
  pointer.sigma = sigma;
  pointer.n_points = n_points;
  pointer.x_min = -half_width_sigmas * sigma;
  pointer.x_max = half_width_sigmas * sigma;
  pointer.wavefunction.resize(n_points);
  const double step = pointer.dx();
  double norm_sq = 0.0;
  for (std::size_t j = 0; j < n_points; ++j) {
    const double x = pointer.x(j);
    const double value = std::exp(-x * x / (4.0 * sigma * sigma));
    pointer.wavefunction[j] = value;
    norm_sq += value * value * step;
  }
  const double scale = 1.0 / std::sqrt(norm_sq);
  for (Complex& amp : pointer.wavefunction) {
    amp *= scale;
  }
  return pointer;
}

double GaussianPointer::dx() const {
  return (x_max - x_min) / static_cast<double>(n_points);
}

double GaussianPointer::x(std::size_t j) const {
  return x_min + static_cast<double>(j) * dx();
}

double GaussianPointer::norm_squared() const {
  double total = 0.0;
  for (const Complex& amp : wavefunction) {
    total += std::norm(amp);
  }
  return total * dx();
}

double JointPointerState::dx() const {
  return (x_max - x_min) / static_cast<double>(n_points);
}

double JointPointerState::x(std::size_t j) const {
  return x_min + static_cast<double>(j) * dx();
}

JointPointerState pointer_couple_exact(const GaussianPointer& pointer,
                                       const PureState& system,
                                       const Matrix& observable,
                                       const CouplingSpec& coupling) {
  const std::size_t dim = system.dim();
  require_observable(observable, dim);
  if (pointer.n_points == 0 || pointer.wavefunction.size() != pointer.n_points) {
    throw std::invalid_argument("pointer grid is empty or inconsistent");
  }
  const std::size_t n = pointer.n_points;
  const double step = pointer.dx();
  const double sigma = pointer.sigma;
  if (!(sigma > 0.0)) {
    throw std::invalid_argument("pointer width must be positive");
  }

  // The exact displaced packets are resampled analytically, so the tabulated
  // input must be the canonical centered packet for its own grid.
  double base_norm_sq = 0.0;
  std::vector<double> base(n);
  for (std::size_t j = 0; j < n; ++j) {
    const double x = pointer.x(j);
    base[j] = std::exp(-x * x / (4.0 * sigma * sigma));
    base_norm_sq += base[j] * base[j] * step;
  }
  const double amplitude_scale = 1.0 / std::sqrt(base_norm_sq);
  for (std::size_t j = 0; j < n; ++j) {
    if (std::abs(pointer.wavefunction[j] - Complex(amplitude_scale * base[j])) > 1e-9) {
      throw std::invalid_argument(
          "pointer wavefunction does not match the canonical centered packet for its grid");
    }
  }

  const EigenSystem eig = eig_hermitian(observable);
  JointPointerState joint;
  joint.system_dim = dim;
  joint.x_min = pointer.x_min;
  joint.x_max = pointer.x_max;
  joint.n_points = n;
  joint.sigma = sigma;
  joint.amplitudes.assign(dim * n, Complex(0.0, 0.0));

  for (std::size_t s = 0; s < dim; ++s) {
    // Component of the system state along eigenvector s.
    Complex coeff(0.0, 0.0);
    for (std::size_t d = 0; d < dim; ++d) {
      coeff += std::conj(eig.eigenvectors(d, s)) * system.amplitude(d);
    }
    const double shift = coupling.strength * eig.eigenvalues[s];
    std::vector<double> packet(n);
    double packet_norm_sq = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      const double x = pointer.x(j) - shift;
      packet[j] = amplitude_scale * std::exp(-x * x / (4.0 * sigma * sigma));
      packet_norm_sq += packet[j] * packet[j] * step;
    }
    if (packet_norm_sq < 1.0 - 1e-6) {
      std::ostringstream msg;
      msg << "displaced packet for eigenvalue " << eig.eigenvalues[s]
          << " leaves the grid (kept norm " << packet_norm_sq
          << "); enlarge the pointer window";
      throw std::runtime_error(msg.str());
    }
    for (std::size_t d = 0; d < dim; ++d) {
      const Complex weight = eig.eigenvectors(d, s) * coeff;
      if (weight == Complex(0.0, 0.0)) {
        continue;
      }
      for (std::size_t j = 0; j < n; ++j) {
        joint.amplitudes[d * n + j] += weight * packet[j];
      }
    }
  }
  return joint;
}

double joint_pointer_mean_x(const JointPointerState& joint) {
  const std::size_t n = joint.n_points;
  const double step = joint.dx();
  double norm = 0.0;
  double weighted = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    double density = 0.0;
    for (std::size_t d = 0; d < joint.system_dim; ++d) {
      density += std::norm(joint.amplitudes[d * n + j]);
    }
    norm += density * step;
    weighted += density * joint.x(j) * step;
  }
  if (norm <= 0.0) {
    throw std::runtime_error("joint pointer state has zero norm");
  }
  return weighted / norm;
}

PointerPostselection pointer_postselect(const JointPointerState& joint,
                                        const PureState& final_state) {
  if (final_state.dim() != joint.system_dim) {
    throw std::invalid_argument("post-selection dimension does not match the joint state");
  }
  const std::size_t n = joint.n_points;
  const double step = joint.dx();

  PointerPostselection result;
  result.wavefunction.assign(n, Complex(0.0, 0.0));
  double weight = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    Complex amp(0.0, 0.0);
    for (std::size_t d = 0; d < joint.system_dim; ++d) {
      amp += std::conj(final_state.amplitude(d)) * joint.amplitudes[d * n + j];
    }
    result.wavefunction[j] = amp;
    weight += std::norm(amp) * step;
  }
  if (weight <= 1e-14) {
    throw std::runtime_error(
        "post-selection probability vanishes; no conditional pointer state");
  }
  result.p_select = weight;
  const double scale = 1.0 / std::sqrt(weight);
  for (Complex& amp : result.wavefunction) {
    amp *= scale;
  }

  double mean_x = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    mean_x += std::norm(result.wavefunction[j]) * joint.x(j) * step;
  }
  result.mean_x = mean_x;

  // Momentum mean through the discrete Fourier transform with the periodic
  // convention p_l = 2*pi*l / (n*dx), l in [-n/2, n/2).
  const double dp = 2.0 * std::numbers::pi / (static_cast<double>(n) * step);
  double norm_p = 0.0;
  double weighted_p = 0.0;
  const std::ptrdiff_t half = static_cast<std::ptrdiff_t>(n) / 2;
  for (std::ptrdiff_t l = -half; l < static_cast<std::ptrdiff_t>(n) - half; ++l) {
    const double p = static_cast<double>(l) * dp;
    Complex transform(0.0, 0.0);
    for (std::size_t j = 0; j < n; ++j) {
      const double phase = -p * joint.x(j);
      transform += result.wavefunction[j] * Complex(std::cos(phase), std::sin(phase));
    }
    const double density = std::norm(transform) * step * step;
    norm_p += density * dp;
    weighted_p += density * p * dp;
  }
  if (norm_p <= 0.0) {
    throw std::runtime_error("conditional pointer state has zero momentum-space norm");
  }
  result.mean_p = weighted_p / norm_p;
  return result;
}

std::vector<double> abl_probability(const PrePostSelection& selection,
                                    const std::vector<Projector>& projectors) {
  const std::size_t dim = selection.initial.dim();
  if (projectors.empty()) {
    throw std::invalid_argument("need at least one intermediate projector");
  }
  Matrix completeness = Matrix::zero(dim, dim);
  for (const Projector& p : projectors) {
    if (p.dim() != dim) {
      throw std::invalid_argument("projector dimension mismatch");
    }
    completeness = completeness + p.matrix();
  }
  const double gap = max_abs_diff(completeness, Matrix::identity(dim));
  if (gap > kDefaultTol) {
    std::ostringstream msg;
    msg << "intermediate projectors do not resolve the identity (deviation " << gap
        << ")";
    throw std::invalid_argument(msg.str());
  }
  // Projectors that sum to the identity are automatically mutually
  // orthogonal, so no separate pairwise check is needed.

  const DensityMatrix rho = pure_to_density(selection.initial);
  const Projector post = Projector::onto(selection.final_state);
  std::vector<double> numerators(projectors.size(), 0.0);
  double denominator = 0.0;
  for (std::size_t k = 0; k < projectors.size(); ++k) {
    const double p_outcome = born_probability(rho, projectors[k]);
    if (p_outcome <= 1e-12) {
      continue;  // branch never occurs; contributes nothing
    }
    const ProjectedState updated = project_update(rho, projectors[k]);
    const double p_post = born_probability(updated.state, post);
    numerators[k] = p_outcome * p_post;
    denominator += numerators[k];
  }
  if (denominator <= 1e-14) {
    throw std::runtime_error(
        "post-selection never succeeds after the intermediate measurement");
  }
  for (double& value : numerators) {
    value /= denominator;
  }
  return numerators;
}

HardyWeakTable hardy_weak_table() {
  const HardyState state = hardy_evolution();
  // Dark-port covector per particle: <D| = (<O| - <I|)/sqrt(2).  Over the
  // four surviving two-particle components the joint covector coefficients
  // are products of +-1/sqrt(2) signs, inner arms carrying the minus.
  const double half = 0.5;
  const std::array<double, 4> dark_coeff = {
      +half,  // O+ O-
      -half,  // I+ O-
      -half,  // O+ I-
      +half,  // I+ I-
  };
  Complex overlap(0.0, 0.0);
  std::array<Complex, 4> projected{};
  for (std::size_t k = 0; k < 4; ++k) {
    projected[k] = dark_coeff[k] * state.amplitudes[k];
    overlap += projected[k];
  }
  if (std::abs(overlap) <= 1e-12) {
    throw std::runtime_error("joint dark-port overlap vanishes");
  }

  const auto ratio = [&](std::initializer_list<std::size_t> keep) {
    Complex numerator(0.0, 0.0);
    for (std::size_t k : keep) {
      numerator += projected[k];
    }
    return std::real(numerator / overlap);
  };

  HardyWeakTable table;
  table.n_outer_outer = ratio({kHardyOuterOuter});
  table.n_inner_outer = ratio({kHardyInnerOuter});
  table.n_outer_inner = ratio({kHardyOuterInner});
  table.n_inner_inner = ratio({kHardyInnerInner});
  table.n_inner_plus = ratio({kHardyInnerOuter, kHardyInnerInner});
  table.n_outer_plus = ratio({kHardyOuterOuter, kHardyOuterInner});
  table.n_inner_minus = ratio({kHardyOuterInner, kHardyInnerInner});
  table.n_outer_minus = ratio({kHardyOuterOuter, kHardyInnerOuter});
  return table;
}

Complex bayes_weak_value(const Matrix& observable, const PrePostSelection& selection,
                         double overlap_threshold) {
  const std::size_t dim = selection.initial.dim();
  require_observable(observable, dim);
  const Complex overlap = selection.final_state.inner(selection.initial);
  if (std::abs(overlap) <= overlap_threshold) {
    const Complex numerator =
        sandwich(selection.final_state, observable, selection.initial);
    std::ostringstream msg;
    msg << "post-selection is orthogonal to the pre-selection (|overlap| = "
        << std::abs(overlap) << "); the conditioned mean is undefined";
    throw OrthogonalSelectionError(msg.str(), std::abs(numerator));
  }

  const EigenSystem eig = eig_hermitian(observable);
  double scale = 1.0;
  for (double value : eig.eigenvalues) {
    scale = std::max(scale, std::abs(value));
  }
  const double cluster_gap = 1e-8 * scale;

  // sum_j a_j <i| P_f P_j |i> / <i| P_f |i>, grouping degenerate eigenvalues
  // into spectral projectors.
  Complex total(0.0, 0.0);
  std::size_t s = 0;
  while (s < dim) {
    std::size_t end = s + 1;
    while (end < dim && eig.eigenvalues[end] - eig.eigenvalues[end - 1] <= cluster_gap) {
      ++end;
    }
    double eigenvalue = 0.0;
    Complex branch(0.0, 0.0);  // <f| P_j |i>
    for (std::size_t k = s; k < end; ++k) {
      eigenvalue += eig.eigenvalues[k];
      Complex f_component(0.0, 0.0);
      Complex i_component(0.0, 0.0);
      for (std::size_t d = 0; d < dim; ++d) {
        f_component += std::conj(selection.final_state.amplitude(d)) *
                       eig.eigenvectors(d, k);
        i_component += std::conj(eig.eigenvectors(d, k)) * selection.initial.amplitude(d);
      }
      branch += f_component * i_component;
    }
    eigenvalue /= static_cast<double>(end - s);
    // <i|P_f P_j|i> = <i|f> <f|P_j|i>; the common <i|f> cancels against the
    // denominator |<f|i>|^2 leaving <f|P_j|i> / <f|i>.
    total += eigenvalue * branch / overlap;
    s = end;
  }
  return total;
}

}  // namespace qmeas
