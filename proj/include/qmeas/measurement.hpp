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
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "qmeas/state.hpp"

namespace qmeas {

/**
 * Single Kraus operator.  Any rectangular shape is allowed as long as all
 * operators of one model share it.
 */
struct KrausOperator {
  Matrix matrix;
  std::string label;
};

/**
 * Complete measurement model {M_i}.  The constructor enforces the closure
 * relation sum_i M_i^dag M_i = I within `tol`; an incomplete set is a
 * constructor error, never a silently stored state.
 */
class MeasurementModel {
 public:
  MeasurementModel(std::vector<KrausOperator> operators, double tol = kDefaultTol);

  static MeasurementModel projective(const std::vector<Projector>& projectors,
                                     std::vector<std::string> labels);

  std::size_t size() const { return ops_.size(); }
  std::size_t dim() const { return ops_.front().matrix.cols(); }
  const Matrix& kraus(std::size_t i) const { return ops_.at(i).matrix; }
  const std::string& label(std::size_t i) const { return ops_.at(i).label; }
  const std::vector<KrausOperator>& operators() const { return ops_; }

 private:
  std::vector<KrausOperator> ops_;
};

/**
 * POVM element E = M^dag M.  Construction validates hermiticity and
 * positivity within `tol`.
 */
struct PovmElement {
  explicit PovmElement(Matrix m, double tol = kDefaultTol);

  Matrix matrix;
};

// E_i = M_i^dag M_i for each operator of the model.
std::vector<PovmElement> povm_from_kraus(const MeasurementModel& model);

// Outcome distribution p_i = Tr(M_i rho M_i^dag); sums to 1 within 1e-9.
std::vector<double> outcome_probabilities(const DensityMatrix& rho,
                                          const MeasurementModel& model);

struct MeasurementOutcome {
  DensityMatrix state;
  double probability;
};

// Conditional update rho -> M_i rho M_i^dag / p_i.  Outcomes with
// probability <= 1e-12 raise std::runtime_error.
MeasurementOutcome selective_update(const DensityMatrix& rho,
                                    const MeasurementModel& model,
                                    std::size_t outcome);

// Non-selective channel rho -> sum_i M_i rho M_i^dag.
DensityMatrix evolve_nonselective(const DensityMatrix& rho,
                                  const MeasurementModel& model);

/**
 * Spontaneous-emission step for a two-level system with basis order
 * (ground, excited): a click operator sqrt(eta)|g><e| and a no-click
 * operator |g><g| + sqrt(1-eta)|e><e|.  Outcome 0 is "no click".
 */
MeasurementModel decay_kraus(double eta);

// Number of equal steps that discretize one half-life, i.e. the per-step
// emission probability with n steps is 1 - 2^(-1/n).
double eta_for_half_life_steps(std::size_t n);

struct DecayModel {
  double eta = 0.0;       // per-step emission probability in [0, 1]
  std::size_t steps = 0;  // number of non-selective steps to apply
};

// States after 0..steps applications of the non-selective decay channel.
std::vector<DensityMatrix> decay_trajectory(const DensityMatrix& rho0,
                                            const DecayModel& model);

// Uniform double in [0, 1) built from the raw 64-bit stream, so sampling is
// reproducible across standard library implementations.
double uniform01(std::mt19937_64& rng);

struct SampledOutcome {
  std::size_t index;
  std::string label;
  DensityMatrix state;
  double probability;
};

// Draws one outcome by inverse transform over the ordered outcome list and
// returns the conditioned state.
SampledOutcome sample_outcome(const DensityMatrix& rho, const MeasurementModel& model,
                              std::mt19937_64& rng);

/**
 * Naimark dilation of a POVM with k elements on a d-dimensional system: an
 * isometry V (dk x d) into system x ancilla, with projective outcomes
 * I_d x |i><i|.  Measuring the projectors on V rho V^dag reproduces
 * Tr(E_i rho).
 */
struct NaimarkDilation {
  Matrix isometry;
  std::size_t ancilla_dim = 0;
  std::vector<Projector> projectors;
};

// Builds the dilation from the principal square roots of the elements.
// Rejects non-PSD elements (naming the offending index and eigenvalue) and
// incomplete POVMs (reporting the closure deviation).
NaimarkDilation naimark_dilation(const std::vector<PovmElement>& povm,
                                 double tol = kDefaultTol);

// Outcome distribution obtained on the dilated space: Tr(V rho V^dag P_i).
std::vector<double> dilated_probabilities(const NaimarkDilation& dilation,
                                          const DensityMatrix& rho);

}  // namespace qmeas
