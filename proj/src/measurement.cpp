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

#include "qmeas/measurement.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>
#include <utility>

namespace qmeas {

MeasurementModel::MeasurementModel(std::vector<KrausOperator> operators, double tol)
    : ops_(std::move(operators)) {
  if (ops_.empty()) {
    throw std::invalid_argument("MeasurementModel: empty operator list");
  }
  const std::size_t rows = ops_.front().matrix.rows();
  const std::size_t cols = ops_.front().matrix.cols();
  for (std::size_t i = 0; i < ops_.size(); ++i) {
    const Matrix& m = ops_[i].matrix;
    if (m.rows() != rows || m.cols() != cols) {
      throw std::invalid_argument("MeasurementModel: operator " + std::to_string(i) +
                                  " has mismatched shape");
    }
    if (ops_[i].label.empty()) ops_[i].label = std::to_string(i);
  }
  Matrix closure(cols, cols);
  for (const KrausOperator& op : ops_) {
    closure = closure + matmul(dagger(op.matrix), op.matrix);
  }
  const double gap = max_abs_diff(closure, Matrix::identity(cols));
  if (gap > tol) {
    std::ostringstream msg;
    msg << "MeasurementModel: completeness deviation " << gap << " beyond " << tol;
    throw std::invalid_argument(msg.str());
  }
}

MeasurementModel MeasurementModel::projective(const std::vector<Projector>& projectors,
                                              std::vector<std::string> labels) {
  if (labels.size() != projectors.size()) {
    throw std::invalid_argument("MeasurementModel::projective: label count mismatch");
  }
  std::vector<KrausOperator> ops;
  ops.reserve(projectors.size());
  for (std::size_t i = 0; i < projectors.size(); ++i) {
    ops.push_back(KrausOperator{projectors[i].matrix(), std::move(labels[i])});
  }
  return MeasurementModel(std::move(ops));
}

PovmElement::PovmElement(Matrix m, double tol) : matrix(std::move(m)) {
  if (!matrix.is_square()) {
    throw std::invalid_argument("PovmElement: matrix must be square");
  }
  const double herm = hermiticity_gap(matrix);
  if (herm > tol) {
    std::ostringstream msg;
    msg << "PovmElement: hermiticity deviation " << herm << " beyond " << tol;
    throw std::invalid_argument(msg.str());
  }
  const double min_eig = min_eigenvalue(matrix, tol);
  if (min_eig < -tol) {
    std::ostringstream msg;
    msg << "PovmElement: negative eigenvalue " << min_eig << " beyond -" << tol;
    throw std::invalid_argument(msg.str());
  }
}

std::vector<PovmElement> povm_from_kraus(const MeasurementModel& model) {
  std::vector<PovmElement> povm;
  povm.reserve(model.size());
  for (std::size_t i = 0; i < model.size(); ++i) {
    povm.emplace_back(matmul(dagger(model.kraus(i)), model.kraus(i)));
  }
  return povm;
}

std::vector<double> outcome_probabilities(const DensityMatrix& rho,
                                          const MeasurementModel& model) {
  if (rho.dim() != model.dim()) {
    throw std::invalid_argument("outcome_probabilities: state dimension " +
                                std::to_string(rho.dim()) + " vs model dimension " +
                                std::to_string(model.dim()));
  }
  std::vector<double> probs(model.size());
  double total = 0.0;
  for (std::size_t i = 0; i < model.size(); ++i) {
    const Matrix& m = model.kraus(i);
    double p = trace(matmul(matmul(m, rho.matrix()), dagger(m))).real();
    p = std::min(1.0, std::max(0.0, p));
    probs[i] = p;
    total += p;
  }
  if (std::abs(total - 1.0) > 1e-9) {
    std::ostringstream msg;
    msg << "outcome_probabilities: distribution sums to " << total;
    throw std::runtime_error(msg.str());
  }
  return probs;
}

MeasurementOutcome selective_update(const DensityMatrix& rho,
                                    const MeasurementModel& model,
                                    std::size_t outcome) {
  if (outcome >= model.size()) {
    throw std::invalid_argument("selective_update: outcome " + std::to_string(outcome) +
                                " outside " + std::to_string(model.size()) +
                                " outcomes");
  }
  const Matrix& m = model.kraus(outcome);
  Matrix numerator = matmul(matmul(m, rho.matrix()), dagger(m));
  const double prob = trace(numerator).real();
  if (prob <= 1e-12) {
    throw std::runtime_error("selective_update: outcome '" + model.label(outcome) +
                             "' has probability " + std::to_string(prob));
  }
  return MeasurementOutcome{DensityMatrix(numerator * (1.0 / prob)), prob};
}

DensityMatrix evolve_nonselective(const DensityMatrix& rho,
                                  const MeasurementModel& model) {
  if (rho.dim() != model.dim()) {
    throw std::invalid_argument("evolve_nonselective: dimension mismatch");
  }
  Matrix sum(rho.dim(), rho.dim());
  for (std::size_t i = 0; i < model.size(); ++i) {
    const Matrix& m = model.kraus(i);
    sum = sum + matmul(matmul(m, rho.matrix()), dagger(m));
  }
  return DensityMatrix(std::move(sum));
}

MeasurementModel decay_kraus(double eta) {
  if (!(eta >= 0.0 && eta <= 1.0)) {
    throw std::invalid_argument("decay_kraus: eta " + std::to_string(eta) +
                                " outside [0, 1]");
  }
  const double keep = std::sqrt(1.0 - eta);
  Matrix no_click = Matrix::from_rows({{1.0, 0.0}, {0.0, keep}});
  Matrix click = Matrix::from_rows({{0.0, std::sqrt(eta)}, {0.0, 0.0}});
  return MeasurementModel({KrausOperator{std::move(no_click), "no-click"},
                           KrausOperator{std::move(click), "click"}});
}

double eta_for_half_life_steps(std::size_t n) {
  if (n == 0) throw std::invalid_argument("eta_for_half_life_steps: n must be positive");
  return 1.0 - std::pow(2.0, -1.0 / static_cast<double>(n));
}

std::vector<DensityMatrix> decay_trajectory(const DensityMatrix& rho0,
                                            const DecayModel& model) {
  if (model.steps == 0) {
    throw std::invalid_argument("decay_trajectory: steps must be positive");
  }
  const MeasurementModel channel = decay_kraus(model.eta);
  std::vector<DensityMatrix> out;
  out.reserve(model.steps + 1);
  out.push_back(rho0);
  for (std::size_t k = 0; k < model.steps; ++k) {
    out.push_back(evolve_nonselective(out.back(), channel));
  }
  return out;
}

double uniform01(std::mt19937_64& rng) {
  // 53 uniform mantissa bits; avoids unspecified distribution behavior.
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

SampledOutcome sample_outcome(const DensityMatrix& rho, const MeasurementModel& model,
                              std::mt19937_64& rng) {
  const std::vector<double> probs = outcome_probabilities(rho, model);
  const double u = uniform01(rng);
  double cumulative = 0.0;
  std::size_t pick = probs.size() - 1;
  for (std::size_t i = 0; i < probs.size(); ++i) {
    cumulative += probs[i];
    if (u < cumulative) {
      pick = i;
      break;
    }
  }
  // Roundoff can land u past the final cumulative sum; fall back to the last
  // outcome with nonzero probability.
  while (pick > 0 && probs[pick] <= 1e-12) --pick;
  MeasurementOutcome updated = selective_update(rho, model, pick);
  return SampledOutcome{pick, model.label(pick), std::move(updated.state),
                        probs[pick]};
}

NaimarkDilation naimark_dilation(const std::vector<PovmElement>& povm, double tol) {
  if (povm.empty()) throw std::invalid_argument("naimark_dilation: empty POVM");
  const std::size_t d = povm.front().matrix.rows();
  const std::size_t k = povm.size();

  Matrix closure(d, d);
  for (std::size_t i = 0; i < k; ++i) {
    const Matrix& e = povm[i].matrix;
    if (e.rows() != d) {
      throw std::invalid_argument("naimark_dilation: element " + std::to_string(i) +
                                  " has mismatched dimension");
    }
    const double min_eig = min_eigenvalue(e, tol);
    if (min_eig < -tol) {
      std::ostringstream msg;
      msg << "naimark_dilation: element " << i << " has eigenvalue " << min_eig
          << " below -" << tol;
      throw std::invalid_argument(msg.str());
    }
    closure = closure + e;
  }
  const double gap = max_abs_diff(closure, Matrix::identity(d));
  if (gap > tol) {
    std::ostringstream msg;
    msg << "naimark_dilation: POVM completeness deviation " << gap << " beyond "
        << tol;
    throw std::invalid_argument(msg.str());
  }

  // Stack M_i = sqrt(E_i) into V so that <psi|V^dag (I x |i><i|) V|psi>
  // recovers <psi|E_i|psi>.  Row layout is system-major: row s*k + i.
  Matrix isometry(d * k, d);
  for (std::size_t i = 0; i < k; ++i) {
    const Matrix root = sqrt_psd(povm[i].matrix, tol);
    for (std::size_t s = 0; s < d; ++s)
      for (std::size_t t = 0; t < d; ++t) isometry(s * k + i, t) = root(s, t);
  }

  std::vector<Projector> projectors;
  projectors.reserve(k);
  for (std::size_t i = 0; i < k; ++i) {
    Matrix p(d * k, d * k);
    for (std::size_t s = 0; s < d; ++s) p(s * k + i, s * k + i) = Complex(1.0, 0.0);
    projectors.emplace_back(std::move(p));
  }

  return NaimarkDilation{std::move(isometry), k, std::move(projectors)};
}

std::vector<double> dilated_probabilities(const NaimarkDilation& dilation,
                                          const DensityMatrix& rho) {
  if (dilation.isometry.cols() != rho.dim()) {
    throw std::invalid_argument("dilated_probabilities: state dimension " +
                                std::to_string(rho.dim()) + " vs system dimension " +
                                std::to_string(dilation.isometry.cols()));
  }
  const Matrix lifted =
      matmul(matmul(dilation.isometry, rho.matrix()), dagger(dilation.isometry));
  std::vector<double> probs;
  probs.reserve(dilation.projectors.size());
  for (const Projector& p : dilation.projectors) {
    probs.push_back(trace(matmul(p.matrix(), lifted)).real());
  }
  return probs;
}

}  // namespace qmeas
