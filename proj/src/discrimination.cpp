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

#include "qmeas/discrimination.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>
#include <utility>

namespace qmeas {

namespace {

// <psi|E|psi> for a Hermitian E, clamped at 0.
double element_probability(const PureState& psi, const Matrix& e) {
  Complex sum(0.0, 0.0);
  for (std::size_t i = 0; i < psi.dim(); ++i) {
    for (std::size_t j = 0; j < psi.dim(); ++j) {
      sum += std::conj(psi.amplitude(i)) * e(i, j) * psi.amplitude(j);
    }
  }
  return std::max(0.0, sum.real());
}

// probs[t][k] = probability of outcome k when state t was prepared.
std::vector<std::vector<double>> outcome_table(const StateEnsemble& ensemble,
                                               const std::vector<PovmElement>& povm) {
  std::vector<std::vector<double>> probs(ensemble.states.size());
  for (std::size_t t = 0; t < ensemble.states.size(); ++t) {
    probs[t].resize(povm.size());
    for (std::size_t k = 0; k < povm.size(); ++k) {
      probs[t][k] = element_probability(ensemble.states[t], povm[k].matrix);
    }
  }
  return probs;
}

void fill_statistics(DiscriminationReport& report, const StateEnsemble& ensemble) {
  const auto probs = outcome_table(ensemble, report.povm);
  report.p_success = report.p_error = report.p_inconclusive = 0.0;
  for (std::size_t t = 0; t < ensemble.states.size(); ++t) {
    for (std::size_t k = 0; k < report.povm.size(); ++k) {
      const double joint = ensemble.priors[t] * probs[t][k];
      if (report.identifies[k] < 0) {
        report.p_inconclusive += joint;
      } else if (static_cast<std::size_t>(report.identifies[k]) == t) {
        report.p_success += joint;
      } else {
        report.p_error += joint;
      }
    }
  }
}

void require_two_equal_prior_states(const StateEnsemble& ensemble, const char* op) {
  if (ensemble.states.size() != 2) {
    throw std::invalid_argument(std::string(op) + ": expected 2 states, got " +
                                std::to_string(ensemble.states.size()));
  }
  if (!ensemble.priors_equal()) {
    throw std::invalid_argument(std::string(op) + ": equal priors required");
  }
}

// Component of `v` orthogonal to the unit vector `against`, normalized.
PureState orthonormal_against(const PureState& v, const PureState& against) {
  const Complex overlap = against.inner(v);
  std::vector<Complex> amps(v.dim());
  for (std::size_t i = 0; i < v.dim(); ++i) {
    amps[i] = v.amplitude(i) - overlap * against.amplitude(i);
  }
  return PureState::normalized(std::move(amps));
}

// ---------------------------------------------------------------------------
// Numeric unambiguous discrimination
//
// Conclusive elements are fixed to E_k = alpha_k |u_k><u_k| with u_k the
// normalized reciprocal-basis vectors, which makes wrong announcements
// impossible by construction.  Writing alpha = t * w with w on the
// probability simplex, feasibility pins t = 1 / lambda_max(sum_k w_k Q_k),
// so the search space collapses to the simplex.  The objective is maximized
// by repeated pairwise golden-section transfers between simplex weights.
// ---------------------------------------------------------------------------

struct UsdGeometry {
  std::vector<Matrix> q;      // rank-1 projectors onto the dual directions
  std::vector<double> gain;   // |<u_k|s_k>|^2
};

double usd_objective(const UsdGeometry& geom, const std::vector<double>& weights,
                     const std::vector<double>& priors, double* scale_out) {
  const std::size_t d = geom.q.front().rows();
  Matrix b(d, d);
  for (std::size_t k = 0; k < geom.q.size(); ++k) {
    if (weights[k] > 0.0) b = b + geom.q[k] * weights[k];
  }
  const double lam_max = eig_hermitian(b, 1e-8).eigenvalues.back();
  const double t = 1.0 / lam_max;
  if (scale_out != nullptr) *scale_out = t;
  double value = 0.0;
  for (std::size_t k = 0; k < geom.q.size(); ++k) {
    value += priors[k] * t * weights[k] * geom.gain[k];
  }
  return value;
}

double golden_section_pair(const UsdGeometry& geom, std::vector<double>& weights,
                           const std::vector<double>& priors, std::size_t i,
                           std::size_t j) {
  const double mass = weights[i] + weights[j];
  if (mass < 1e-15) return usd_objective(geom, weights, priors, nullptr);
  const double phi = (std::sqrt(5.0) - 1.0) / 2.0;
  auto eval = [&](double x) {
    weights[i] = x;
    weights[j] = mass - x;
    return usd_objective(geom, weights, priors, nullptr);
  };
  double lo = 0.0, hi = mass;
  double x1 = hi - phi * (hi - lo);
  double x2 = lo + phi * (hi - lo);
  double f1 = eval(x1);
  double f2 = eval(x2);
  while (hi - lo > 1e-12 * std::max(1.0, mass)) {
    if (f1 < f2) {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + phi * (hi - lo);
      f2 = eval(x2);
    } else {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - phi * (hi - lo);
      f1 = eval(x1);
    }
  }
  const double best = 0.5 * (lo + hi);
  return eval(best);
}

}  // namespace

StateEnsemble::StateEnsemble(std::vector<PureState> states_in,
                             std::vector<double> priors_in)
    : states(std::move(states_in)), priors(std::move(priors_in)) {
  if (states.empty() || states.size() != priors.size()) {
    throw std::invalid_argument(
        "StateEnsemble: states and priors must be nonempty and aligned");
  }
  const std::size_t d = states.front().dim();
  double total = 0.0;
  for (std::size_t i = 0; i < states.size(); ++i) {
    if (states[i].dim() != d) {
      throw std::invalid_argument("StateEnsemble: state " + std::to_string(i) +
                                  " has dimension " + std::to_string(states[i].dim()) +
                                  ", expected " + std::to_string(d));
    }
    if (!(priors[i] >= 0.0)) {
      throw std::invalid_argument("StateEnsemble: negative prior " +
                                  std::to_string(priors[i]));
    }
    total += priors[i];
  }
  if (std::abs(total - 1.0) > 1e-9) {
    std::ostringstream msg;
    msg << "StateEnsemble: priors sum to " << total;
    throw std::invalid_argument(msg.str());
  }
}

StateEnsemble StateEnsemble::equal_priors(std::vector<PureState> states) {
  const std::size_t n = states.size();
  std::vector<double> priors(n, n == 0 ? 0.0 : 1.0 / static_cast<double>(n));
  return StateEnsemble(std::move(states), std::move(priors));
}

bool StateEnsemble::priors_equal(double tol) const {
  const double p = 1.0 / static_cast<double>(priors.size());
  for (double prior : priors) {
    if (std::abs(prior - p) > tol) return false;
  }
  return true;
}

DiscriminationReport helstrom(const StateEnsemble& ensemble) {
  if (ensemble.states.size() != 2) {
    throw std::invalid_argument("helstrom: expected 2 states, got " +
                                std::to_string(ensemble.states.size()));
  }
  const std::size_t d = ensemble.dim();
  const Matrix gamma = outer(ensemble.states[0], ensemble.states[0]) * ensemble.priors[0] -
                       outer(ensemble.states[1], ensemble.states[1]) * ensemble.priors[1];
  const EigenSystem eig = eig_hermitian(gamma);

  // Outcome 0 collects the strictly positive eigenspace of
  // p_a rho_a - p_b rho_b; zero modes go to outcome 1.
  Matrix e0(d, d);
  for (std::size_t k = 0; k < d; ++k) {
    if (eig.eigenvalues[k] <= 1e-12) continue;
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j)
        e0(i, j) += eig.eigenvectors(i, k) * std::conj(eig.eigenvectors(j, k));
  }
  Matrix e1 = Matrix::identity(d) - e0;

  DiscriminationReport report;
  report.strategy = DiscriminationStrategy::kHelstrom;
  report.povm.emplace_back(std::move(e0));
  report.povm.emplace_back(std::move(e1));
  report.identifies = {0, 1};
  report.labels = {"state-0", "state-1"};
  report.notes = "minimum-error measurement from the sign-split eigenbasis";
  fill_statistics(report, ensemble);
  return report;
}

DiscriminationReport projective_usd(const StateEnsemble& ensemble) {
  require_two_equal_prior_states(ensemble, "projective_usd");
  const std::size_t d = ensemble.dim();
  const Matrix p_second = outer(ensemble.states[1], ensemble.states[1]);

  DiscriminationReport report;
  report.strategy = DiscriminationStrategy::kProjectiveUsd;
  report.povm.emplace_back(Matrix::identity(d) - p_second);
  report.povm.emplace_back(p_second);
  report.identifies = {0, -1};
  report.labels = {"state-0", "inconclusive"};
  report.notes =
      "projects onto the orthocomplement of state 1, certifying only state 0; "
      "the mirrored strategy certifies state 1 with the same success rate";
  fill_statistics(report, ensemble);
  return report;
}

DiscriminationReport optimal_usd(const StateEnsemble& ensemble) {
  require_two_equal_prior_states(ensemble, "optimal_usd");
  const std::size_t d = ensemble.dim();
  const PureState& a = ensemble.states[0];
  const PureState& b = ensemble.states[1];
  const double s = std::abs(a.inner(b));
  if (s >= 1.0 - 1e-10) {
    throw std::invalid_argument(
        "optimal_usd: states are parallel, unambiguous discrimination impossible");
  }
  const PureState b_perp = orthonormal_against(a, b);  // in span{a,b}, orthogonal to b
  const PureState a_perp = orthonormal_against(b, a);
  const double kappa = 1.0 / (1.0 + s);

  Matrix e_a = outer(b_perp, b_perp) * kappa;
  Matrix e_b = outer(a_perp, a_perp) * kappa;
  Matrix e_dk = Matrix::identity(d) - e_a - e_b;

  DiscriminationReport report;
  report.strategy = DiscriminationStrategy::kOptimalUsd;
  report.povm.emplace_back(std::move(e_a));
  report.povm.emplace_back(std::move(e_b));
  report.povm.emplace_back(std::move(e_dk));
  report.identifies = {0, 1, -1};
  report.labels = {"state-0", "state-1", "inconclusive"};
  std::ostringstream notes;
  notes << "scale 1/(1+overlap) = " << kappa
        << " saturates positivity of the inconclusive element";
  report.notes = notes.str();
  fill_statistics(report, ensemble);
  return report;
}

DiscriminationReport numeric_usd(const StateEnsemble& ensemble) {
  const std::size_t n = ensemble.states.size();
  const std::size_t d = ensemble.dim();
  if (n != d) {
    throw std::invalid_argument("numeric_usd: " + std::to_string(n) + " states in dimension " +
                                std::to_string(d) + "; need one state per dimension");
  }
  if (!ensemble.priors_equal()) {
    throw std::invalid_argument("numeric_usd: equal priors required");
  }

  // Gram matrix and its inverse via the Hermitian eigensystem.
  Matrix s(d, n);
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < d; ++i) s(i, k) = ensemble.states[k].amplitude(i);
  const Matrix gram = matmul(dagger(s), s);
  const EigenSystem gram_eig = eig_hermitian(gram);
  if (gram_eig.eigenvalues.front() <= 1e-8) {
    std::ostringstream msg;
    msg << "numeric_usd: states are linearly dependent (Gram minimum eigenvalue "
        << gram_eig.eigenvalues.front() << ")";
    throw std::invalid_argument(msg.str());
  }
  Matrix gram_inv(n, n);
  for (std::size_t k = 0; k < n; ++k) {
    const double inv = 1.0 / gram_eig.eigenvalues[k];
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        gram_inv(i, j) += inv * gram_eig.eigenvectors(i, k) *
                          std::conj(gram_eig.eigenvectors(j, k));
  }
  // Columns of S G^-1 form the reciprocal basis: <dual_k|s_j> = delta_kj.
  const Matrix duals = matmul(s, gram_inv);

  UsdGeometry geom;
  geom.q.reserve(n);
  geom.gain.reserve(n);
  for (std::size_t k = 0; k < n; ++k) {
    std::vector<Complex> col(d);
    for (std::size_t i = 0; i < d; ++i) col[i] = duals(i, k);
    const PureState unit = PureState::normalized(std::move(col));
    geom.q.push_back(outer(unit, unit));
    Complex overlap(0.0, 0.0);
    for (std::size_t i = 0; i < d; ++i)
      overlap += std::conj(unit.amplitude(i)) * ensemble.states[k].amplitude(i);
    geom.gain.push_back(std::norm(overlap));
  }

  // Symmetric ensembles peak at uniform weights; keep a few deterministic
  // biased restarts for asymmetric inputs.
  bool symmetric = true;
  const double s01 = std::abs(ensemble.states[0].inner(ensemble.states[1]));
  for (std::size_t i = 0; i < n && symmetric; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (std::abs(std::abs(ensemble.states[i].inner(ensemble.states[j])) - s01) >
          1e-12) {
        symmetric = false;
        break;
      }

  std::vector<std::vector<double>> starts;
  starts.emplace_back(n, 1.0 / static_cast<double>(n));
  if (!symmetric) {
    for (std::size_t r = 0; r < n; ++r) {
      std::vector<double> w(n, 0.5 / static_cast<double>(n));
      w[r] += 0.5;
      starts.push_back(std::move(w));
    }
  }

  std::vector<double> best_w;
  double best_value = -1.0;
  std::size_t total_sweeps = 0;
  for (std::vector<double>& w : starts) {
    double value = usd_objective(geom, w, ensemble.priors, nullptr);
    for (std::size_t sweep = 0; sweep < 100; ++sweep) {
      const double before = value;
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
          value = golden_section_pair(geom, w, ensemble.priors, i, j);
      ++total_sweeps;
      if (value - before < 1e-10) break;
    }
    if (value > best_value) {
      best_value = value;
      best_w = w;
    }
  }

  double scale = 0.0;
  usd_objective(geom, best_w, ensemble.priors, &scale);

  Matrix e_dk = Matrix::identity(d);
  DiscriminationReport report;
  report.strategy = DiscriminationStrategy::kNumericUsd;
  for (std::size_t k = 0; k < n; ++k) {
    Matrix e_k = geom.q[k] * (scale * best_w[k]);
    e_dk = e_dk - e_k;
    report.povm.emplace_back(std::move(e_k));
    report.identifies.push_back(static_cast<int>(k));
    report.labels.push_back("state-" + std::to_string(k));
  }
  const double dk_floor = min_eigenvalue((e_dk + dagger(e_dk)) * 0.5);
  report.povm.emplace_back(std::move(e_dk));
  report.identifies.push_back(-1);
  report.labels.emplace_back("inconclusive");
  std::ostringstream notes;
  notes << "pairwise simplex ascent, " << total_sweeps
        << " sweeps; inconclusive-element minimum eigenvalue " << dk_floor
        << " (positivity boundary active)"
        << (symmetric ? "; symmetric ensemble, uniform start" : "");
  report.notes = notes.str();
  fill_statistics(report, ensemble);
  return report;
}

DiscriminationCounts simulate_discrimination(const DiscriminationReport& report,
                                             const StateEnsemble& ensemble,
                                             std::size_t trials,
                                             std::mt19937_64& rng) {
  const auto probs = outcome_table(ensemble, report.povm);
  DiscriminationCounts counts;
  for (std::size_t trial = 0; trial < trials; ++trial) {
    double u = uniform01(rng);
    std::size_t truth = ensemble.states.size() - 1;
    double cumulative = 0.0;
    for (std::size_t t = 0; t < ensemble.states.size(); ++t) {
      cumulative += ensemble.priors[t];
      if (u < cumulative) {
        truth = t;
        break;
      }
    }
    u = uniform01(rng);
    std::size_t outcome = report.povm.size() - 1;
    cumulative = 0.0;
    for (std::size_t k = 0; k < report.povm.size(); ++k) {
      cumulative += probs[truth][k];
      if (u < cumulative) {
        outcome = k;
        break;
      }
    }
    const int announced = report.identifies[outcome];
    if (announced < 0) {
      ++counts.inconclusive;
    } else if (static_cast<std::size_t>(announced) == truth) {
      ++counts.correct;
    } else {
      ++counts.wrong;
    }
  }
  return counts;
}

}  // namespace qmeas
