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
#include <random>
#include <string>
#include <vector>

#include "qmeas/measurement.hpp"
#include "qmeas/state.hpp"

namespace qmeas {

/**
 * Candidate pure states with prior probabilities.  Priors must be
 * nonnegative and sum to 1 within 1e-9; dimensions must agree.
 */
struct StateEnsemble {
  StateEnsemble(std::vector<PureState> states, std::vector<double> priors);

  static StateEnsemble equal_priors(std::vector<PureState> states);

  std::size_t dim() const { return states.front().dim(); }
  bool priors_equal(double tol = 1e-9) const;

  std::vector<PureState> states;
  std::vector<double> priors;
};

enum class DiscriminationStrategy {
  kHelstrom,
  kProjectiveUsd,
  kOptimalUsd,
  kNumericUsd,
};

/**
 * Measurement built by a discrimination strategy.  `identifies[k]` gives the
 * ensemble index announced by outcome k, or -1 for an inconclusive outcome.
 * p_success + p_error + p_inconclusive = 1 within 1e-9.
 */
struct DiscriminationReport {
  DiscriminationStrategy strategy;
  std::vector<PovmElement> povm;
  std::vector<int> identifies;
  std::vector<std::string> labels;
  double p_success = 0.0;
  double p_error = 0.0;
  double p_inconclusive = 0.0;
  std::string notes;
};

// Minimum-error measurement for two states: split the eigenbasis of
// p_a rho_a - p_b rho_b by eigenvalue sign (zero modes count toward the
// second state).  Equal-prior error is (1 - sqrt(1 - |<a|b>|^2)) / 2.
DiscriminationReport helstrom(const StateEnsemble& ensemble);

// Unambiguous discrimination by projecting onto the orthocomplement of the
// second state, so only the first state is ever certified.  Equal priors
// only; success probability (1 - |<a|b>|^2) / 2.
DiscriminationReport projective_usd(const StateEnsemble& ensemble);

// Optimal two-state unambiguous discrimination: E_a = kappa |b_perp><b_perp|
// and E_b = kappa |a_perp><a_perp| with kappa = 1/(1 + |<a|b>|), the largest
// scale keeping the inconclusive element positive.  Equal priors only;
// success probability 1 - |<a|b>|; rejects parallel inputs.
DiscriminationReport optimal_usd(const StateEnsemble& ensemble);

// Unambiguous discrimination of d linearly independent states in dimension
// d.  Conclusive elements are scaled projectors onto the normalized
// reciprocal-basis vectors; the scales are optimized numerically subject to
// the inconclusive element staying positive.  Equal priors only.
DiscriminationReport numeric_usd(const StateEnsemble& ensemble);

struct DiscriminationCounts {
  std::size_t correct = 0;
  std::size_t wrong = 0;
  std::size_t inconclusive = 0;
};

// Draws `trials` preparations from the ensemble priors, measures each with
// the report's POVM, and tallies announcements against the truth.
DiscriminationCounts simulate_discrimination(const DiscriminationReport& report,
                                             const StateEnsemble& ensemble,
                                             std::size_t trials,
                                             std::mt19937_64& rng);

}  // namespace qmeas
