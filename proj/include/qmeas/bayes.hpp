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

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace qmeas {

/**
 * Probability distribution over named hypotheses.  Construction validates
 * nonnegative weights summing to 1 within `tol`.
 */
struct DiscreteBelief {
  DiscreteBelief(std::vector<std::string> labels, std::vector<double> probs,
                 double tol = 1e-9);

  double prob(const std::string& label) const;

  std::vector<std::string> labels;
  std::vector<double> probs;
};

// One Bayes step: posterior_i proportional to prior_i * likelihood_i.
// Likelihoods must be nonnegative; a zero total evidence (contradictory
// data) raises std::runtime_error.
DiscreteBelief bayes_update(const DiscreteBelief& prior,
                            const std::vector<double>& likelihoods);

/**
 * Coin-toss record: `heads` successes out of `tosses` trials.
 */
struct CoinData {
  CoinData(std::uint64_t heads, std::uint64_t tosses);

  std::uint64_t heads;
  std::uint64_t tosses;
};

/**
 * Unnormalized binomial likelihood p^H (1-p)^(N-H), with log evaluation for
 * long records.
 */
class BinomialLikelihood {
 public:
  explicit BinomialLikelihood(CoinData data) : data_(data) {}

  // Value at p in [0, 1]; 0^0 counts as 1.
  double operator()(double p) const;
  // Natural log; -inf where the likelihood vanishes.
  double log_value(double p) const;

  const CoinData& data() const { return data_; }

 private:
  CoinData data_;
};

BinomialLikelihood binomial_likelihood(CoinData data);

enum class PriorKind {
  kFlat,
  kBures,  // density proportional to 1/sqrt(p(1-p))
};

/**
 * Posterior density tabulated on a grid over [0, 1], normalized so the
 * trapezoid integral is 1.  The flat prior uses an endpoint-inclusive grid;
 * the Bures prior uses a midpoint grid, which keeps the integrable endpoint
 * singularities of the density off the grid.
 */
struct GridPosterior {
  std::vector<double> grid;
  std::vector<double> density;

  // Trapezoid mean of p.
  double mean() const;
  // Grid point with the highest density.
  double argmax() const;
};

// Accumulates log prior + log likelihood and exponentiates after subtracting
// the maximum, so records with tosses up to ~1e6 do not underflow.
GridPosterior grid_posterior(CoinData data, PriorKind prior, std::size_t grid_size);

struct CoinEstimators {
  std::optional<double> mle;           // H/N; empty when N = 0
  double mean_flat;                    // (H+1)/(N+2)
  double mean_bures;                   // (H+0.5)/(N+1)
  std::optional<double> naive_stderr;  // sqrt(p(1-p)/N); empty when N = 0
};

CoinEstimators coin_estimators(CoinData data);

// Chains one likelihood vector per observation in log space, then
// normalizes once.  Equivalent to repeated bayes_update but immune to
// underflow on long observation records.
DiscreteBelief sequential_update(const DiscreteBelief& prior,
                                 const std::vector<std::vector<double>>& observations);

}  // namespace qmeas
