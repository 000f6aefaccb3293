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

#include "qmeas/bayes.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace qmeas {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

// Normalizes log weights in place into probabilities; returns false when
// every weight is zero.
bool normalize_log_weights(std::vector<double>& logw, std::vector<double>& out) {
  const double peak = *std::max_element(logw.begin(), logw.end());
  if (!(peak > kNegInf)) return false;
  out.resize(logw.size());
  double total = 0.0;
  for (std::size_t i = 0; i < logw.size(); ++i) {
    out[i] = logw[i] == kNegInf ? 0.0 : std::exp(logw[i] - peak);
    total += out[i];
  }
  for (double& p : out) p /= total;
  return true;
}

}  // namespace

DiscreteBelief::DiscreteBelief(std::vector<std::string> labels_in,
                               std::vector<double> probs_in, double tol)
    : labels(std::move(labels_in)), probs(std::move(probs_in)) {
  if (labels.empty() || labels.size() != probs.size()) {
    throw std::invalid_argument("DiscreteBelief: labels and probabilities must be "
                                "nonempty and aligned");
  }
  double total = 0.0;
  for (double p : probs) {
    if (!(p >= -1e-15)) {
      throw std::invalid_argument("DiscreteBelief: negative probability " +
                                  std::to_string(p));
    }
    total += p;
  }
  if (std::abs(total - 1.0) > tol) {
    std::ostringstream msg;
    msg << "DiscreteBelief: probabilities sum to " << total;
    throw std::invalid_argument(msg.str());
  }
}

double DiscreteBelief::prob(const std::string& label) const {
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (labels[i] == label) return probs[i];
  }
  throw std::invalid_argument("DiscreteBelief: unknown label '" + label + "'");
}

DiscreteBelief bayes_update(const DiscreteBelief& prior,
                            const std::vector<double>& likelihoods) {
  if (likelihoods.size() != prior.probs.size()) {
    throw std::invalid_argument("bayes_update: likelihood count " +
                                std::to_string(likelihoods.size()) + " vs " +
                                std::to_string(prior.probs.size()) + " hypotheses");
  }
  std::vector<double> posterior(likelihoods.size());
  double evidence = 0.0;
  for (std::size_t i = 0; i < likelihoods.size(); ++i) {
    if (!(likelihoods[i] >= 0.0)) {
      throw std::invalid_argument("bayes_update: likelihood " +
                                  std::to_string(likelihoods[i]) + " is negative");
    }
    posterior[i] = prior.probs[i] * likelihoods[i];
    evidence += posterior[i];
  }
  if (evidence <= 0.0) {
    throw std::runtime_error(
        "bayes_update: zero total evidence, data contradicts every hypothesis");
  }
  for (double& p : posterior) p /= evidence;
  return DiscreteBelief(prior.labels, std::move(posterior));
}

CoinData::CoinData(std::uint64_t heads_in, std::uint64_t tosses_in)
    : heads(heads_in), tosses(tosses_in) {
  if (heads > tosses) {
    throw std::invalid_argument("CoinData: " + std::to_string(heads) +
                                " heads exceed " + std::to_string(tosses) + " tosses");
  }
}

double BinomialLikelihood::operator()(double p) const {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw std::invalid_argument("BinomialLikelihood: p " + std::to_string(p) +
                                " outside [0, 1]");
  }
  const double h = static_cast<double>(data_.heads);
  const double t = static_cast<double>(data_.tosses - data_.heads);
  return std::pow(p, h) * std::pow(1.0 - p, t);
}

double BinomialLikelihood::log_value(double p) const {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw std::invalid_argument("BinomialLikelihood: p " + std::to_string(p) +
                                " outside [0, 1]");
  }
  const double h = static_cast<double>(data_.heads);
  const double t = static_cast<double>(data_.tosses - data_.heads);
  double value = 0.0;
  if (h > 0.0) value += p > 0.0 ? h * std::log(p) : kNegInf;
  if (t > 0.0) value += p < 1.0 ? t * std::log1p(-p) : kNegInf;
  return value;
}

BinomialLikelihood binomial_likelihood(CoinData data) {
  return BinomialLikelihood(data);
}

double GridPosterior::mean() const {
  double num = 0.0;
  double den = 0.0;
  for (std::size_t i = 0; i + 1 < grid.size(); ++i) {
    const double dx = grid[i + 1] - grid[i];
    num += 0.5 * dx * (grid[i] * density[i] + grid[i + 1] * density[i + 1]);
    den += 0.5 * dx * (density[i] + density[i + 1]);
  }
  return num / den;
}

double GridPosterior::argmax() const {
  std::size_t best = 0;
  for (std::size_t i = 1; i < density.size(); ++i) {
    if (density[i] > density[best]) best = i;
  }
  return grid[best];
}

GridPosterior grid_posterior(CoinData data, PriorKind prior, std::size_t grid_size) {
  if (grid_size < 101) {
    throw std::invalid_argument("grid_posterior: grid size " +
                                std::to_string(grid_size) + " below 101");
  }
  const BinomialLikelihood like(data);
  GridPosterior out;
  out.grid.resize(grid_size);
  std::vector<double> logd(grid_size);

  if (prior == PriorKind::kFlat) {
    for (std::size_t i = 0; i < grid_size; ++i) {
      const double p = static_cast<double>(i) / static_cast<double>(grid_size - 1);
      out.grid[i] = p;
      logd[i] = like.log_value(p);
    }
  } else {
    // Midpoint grid: cell centers (i + 0.5)/n, endpoints excluded.
    for (std::size_t i = 0; i < grid_size; ++i) {
      const double p =
          (static_cast<double>(i) + 0.5) / static_cast<double>(grid_size);
      out.grid[i] = p;
      logd[i] = like.log_value(p) - 0.5 * std::log(p * (1.0 - p));
    }
  }

  std::vector<double> density;
  if (!normalize_log_weights(logd, density)) {
    throw std::runtime_error("grid_posterior: posterior vanishes on the whole grid");
  }
  // Rescale so the trapezoid integral over the grid equals 1.
  double integral = 0.0;
  for (std::size_t i = 0; i + 1 < grid_size; ++i) {
    integral += 0.5 * (out.grid[i + 1] - out.grid[i]) * (density[i] + density[i + 1]);
  }
  for (double& d : density) d /= integral;
  out.density = std::move(density);
  return out;
}

CoinEstimators coin_estimators(CoinData data) {
  CoinEstimators est;
  const double h = static_cast<double>(data.heads);
  const double n = static_cast<double>(data.tosses);
  est.mean_flat = (h + 1.0) / (n + 2.0);
  est.mean_bures = (h + 0.5) / (n + 1.0);
  if (data.tosses == 0) {
    est.mle = std::nullopt;
    est.naive_stderr = std::nullopt;
  } else {
    const double p = h / n;
    est.mle = p;
    est.naive_stderr = std::sqrt(p * (1.0 - p) / n);
  }
  return est;
}

DiscreteBelief sequential_update(const DiscreteBelief& prior,
                                 const std::vector<std::vector<double>>& observations) {
  std::vector<double> logw(prior.probs.size());
  for (std::size_t i = 0; i < prior.probs.size(); ++i) {
    logw[i] = prior.probs[i] > 0.0 ? std::log(prior.probs[i]) : kNegInf;
  }
  for (std::size_t k = 0; k < observations.size(); ++k) {
    const std::vector<double>& like = observations[k];
    if (like.size() != prior.probs.size()) {
      throw std::invalid_argument("sequential_update: observation " +
                                  std::to_string(k) + " has " +
                                  std::to_string(like.size()) + " likelihoods, expected " +
                                  std::to_string(prior.probs.size()));
    }
    for (std::size_t i = 0; i < like.size(); ++i) {
      if (!(like[i] >= 0.0)) {
        throw std::invalid_argument("sequential_update: negative likelihood " +
                                    std::to_string(like[i]));
      }
      logw[i] += like[i] > 0.0 ? std::log(like[i]) : kNegInf;
    }
  }
  std::vector<double> posterior;
  if (!normalize_log_weights(logw, posterior)) {
    throw std::runtime_error(
        "sequential_update: zero total evidence, data contradicts every hypothesis");
  }
  return DiscreteBelief(prior.labels, std::move(posterior));
}

}  // namespace qmeas
