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

#include <cmath>
#include <random>

#include <doctest.h>

#include "qmeas/bayes.hpp"
#include "qmeas/measurement.hpp"

using namespace qmeas;

TEST_CASE("belief construction validates the distribution") {
  CHECK_THROWS_AS(DiscreteBelief({"a", "b"}, {0.7, 0.7}), std::invalid_argument);
  CHECK_THROWS_AS(DiscreteBelief({"a", "b"}, {-0.1, 1.1}), std::invalid_argument);
  const DiscreteBelief ok({"a", "b"}, {0.25, 0.75});
  CHECK(ok.prob("b") == doctest::Approx(0.75).epsilon(1e-12));
  CHECK_THROWS_AS(ok.prob("missing"), std::invalid_argument);
}

TEST_CASE("single Bayes update matches direct arithmetic") {
  const double q = 1e-6;
  const double sens = 0.99;
  const double fp = 1e-4;
  const DiscreteBelief post = bayes_update(
      DiscreteBelief({"disease", "healthy"}, {q, 1.0 - q}), {sens, fp});
  const double expected = sens * q / (sens * q + fp * (1.0 - q));
  CHECK(std::abs(post.prob("disease") - expected) < 1e-15);
  CHECK(post.prob("disease") == doctest::Approx(0.0098).epsilon(1e-2));

  CHECK_THROWS_AS(bayes_update(DiscreteBelief({"a", "b"}, {1.0, 0.0}), {0.0, 1.0}),
                  std::runtime_error);
  CHECK_THROWS_AS(bayes_update(DiscreteBelief({"a", "b"}, {0.5, 0.5}), {-1.0, 1.0}),
                  std::invalid_argument);
}

TEST_CASE("sequential update agrees with iterated single updates") {
  std::mt19937_64 rng(31);
  for (int rep = 0; rep < 20; ++rep) {
    DiscreteBelief chained({"h0", "h1", "h2"}, {0.2, 0.3, 0.5});
    std::vector<std::vector<double>> observations;
    for (int k = 0; k < 12; ++k) {
      std::vector<double> like = {0.05 + uniform01(rng), 0.05 + uniform01(rng),
                                  0.05 + uniform01(rng)};
      chained = bayes_update(chained, like);
      observations.push_back(std::move(like));
    }
    const DiscreteBelief batch =
        sequential_update(DiscreteBelief({"h0", "h1", "h2"}, {0.2, 0.3, 0.5}),
                          observations);
    for (const std::string label : {"h0", "h1", "h2"}) {
      CHECK(std::abs(batch.prob(label) - chained.prob(label)) < 1e-12);
    }
  }
}

TEST_CASE("sequential update survives long strongly-informative records") {
  // 2000 observations each with likelihood ratio 2 toward the second
  // hypothesis; the log-space chain must neither underflow nor produce NaN.
  const std::vector<std::vector<double>> observations(2000, {0.5, 1.0});
  const DiscreteBelief post =
      sequential_update(DiscreteBelief({"a", "b"}, {0.5, 0.5}), observations);
  CHECK(std::isfinite(post.prob("a")));
  CHECK(post.prob("b") >= 1.0 - 1e-12);
}

TEST_CASE("binomial likelihood handles the 0^0 boundary") {
  const BinomialLikelihood all_tails(CoinData(0, 5));
  CHECK(all_tails(0.0) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(all_tails(1.0) == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(std::isinf(all_tails.log_value(1.0)));
  const BinomialLikelihood generic(CoinData(3, 10));
  CHECK(generic(0.3) ==
        doctest::Approx(std::pow(0.3, 3) * std::pow(0.7, 7)).epsilon(1e-12));
  CHECK_THROWS_AS(CoinData(6, 5), std::invalid_argument);
}

TEST_CASE("closed-form coin estimators") {
  const CoinEstimators est = coin_estimators(CoinData(7, 10));
  REQUIRE(est.mle.has_value());
  REQUIRE(est.naive_stderr.has_value());
  CHECK(*est.mle == doctest::Approx(0.7).epsilon(1e-12));
  CHECK(est.mean_flat == doctest::Approx(8.0 / 12.0).epsilon(1e-12));
  CHECK(est.mean_bures == doctest::Approx(7.5 / 11.0).epsilon(1e-12));
  CHECK(*est.naive_stderr ==
        doctest::Approx(std::sqrt(0.7 * 0.3 / 10.0)).epsilon(1e-12));

  const CoinEstimators empty = coin_estimators(CoinData(0, 0));
  CHECK_FALSE(empty.mle.has_value());
  CHECK_FALSE(empty.naive_stderr.has_value());
  CHECK(empty.mean_flat == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(empty.mean_bures == doctest::Approx(0.5).epsilon(1e-15));

  const CoinEstimators zero = coin_estimators(CoinData(0, 10));
  CHECK(*zero.mle == doctest::Approx(0.0).epsilon(1e-15));
  CHECK(*zero.naive_stderr == doctest::Approx(0.0).epsilon(1e-15));
  CHECK(zero.mean_flat == doctest::Approx(1.0 / 12.0).epsilon(1e-12));
}

TEST_CASE("grid posteriors integrate to one and match Beta means") {
  const CoinData data(7, 10);

  const GridPosterior flat = grid_posterior(data, PriorKind::kFlat, 2001);
  double integral = 0.0;
  for (std::size_t i = 0; i + 1 < flat.grid.size(); ++i) {
    integral += 0.5 * (flat.density[i] + flat.density[i + 1]) *
                (flat.grid[i + 1] - flat.grid[i]);
  }
  CHECK(integral == doctest::Approx(1.0).epsilon(1e-12));
  // Smooth integrand: trapezoid converges fast.
  CHECK(std::abs(flat.mean() - 8.0 / 12.0) < 1e-6);
  CHECK(std::abs(flat.argmax() - 0.7) < 1.0 / 2000.0 + 1e-12);

  const GridPosterior bures = grid_posterior(data, PriorKind::kBures, 2001);
  CHECK(std::abs(bures.mean() - 7.5 / 11.0) < 1e-4);

  // Singular-prior corner case: H = 0 leaves an integrable divergence at
  // p = 0, which the midpoint grid must handle.
  const GridPosterior singular = grid_posterior(CoinData(0, 10), PriorKind::kBures,
                                                10000);
  CHECK(std::abs(singular.mean() - 0.5 / 11.0) < 2e-3);
  for (const double d : singular.density) {
    CHECK(std::isfinite(d));
  }
}

TEST_CASE("long records do not underflow the grid posterior") {
  const GridPosterior flat = grid_posterior(CoinData(400000, 1000000),
                                            PriorKind::kFlat, 4001);
  CHECK(std::abs(flat.mean() - 400001.0 / 1000002.0) < 1e-4);
  CHECK(std::abs(flat.argmax() - 0.4) < 1.0 / 4000.0 + 1e-12);
}
