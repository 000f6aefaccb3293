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

#include "qmeas/scenarios.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <iomanip>
#include <numbers>
#include <random>
#include <sstream>

#include <json.hpp>

#include "qmeas/bayes.hpp"
#include "qmeas/discrimination.hpp"
#include "qmeas/interferometry.hpp"
#include "qmeas/linalg.hpp"
#include "qmeas/measurement.hpp"
#include "qmeas/state.hpp"
#include "qmeas/weak.hpp"

namespace qmeas {

namespace {

constexpr const char* kPaper = "paper";
constexpr const char* kTrivial = "trivial";
constexpr const char* kDerived = "derived";

const double kInvSqrt2 = 1.0 / std::numbers::sqrt2;

/** Resolved parameter values plus typed accessors with range validation. */
class Params {
 public:
  Params(const std::vector<ParamSpec>& declared,
         const std::map<std::string, double>& overrides) {
    for (const ParamSpec& param : declared) {
      const auto it = overrides.find(param.name);
      const double value = it == overrides.end() ? param.default_value : it->second;
      if (!std::isfinite(value)) {
        throw UsageError("parameter '" + param.name + "' must be finite");
      }
      ordered_.emplace_back(param.name, value);
    }
  }

  double real(const std::string& name, double lo, double hi) const {
    const double v = raw(name);
    if (v < lo || v > hi) {
      std::ostringstream msg;
      msg << "parameter '" << name << "' = " << v << " outside [" << lo << ", " << hi
          << "]";
      throw UsageError(msg.str());
    }
    return v;
  }

  std::size_t count(const std::string& name, std::size_t lo, std::size_t hi) const {
    const double v = raw(name);
    const double rounded = std::round(v);
    if (std::abs(v - rounded) > 1e-9 || rounded < static_cast<double>(lo) ||
        rounded > static_cast<double>(hi)) {
      std::ostringstream msg;
      msg << "parameter '" << name << "' = " << v << " must be an integer in [" << lo
          << ", " << hi << "]";
      throw UsageError(msg.str());
    }
    return static_cast<std::size_t>(rounded);
  }

  const std::vector<std::pair<std::string, double>>& ordered() const {
    return ordered_;
  }

 private:
  double raw(const std::string& name) const {
    for (const auto& [key, value] : ordered_) {
      if (key == name) {
        return value;
      }
    }
    throw std::logic_error("parameter '" + name + "' not declared");
  }

  std::vector<std::pair<std::string, double>> ordered_;
};

/** Accumulates values, expectations, and curves for one run. */
class Builder {
 public:
  void value(const std::string& name, double v) { result.values.emplace_back(name, v); }

  void expect(const std::string& name, double v, double tolerance,
              const char* provenance, const std::string& anchor) {
    result.expected.emplace_back(name,
                                 ExpectedValue{v, tolerance, provenance, anchor});
  }

  void checked(const std::string& name, double v, double expected_v, double tolerance,
               const char* provenance, const std::string& anchor) {
    value(name, v);
    expect(name, expected_v, tolerance, provenance, anchor);
  }

  // Points are taken by value: callers assemble them locally, which keeps
  // the builder free of references that the next push_back would invalidate.
  void curve(std::string name, std::string x_label, std::string y_label,
             std::vector<std::array<double, 2>> points) {
    result.curves.push_back(Curve{std::move(name), std::move(x_label),
                                  std::move(y_label), std::move(points)});
  }

  void finalize() {
    bool ok = true;
    for (const auto& [name, exp] : result.expected) {
      bool found = false;
      for (const auto& [vname, v] : result.values) {
        if (vname == name) {
          found = true;
          if (!(std::abs(v - exp.value) <= exp.tolerance)) {
            ok = false;
          }
          break;
        }
      }
      if (!found) {
        ok = false;
      }
    }
    result.pass = ok;
  }

  ScenarioResult result;
};

// Standard normal pair via Box-Muller on the portable uniform stream, so
// seeded runs are identical across standard-library implementations.
std::pair<double, double> gaussian_pair(std::mt19937_64& rng) {
  double u = 0.0;
  do {
    u = uniform01(rng);
  } while (u <= 0.0);
  const double v = uniform01(rng);
  const double radius = std::sqrt(-2.0 * std::log(u));
  const double angle = 2.0 * std::numbers::pi * v;
  return {radius * std::cos(angle), radius * std::sin(angle)};
}

PureState random_pure_state(std::mt19937_64& rng, std::size_t dim) {
  std::vector<Complex> amps(dim);
  for (std::size_t i = 0; i < dim; ++i) {
    const auto [re, im] = gaussian_pair(rng);
    amps[i] = Complex(re, im);
  }
  return PureState::normalized(std::move(amps));
}

// Planar qubit pair |0> and s|0> + sqrt(1-s^2)|1> with real overlap s.
std::vector<PureState> overlap_pair(double s) {
  return {PureState({1.0, 0.0}),
          PureState({Complex(s, 0.0), Complex(std::sqrt(1.0 - s * s), 0.0)})};
}

// Phase phi0 of a pattern proportional to 1 + V cos(phi - phi0), recovered
// exactly from the first discrete Fourier harmonic on a uniform grid.
struct Harmonics {
  double mean = 0.0;
  double amplitude = 0.0;  // V * mean
  double phase = 0.0;
};

Harmonics first_harmonic(const std::vector<double>& phases,
                         const std::vector<double>& pattern) {
  double c0 = 0.0;
  double re = 0.0;
  double im = 0.0;
  const double n = static_cast<double>(pattern.size());
  for (std::size_t k = 0; k < pattern.size(); ++k) {
    c0 += pattern[k];
    re += pattern[k] * std::cos(phases[k]);
    im += pattern[k] * std::sin(phases[k]);
  }
  Harmonics h;
  h.mean = c0 / n;
  h.amplitude = 2.0 * std::hypot(re, im) / n;
  h.phase = std::atan2(im, re);
  return h;
}

double wrap_angle(double a) {
  while (a > std::numbers::pi) {
    a -= 2.0 * std::numbers::pi;
  }
  while (a <= -std::numbers::pi) {
    a += 2.0 * std::numbers::pi;
  }
  return a;
}

// Least-squares slope of y against x.
double ls_slope(const std::vector<double>& x, const std::vector<double>& y) {
  const double n = static_cast<double>(x.size());
  double sx = 0.0;
  double sy = 0.0;
  double sxx = 0.0;
  double sxy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
    sxx += x[i] * x[i];
    sxy += x[i] * y[i];
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

// ---------------------------------------------------------------------------
// coin

void run_coin(const Params& p, std::mt19937_64&, Builder& b) {
  const std::size_t tosses = p.count("tosses", 0, 1000000);
  const std::size_t heads = p.count("heads", 0, tosses);
  const std::size_t grid_size = p.count("grid_size", 101, 2000001);
  const CoinData data(heads, tosses);
  const CoinEstimators est = coin_estimators(data);
  const double h = static_cast<double>(heads);
  const double n = static_cast<double>(tosses);

  b.checked("mean_flat", est.mean_flat, (h + 1.0) / (n + 2.0), 1e-12, kPaper,
            "Laplace rule of succession");
  b.checked("mean_bures", est.mean_bures, (h + 0.5) / (n + 1.0), 1e-12, kPaper,
            "posterior mean under the Bures prior");
  if (est.mle.has_value()) {
    b.checked("mle", *est.mle, h / n, 1e-12, kPaper,
              "likelihood peaks at the observed head fraction");
  }
  if (est.naive_stderr.has_value()) {
    const double phat = h / n;
    b.checked("naive_stderr", *est.naive_stderr, std::sqrt(phat * (1.0 - phat) / n),
              1e-12, kTrivial, "plug-in binomial standard error");
  }

  const GridPosterior flat = grid_posterior(data, PriorKind::kFlat, grid_size);
  const GridPosterior bures = grid_posterior(data, PriorKind::kBures, grid_size);
  const double g = static_cast<double>(grid_size);
  b.checked("grid_mean_flat", flat.mean(), (h + 1.0) / (n + 2.0),
            std::max(2e-3, 10.0 / (g * g)), kDerived,
            "trapezoid integration of the gridded flat-prior posterior");
  b.checked("grid_mean_bures", bures.mean(), (h + 0.5) / (n + 1.0), 2e-3, kDerived,
            "midpoint integration of the gridded Bures-prior posterior");
  if (tosses > 0) {
    b.checked("grid_argmax_flat", flat.argmax(), h / n, 1.5 / (g - 1.0), kDerived,
              "flat-prior posterior peaks at the head fraction");
  }

  std::vector<std::array<double, 2>> flat_points;
  for (std::size_t i = 0; i < flat.grid.size(); ++i) {
    flat_points.push_back({flat.grid[i], flat.density[i]});
  }
  b.curve("posterior_flat", "p", "density", std::move(flat_points));

  std::vector<std::array<double, 2>> bures_points;
  for (std::size_t i = 0; i < bures.grid.size(); ++i) {
    bures_points.push_back({bures.grid[i], bures.density[i]});
  }
  b.curve("posterior_bures", "p", "density", std::move(bures_points));
}

// ---------------------------------------------------------------------------
// disease

void run_disease(const Params& p, std::mt19937_64&, Builder& b) {
  const double prior = p.real("prior_disease", 1e-15, 1.0 - 1e-15);
  const double sens = p.real("sensitivity", 1e-15, 1.0);
  const double fp = p.real("false_positive", 1e-15, 1.0);

  const DiscreteBelief posterior = bayes_update(
      DiscreteBelief({"disease", "healthy"}, {prior, 1.0 - prior}), {sens, fp});
  const double closed = sens * prior / (sens * prior + fp * (1.0 - prior));

  b.checked("p_disease_given_positive", posterior.prob("disease"), closed, 1e-12,
            kPaper, "rare-disease posterior after one positive screen");
  b.checked("p_healthy_given_positive", posterior.prob("healthy"), 1.0 - closed, 1e-12,
            kPaper, "a positive test still leaves excellent odds of health");
  b.checked("posterior_odds", posterior.prob("disease") / posterior.prob("healthy"),
            (prior / (1.0 - prior)) * (sens / fp), 1e-12, kDerived,
            "posterior odds are prior odds times the likelihood ratio");
}

// ---------------------------------------------------------------------------
// decay

void run_decay(const Params& p, std::mt19937_64&, Builder& b) {
  const double eta = p.real("eta", 0.0, 1.0);
  const double fit_eta = p.real("fit_eta", 1e-6, 1.0 - 1e-6);
  const std::size_t fit_steps = p.count("fit_steps", 10, 100000);

  const PureState plus({kInvSqrt2, kInvSqrt2});
  const DensityMatrix rho = pure_to_density(plus);
  const MeasurementModel model = decay_kraus(eta);

  const std::vector<double> probs = outcome_probabilities(rho, model);
  b.checked("p_no_click", probs[0], 1.0 - 0.5 * eta, 1e-12, kPaper,
            "no-click fraction for an equal superposition at one half-life");

  const MeasurementOutcome quiet = selective_update(rho, model, 0);
  const PureState target =
      PureState::normalized({Complex(1.0, 0.0), Complex(std::sqrt(1.0 - eta), 0.0)});
  b.checked("fidelity_no_click", born_probability(quiet.state, Projector::onto(target)),
            1.0, 1e-10, kPaper,
            "photon non-detection steers the superposition toward the ground state");
  if (eta > 1e-12) {
    const MeasurementOutcome click = selective_update(rho, model, 1);
    b.checked("ground_pop_after_click", std::real(click.state.entry(0, 0)), 1.0, 1e-12,
              kPaper, "detecting the photon collapses the atom to the ground state");
  }

  const std::vector<DensityMatrix> traj =
      decay_trajectory(rho, DecayModel{fit_eta, fit_steps});
  std::vector<double> steps_axis;
  std::vector<double> log_pop;
  std::vector<double> log_coh;
  std::vector<std::array<double, 2>> pop_points;
  std::vector<std::array<double, 2>> coh_points;
  std::vector<std::array<double, 2>> bloch_points;
  for (std::size_t k = 0; k < traj.size(); ++k) {
    const double pop = std::real(traj[k].entry(1, 1));
    const double coh = std::abs(traj[k].entry(0, 1));
    steps_axis.push_back(static_cast<double>(k));
    log_pop.push_back(std::log(pop));
    log_coh.push_back(std::log(coh));
    pop_points.push_back({static_cast<double>(k), pop});
    coh_points.push_back({static_cast<double>(k), coh});
    const auto bloch = bloch_vector(traj[k]);
    bloch_points.push_back({bloch[0], bloch[2]});
  }
  b.curve("excited_population", "step", "population", std::move(pop_points));
  b.curve("coherence", "step", "magnitude", std::move(coh_points));
  b.curve("bloch_xz", "x", "z", std::move(bloch_points));
  const double ratio = ls_slope(steps_axis, log_pop) / ls_slope(steps_axis, log_coh);
  b.checked("population_to_coherence_rate_ratio", ratio, 2.0, 0.02, kPaper,
            "population relaxes at twice the coherence rate in pure radiative decay");
  b.checked("excited_pop_endpoint", std::real(traj.back().entry(1, 1)),
            0.5 * std::pow(1.0 - fit_eta, static_cast<double>(fit_steps)), 1e-12,
            kDerived, "geometric survival of the excited population");
}

// ---------------------------------------------------------------------------
// duality

void run_duality(const Params& p, std::mt19937_64&, Builder& b) {
  const double s = p.real("overlap", 0.0, 1.0);
  const double w = p.real("weight_a", 1e-6, 1.0 - 1e-6);
  const std::size_t n_phases = p.count("n_phases", 8, 100000);

  const std::vector<PureState> markers = overlap_pair(s);
  const TwoPathConfig config(Complex(std::sqrt(w), 0.0),
                             Complex(std::sqrt(1.0 - w), 0.0), markers[0], markers[1],
                             uniform_phase_grid(n_phases));
  const DualityReport rep = duality_report(config);

  b.checked("visibility", rep.visibility, 2.0 * std::sqrt(w * (1.0 - w)) * s, 1e-9,
            kDerived, "fringe contrast set by marker overlap and path weights");
  b.checked("distinguishability", rep.distinguishability,
            std::sqrt(1.0 - 4.0 * w * (1.0 - w) * s * s), 1e-9, kPaper,
            "optimal which-path discrimination bias of the marker states");
  b.checked("duality_sum",
            rep.distinguishability * rep.distinguishability +
                rep.visibility * rep.visibility,
            1.0, 1e-9, kPaper, "saturated duality relation for pure marker states");
  b.checked("duality_slack", rep.slack, 0.0, 1e-9, kTrivial,
            "slack of the duality inequality vanishes for pure markers");

  const FringeReport fringe = fringe_pattern(config);
  std::vector<std::array<double, 2>> fringe_points;
  for (std::size_t k = 0; k < config.phase_grid.size(); ++k) {
    fringe_points.push_back({config.phase_grid[k], fringe.probabilities[k]});
  }
  b.curve("fringe", "phase", "probability", std::move(fringe_points));

  std::vector<std::array<double, 2>> sweep_points;
  for (int k = 0; k <= 20; ++k) {
    const double sk = static_cast<double>(k) / 20.0;
    const std::vector<PureState> mk = overlap_pair(sk);
    const TwoPathConfig ck(Complex(kInvSqrt2, 0.0), Complex(kInvSqrt2, 0.0), mk[0],
                           mk[1], uniform_phase_grid(n_phases));
    const DualityReport rk = duality_report(ck);
    sweep_points.push_back({sk, rk.distinguishability * rk.distinguishability +
                                    rk.visibility * rk.visibility});
  }
  b.curve("duality_sweep", "overlap", "d2_plus_v2", std::move(sweep_points));
}

// ---------------------------------------------------------------------------
// eraser

void run_eraser(const Params& p, std::mt19937_64&, Builder& b) {
  const std::size_t n_phases = p.count("n_phases", 8, 100000);
  const std::vector<double> grid = uniform_phase_grid(n_phases);
  const EraserReport rep = eraser_postselect(grid);

  const Harmonics h1 = first_harmonic(grid, rep.pattern_d1);
  const Harmonics h2 = first_harmonic(grid, rep.pattern_d2);
  b.checked("visibility_d1", h1.amplitude / h1.mean, 1.0, 1e-9, kPaper,
            "full-contrast conditional fringes at the first marker port");
  b.checked("visibility_d2", h2.amplitude / h2.mean, 1.0, 1e-9, kPaper,
            "full-contrast conditional fringes at the second marker port");
  b.checked("p_select_d1", rep.p_select_d1, 0.5, 1e-12, kPaper,
            "the eraser post-selection succeeds half the time");
  b.checked("p_select_d2", rep.p_select_d2, 0.5, 1e-12, kPaper,
            "the complementary port also selects half the events");
  b.checked("fringe_phase_d1", h1.phase, std::numbers::pi / 2.0, 1e-9, kDerived,
            "quarter-period fringe offset fixed by the symmetric splitter convention");
  b.checked("phase_separation", std::abs(wrap_angle(h1.phase - h2.phase)),
            std::numbers::pi, 1e-9, kPaper,
            "the two conditional patterns are mutually inverted");

  double flat_dev = 0.0;
  for (std::size_t k = 0; k < grid.size(); ++k) {
    flat_dev = std::max(flat_dev,
                        std::abs(rep.pattern_d1[k] + rep.pattern_d2[k] - 0.5));
  }
  b.checked("unconditioned_deviation", flat_dev, 0.0, 1e-10, kPaper,
            "without conditioning on the marker the ensemble shows no fringes");

  std::vector<std::array<double, 2>> d1_points;
  std::vector<std::array<double, 2>> d2_points;
  for (std::size_t k = 0; k < grid.size(); ++k) {
    d1_points.push_back({grid[k], rep.pattern_d1[k]});
    d2_points.push_back({grid[k], rep.pattern_d2[k]});
  }
  b.curve("pattern_d1", "phase", "joint_probability", std::move(d1_points));
  b.curve("pattern_d2", "phase", "joint_probability", std::move(d2_points));
}

// ---------------------------------------------------------------------------
// helstrom

void run_helstrom(const Params& p, std::mt19937_64& rng, Builder& b) {
  const double s = p.real("overlap", 0.0, 1.0);
  const double prior_a = p.real("prior_a", 1e-6, 1.0 - 1e-6);
  const std::size_t trials = p.count("trials", 1000, 10000000);

  const std::vector<PureState> states = overlap_pair(s);
  const StateEnsemble ensemble(states, {prior_a, 1.0 - prior_a});
  const DiscriminationReport rep = helstrom(ensemble);

  const double c = std::sqrt(1.0 - 4.0 * prior_a * (1.0 - prior_a) * s * s);
  const double p_err = 0.5 * (1.0 - c);
  b.checked("p_error", rep.p_error, p_err, 1e-9, kPaper,
            "minimum-error rate for two pure states");
  b.checked("p_success", rep.p_success, 1.0 - p_err, 1e-9, kTrivial,
            "complement of the error rate");

  if (rep.p_error > 1e-9) {
    // Firing rate of the detector that announces the second state, compared
    // between the two preparations.
    std::size_t idx_b = 0;
    for (std::size_t k = 0; k < rep.identifies.size(); ++k) {
      if (rep.identifies[k] == 1) {
        idx_b = k;
      }
    }
    const Matrix& e_b = rep.povm[idx_b].matrix;
    const DensityMatrix rho_a = pure_to_density(states[0]);
    const DensityMatrix rho_b = pure_to_density(states[1]);
    const double fire_b = std::real(trace(matmul(e_b, rho_b.matrix())));
    const double fire_a = std::real(trace(matmul(e_b, rho_a.matrix())));
    const double ratio = fire_b / fire_a;
    if (ensemble.priors_equal()) {
      b.checked("likelihood_ratio", ratio, (1.0 + c) / (1.0 - c), 1e-9, kPaper,
                "firing-rate ratio of the detector tilted toward the second state");
    } else {
      b.value("likelihood_ratio", ratio);
    }
  }

  const DiscriminationCounts counts = simulate_discrimination(rep, ensemble, trials, rng);
  const double simulated = static_cast<double>(counts.wrong) / static_cast<double>(trials);
  b.checked("simulated_error", simulated, p_err,
            3.0 * std::sqrt(std::max(p_err * (1.0 - p_err), 1e-12) /
                            static_cast<double>(trials)),
            kDerived, "binomial three-sigma band around the analytic error rate");

  std::vector<std::array<double, 2>> error_points;
  for (int k = 0; k <= 40; ++k) {
    const double sk = static_cast<double>(k) / 40.0;
    const DiscriminationReport rk = helstrom(StateEnsemble::equal_priors(overlap_pair(sk)));
    error_points.push_back({sk, rk.p_error});
  }
  b.curve("error_vs_overlap", "overlap", "p_error", std::move(error_points));
}

// ---------------------------------------------------------------------------
// usd

void run_usd(const Params& p, std::mt19937_64& rng, Builder& b) {
  const double s = p.real("overlap", 0.0, 1.0 - 1e-9);
  const std::size_t trials = p.count("trials", 1000, 10000000);

  const StateEnsemble ensemble = StateEnsemble::equal_priors(overlap_pair(s));
  const DiscriminationReport proj = projective_usd(ensemble);
  const DiscriminationReport opt = optimal_usd(ensemble);

  b.checked("p_success_projective", proj.p_success, 0.5 * (1.0 - s * s), 1e-9, kPaper,
            "orthocomplement projection certifies one of the two states");
  b.checked("p_success_optimal", opt.p_success, 1.0 - s, 1e-9, kPaper,
            "optimal unambiguous success is one minus the overlap");
  b.checked("p_inconclusive_optimal", opt.p_inconclusive, s, 1e-9, kPaper,
            "the inconclusive rate saturates the overlap bound");
  b.checked("p_error_optimal", opt.p_error, 0.0, 1e-12, kTrivial,
            "unambiguous strategies never misidentify");
  b.checked("optimal_advantage", opt.p_success - proj.p_success,
            0.5 * (1.0 - s) * (1.0 - s), 1e-9, kDerived,
            "strict gain of the optimal strategy between the degenerate endpoints");

  const DiscriminationCounts counts = simulate_discrimination(opt, ensemble, trials, rng);
  b.checked("wrong_identifications", static_cast<double>(counts.wrong), 0.0, 0.5,
            kDerived, "zero misidentifications in finite sampling");
  b.checked("simulated_success",
            static_cast<double>(counts.correct) / static_cast<double>(trials), 1.0 - s,
            3.0 * std::sqrt(std::max(s * (1.0 - s), 1e-12) / static_cast<double>(trials)) +
                1e-6,
            kDerived, "binomial three-sigma band around the analytic success rate");

  std::vector<std::array<double, 2>> projective_points;
  std::vector<std::array<double, 2>> optimal_points;
  for (int k = 0; k < 40; ++k) {
    const double sk = static_cast<double>(k) / 40.0;
    const StateEnsemble ek = StateEnsemble::equal_priors(overlap_pair(sk));
    projective_points.push_back({sk, projective_usd(ek).p_success});
    optimal_points.push_back({sk, optimal_usd(ek).p_success});
  }
  b.curve("success_vs_overlap", "overlap", "p_success_projective",
          std::move(projective_points));
  b.curve("optimal_success_vs_overlap", "overlap", "p_success_optimal",
          std::move(optimal_points));
}

// ---------------------------------------------------------------------------
// usd-multi

void run_usd_multi(const Params& p, std::mt19937_64&, Builder& b) {
  const double s = p.real("overlap", 0.0, 1.0 - 1e-6);

  // Three unit vectors with pairwise overlap s, realized as the columns of
  // the principal square root of the target Gram matrix.
  Matrix gram(3, 3);
  for (std::size_t i = 0; i < 3; ++i) {
    for (std::size_t j = 0; j < 3; ++j) {
      gram(i, j) = i == j ? 1.0 : s;
    }
  }
  const Matrix root = sqrt_psd(gram);
  std::vector<PureState> states;
  for (std::size_t k = 0; k < 3; ++k) {
    std::vector<Complex> amps(3);
    for (std::size_t r = 0; r < 3; ++r) {
      amps[r] = root(r, k);
    }
    states.push_back(PureState::normalized(std::move(amps)));
  }

  const StateEnsemble ensemble = StateEnsemble::equal_priors(states);
  const DiscriminationReport rep = numeric_usd(ensemble);

  b.checked("p_success", rep.p_success, 1.0 - s, 1e-6, kDerived,
            "reciprocal-basis optimum for a symmetric triple");
  b.checked("p_inconclusive", rep.p_inconclusive, s, 1e-6, kDerived,
            "inconclusive weight left by the symmetric optimum");
  b.checked("p_error", rep.p_error, 0.0, 1e-12, kTrivial,
            "unambiguous strategies never misidentify");
  b.checked("advantage_over_projective", rep.p_success - 1.0 / 3.0, 2.0 / 3.0 - s,
            1e-6, kDerived,
            "beats the one-third ceiling of projective strategies on three states");

  for (std::size_t k = 0; k < rep.identifies.size(); ++k) {
    if (rep.identifies[k] == -1) {
      b.checked("inconclusive_min_eigenvalue", min_eigenvalue(rep.povm[k].matrix), 0.0,
                1e-9, kDerived,
                "the inconclusive element touches the positivity boundary at the optimum");
    }
  }
}

// ---------------------------------------------------------------------------
// ifm

void run_ifm(const Params& p, std::mt19937_64& rng, Builder& b) {
  const std::size_t trials = p.count("trials", 1000, 10000000);
  const std::size_t max_iterations = p.count("max_iterations", 100, 1000000);
  const std::size_t grid_n = p.count("grid_n", 10, 2000);

  const MachZehnder mz = MachZehnder::balanced(ArmObject::kAbsorber);
  const DiscreteBelief working = ifm_single_pass(mz, BombState::kWorking);
  b.checked("p_bright_working", working.prob("C"), 0.25, 1e-12, kPaper,
            "a quarter of single passes end at the bright port despite a live trigger");
  b.checked("p_dark_working", working.prob("D"), 0.25, 1e-12, kPaper,
            "a quarter of single passes certify the trigger via the dark port");
  b.checked("p_boom_working", working.prob("boom"), 0.5, 1e-12, kPaper,
            "half of single passes detonate a live trigger");
  const DiscreteBelief defective = ifm_single_pass(mz, BombState::kDefective);
  b.checked("p_bright_defective", defective.prob("C"), 1.0, 1e-12, kPaper,
            "a transparent trigger restores full constructive interference");

  std::size_t certified = 0;
  std::size_t exploded = 0;
  for (std::size_t t = 0; t < trials; ++t) {
    const IfmRun run = ifm_repeat_until_conclusive(mz, BombState::kWorking, rng,
                                                   max_iterations);
    if (run.outcome == IfmOutcome::kCertifiedWorking) {
      ++certified;
    } else if (run.outcome == IfmOutcome::kExploded) {
      ++exploded;
    }
  }
  const double conclusive = static_cast<double>(certified + exploded);
  b.checked("certified_fraction", static_cast<double>(certified) / conclusive,
            1.0 / 3.0,
            3.0 * std::sqrt((1.0 / 3.0) * (2.0 / 3.0) / conclusive) + 1e-6, kPaper,
            "a third of live triggers are certified without detonation");

  const DiscreteBelief prior({"working", "defective"}, {0.5, 0.5});
  std::vector<std::vector<double>> observations;
  const std::array<double, 3> expected_posterior = {2.0 / 3.0, 4.0 / 5.0, 8.0 / 9.0};
  for (std::size_t k = 0; k < 3; ++k) {
    observations.push_back({0.5, 1.0});
    const DiscreteBelief after = sequential_update(prior, observations);
    b.checked("posterior_defective_" + std::to_string(k + 1),
              after.prob("defective"), expected_posterior[k], 1e-12, kPaper,
              "each bright-port click doubles the odds of a defective trigger");
  }

  const SplitterSweepResult sweep = ifm_splitter_sweep(grid_n);
  const double gn = static_cast<double>(grid_n);
  b.checked("best_conditional_rate", sweep.best_merit, gn / (2.0 * gn + 1.0), 1e-12,
            kDerived, "grid supremum of the conditional certification rate below one half");
  b.checked("best_t1_squared", sweep.t1_squared, gn / (gn + 1.0), 1e-12, kDerived,
            "the most transparent first splitter on the grid wins");

  std::vector<std::array<double, 2>> merit_points;
  for (int k = 1; k <= 20; ++k) {
    const double t1_sq = static_cast<double>(k) / 21.0;
    const MachZehnder var{std::sqrt(t1_sq), std::sqrt(1.0 - t1_sq),
                          ArmObject::kAbsorber};
    const DiscreteBelief dist = ifm_single_pass(var, BombState::kWorking);
    merit_points.push_back(
        {t1_sq, dist.prob("D") / (dist.prob("D") + dist.prob("boom"))});
  }
  b.curve("conditional_rate_vs_t1sq", "t1_squared", "rate",
          std::move(merit_points));
}

// ---------------------------------------------------------------------------
// zeno

void run_zeno(const Params& p, std::mt19937_64&, Builder& b) {
  const std::size_t n_passes = p.count("n_passes", 1, 100000);
  const std::size_t high_passes = p.count("high_passes", 1, 1000000);

  const ZenoReport rep = zeno_ifm(n_passes);
  const double theta = std::numbers::pi / (2.0 * static_cast<double>(n_passes));
  const double survive = std::pow(std::cos(theta), 2.0 * static_cast<double>(n_passes));
  b.checked("p_detect_working", rep.p_detect_working, survive, 1e-12, kDerived,
            "survival through n rotate-and-project passes");
  b.checked("p_explode", rep.p_explode, 1.0 - survive, 1e-12, kDerived,
            "detonation rate of the n-pass rotation tester");
  b.checked("defective_error", rep.p_detect_defective_error, 0.0, 1e-12, kTrivial,
            "a transparent run rotates fully into the orthogonal port");

  const ZenoReport high = zeno_ifm(high_passes);
  const double theta_h = std::numbers::pi / (2.0 * static_cast<double>(high_passes));
  b.checked("p_detect_high", high.p_detect_working,
            std::pow(std::cos(theta_h), 2.0 * static_cast<double>(high_passes)), 1e-12,
            kDerived, "survival probability approaches unity as passes grow");

  std::vector<std::array<double, 2>> detect_points;
  for (std::size_t k = 1; k <= 64; ++k) {
    detect_points.push_back(
        {static_cast<double>(k), zeno_ifm(k).p_detect_working});
  }
  b.curve("p_detect_vs_passes", "passes", "p_detect_working",
          std::move(detect_points));
}

// ---------------------------------------------------------------------------
// hardy

void run_hardy(const Params&, std::mt19937_64&, Builder& b) {
  const HardyState state = hardy_evolution();
  const HardyReport rep = hardy_detection_probabilities();
  const HardyWeakTable table = hardy_weak_table();

  b.checked("p_boom", rep.p_boom, 0.25, 1e-12, kTrivial,
            "quarter annihilation rate from the jointly-inner amplitude");
  b.checked("inner_inner_amplitude", std::abs(state.amplitudes[kHardyInnerInner]), 0.0,
            1e-15, kPaper, "the jointly-inner branch is removed by annihilation");
  b.checked("p_dark_plus", rep.p_dplus, 0.125, 1e-12, kPaper,
            "the first dark port fires one time in eight");
  b.checked("p_dark_minus", rep.p_dminus, 0.125, 1e-12, kDerived,
            "mirror of the single dark-port rate");
  b.checked("p_joint_dark", rep.p_dd, 0.0625, 1e-12, kPaper,
            "both dark ports fire together one time in sixteen");
  b.checked("p_bright_bright", rep.p_cc, 9.0 / 16.0, 1e-12, kDerived,
            "direct projection of the surviving amplitudes");
  b.checked("p_bright_dark", rep.p_cd, 1.0 / 16.0, 1e-12, kDerived,
            "direct projection of the surviving amplitudes");
  b.checked("p_dark_bright", rep.p_dc, 1.0 / 16.0, 1e-12, kDerived,
            "direct projection of the surviving amplitudes");
  b.checked("total_probability",
            rep.p_cc + rep.p_cd + rep.p_dc + rep.p_dd + rep.p_boom, 1.0, 1e-12,
            kTrivial, "outcome completeness");

  b.checked("weak_inner_outer", table.n_inner_outer, 1.0, 1e-12, kPaper,
            "unit weak-valued occupation: first particle inside, second outside");
  b.checked("weak_outer_inner", table.n_outer_inner, 1.0, 1e-12, kPaper,
            "unit weak-valued occupation: second particle inside, first outside");
  b.checked("weak_inner_inner", table.n_inner_inner, 0.0, 1e-12, kPaper,
            "no weak-valued joint occupation of the interaction region");
  b.checked("weak_outer_outer", table.n_outer_outer, -1.0, 1e-12, kPaper,
            "negative weak-valued joint probability forced by the sum rule");
  b.checked("weak_single_inner_plus", table.n_inner_plus, 1.0, 1e-12, kPaper,
            "certain weak-valued presence of the first particle inside");
  b.checked("weak_single_inner_minus", table.n_inner_minus, 1.0, 1e-12, kPaper,
            "certain weak-valued presence of the second particle inside");
  b.checked("weak_single_outer_plus", table.n_outer_plus, 0.0, 1e-12, kPaper,
            "vanishing weak-valued presence of the first particle outside");
  b.checked("weak_single_outer_minus", table.n_outer_minus, 0.0, 1e-12, kPaper,
            "vanishing weak-valued presence of the second particle outside");
  b.checked("weak_joint_sum",
            table.n_inner_outer + table.n_outer_inner + table.n_inner_inner +
                table.n_outer_outer,
            1.0, 1e-12, kTrivial, "the joint weak table sums to one");
}

// ---------------------------------------------------------------------------
// three-box

void run_three_box(const Params&, std::mt19937_64&, Builder& b) {
  const PureState box_a = PureState::basis(3, 0);
  const PureState box_b = PureState::basis(3, 1);
  const PureState box_c = PureState::basis(3, 2);
  const std::vector<Projector> boxes = {Projector::onto(box_a), Projector::onto(box_b),
                                        Projector::onto(box_c)};

  const PrePostSelection basic(
      PureState::normalized({1.0, 1.0, 0.0}),
      PureState::normalized({0.0, 1.0, 1.0}));
  const std::vector<double> abl = abl_probability(basic, boxes);
  b.checked("abl_box_a", abl[0], 0.0, 1e-12, kPaper,
            "a conditioned strong look never finds the coin in the first box");
  b.checked("abl_box_b", abl[1], 1.0, 1e-12, kPaper,
            "a conditioned strong look always finds the coin in the middle box");
  b.checked("abl_box_c", abl[2], 0.0, 1e-12, kPaper,
            "a conditioned strong look never finds the coin in the last box");
  b.checked("p_select_basic", basic.final_state.fidelity(basic.initial), 0.25, 1e-12,
            kDerived, "post-selection rate of the basic game");
  b.checked("weak_box_b_basic",
            std::real(weak_value(boxes[1].matrix(), basic).value), 1.0, 1e-12, kPaper,
            "unit weak-valued occupation of the middle box");

  const double inv_sqrt3 = 1.0 / std::sqrt(3.0);
  const PrePostSelection extended(
      PureState({inv_sqrt3, inv_sqrt3, inv_sqrt3}),
      PureState({inv_sqrt3, inv_sqrt3, -inv_sqrt3}));
  const double wa = std::real(weak_value(boxes[0].matrix(), extended).value);
  const double wb = std::real(weak_value(boxes[1].matrix(), extended).value);
  const double wc = std::real(weak_value(boxes[2].matrix(), extended).value);
  b.checked("weak_ext_a", wa, 1.0, 1e-12, kPaper,
            "unit weak-valued occupation of the first box in the extended game");
  b.checked("weak_ext_b", wb, 1.0, 1e-12, kPaper,
            "unit weak-valued occupation of the middle box in the extended game");
  b.checked("weak_ext_c", wc, -1.0, 1e-12, kPaper,
            "negative weak-valued occupation forced by completeness");
  b.checked("weak_ext_sum", wa + wb + wc, 1.0, 1e-12, kPaper,
            "weak values of a complete projector family sum to one");
}

// ---------------------------------------------------------------------------
// weak-pointer

void run_weak_pointer(const Params& p, std::mt19937_64&, Builder& b) {
  const double strength = p.real("strength", 1e-6, 10.0);
  const double sigma = p.real("sigma", 1e-3, 1000.0);
  const std::size_t n_points = p.count("n_points", 256, 65536);
  const double half_width = p.real("half_width", 6.0, 100.0);

  const Matrix observable = Matrix::from_rows({{1.0, 0.0}, {0.0, 0.0}});
  const PureState initial({kInvSqrt2, kInvSqrt2});
  const double inv_sqrt6 = 1.0 / std::sqrt(6.0);
  const PureState final_state(
      {2.0 * inv_sqrt6, Complex(inv_sqrt6, inv_sqrt6)});
  const PrePostSelection sel(initial, final_state);

  const WeakValue wv = weak_value(observable, sel);
  b.checked("re_weak_value", std::real(wv.value), 0.6, 1e-12, kDerived,
            "conditioned response ratio for the chosen selection pair");
  b.checked("im_weak_value", std::imag(wv.value), 0.2, 1e-12, kDerived,
            "imaginary part of the conditioned response ratio");
  b.checked("postselection_prob", wv.postselection_prob, 5.0 / 6.0, 1e-12, kDerived,
            "squared overlap of the selection pair");

  const GaussianPointer pointer = GaussianPointer::centered(sigma, n_points, half_width);
  const auto couple = [&](double g) {
    return pointer_couple_exact(pointer, initial, observable, CouplingSpec{g});
  };
  const JointPointerState joint = couple(strength);
  b.checked("unconditioned_shift", joint_pointer_mean_x(joint), 0.5 * strength, 1e-8,
            kPaper,
            "mean pointer displacement is coupling times the expectation value");
  const GaussianPointer wide =
      GaussianPointer::centered(4.0 * sigma, n_points, half_width);
  const JointPointerState joint_wide =
      pointer_couple_exact(wide, initial, observable, CouplingSpec{strength});
  b.checked("unconditioned_shift_wide", joint_pointer_mean_x(joint_wide),
            0.5 * strength, 1e-8, kPaper,
            "the unconditioned displacement is independent of the pointer width");

  const PointerPostselection post = pointer_postselect(joint, final_state);
  b.checked("mean_x_over_g", post.mean_x / strength, 0.6, 5e-3, kPaper,
            "conditional pointer position reads the real part of the response");
  b.checked("mean_p_scaled", post.mean_p * 2.0 * sigma * sigma / strength, 0.2, 5e-3,
            kPaper,
            "conditional momentum boost reads the imaginary part over twice the variance");
  b.checked("p_select", post.p_select, 5.0 / 6.0, 1e-3, kDerived,
            "post-selection probability approaches the squared overlap in the weak limit");

  const PointerPostselection post2 = pointer_postselect(couple(strength / 2.0), final_state);
  const PointerPostselection post4 = pointer_postselect(couple(strength / 4.0), final_state);
  const auto err_x = [&](const PointerPostselection& r, double g) {
    return std::abs(r.mean_x / g - 0.6);
  };
  const auto err_p = [&](const PointerPostselection& r, double g) {
    return std::abs(r.mean_p * 2.0 * sigma * sigma / g - 0.2);
  };
  b.checked("richardson_order_x",
            std::log2(err_x(post, strength) / err_x(post2, strength / 2.0)), 2.0, 0.3,
            kDerived, "error order of the conditional position reading under halving");
  b.checked("richardson_order_x2",
            std::log2(err_x(post2, strength / 2.0) / err_x(post4, strength / 4.0)), 2.0,
            0.3, kDerived, "error order confirmed over a second halving");
  b.checked("richardson_order_p",
            std::log2(err_p(post, strength) / err_p(post2, strength / 2.0)), 2.0, 0.3,
            kDerived, "error order of the conditional momentum reading under halving");

  // Complete the post-selection basis to average the weak values back into
  // the plain expectation value.
  const PureState final_perp(
      {Complex(-inv_sqrt6, inv_sqrt6), 2.0 * inv_sqrt6});
  const double averaged = weak_value_sum_rule(observable, initial,
                                              {final_state, final_perp});
  b.checked("sum_rule_gap", std::abs(averaged - 0.5), 0.0, 1e-10, kPaper,
            "post-selection-averaged weak values recover the expectation value");

  std::vector<std::array<double, 2>> density_points;
  for (std::size_t j = 0; j < joint.n_points; j += 8) {
    density_points.push_back({joint.x(j), std::norm(post.wavefunction[j])});
  }
  b.curve("conditional_pointer_density", "x", "density",
          std::move(density_points));
}

// ---------------------------------------------------------------------------
// naimark

void run_naimark(const Params& p, std::mt19937_64& rng, Builder& b) {
  const double eta = p.real("eta", 0.0, 1.0);
  const std::size_t n_states = p.count("n_states", 10, 100000);
  const double s = p.real("overlap", 0.0, 1.0 - 1e-9);

  const std::vector<PovmElement> povm = povm_from_kraus(decay_kraus(eta));
  const NaimarkDilation dilation = naimark_dilation(povm);
  b.checked("ancilla_dim", static_cast<double>(dilation.ancilla_dim), 2.0, 0.0,
            kTrivial, "one ancilla outcome per element");
  b.checked("isometry_gap",
            max_abs_diff(matmul(dagger(dilation.isometry), dilation.isometry),
                         Matrix::identity(2)),
            0.0, 1e-9, kTrivial, "the dilation embeds the system isometrically");

  double stat_gap = 0.0;
  for (std::size_t k = 0; k < n_states; ++k) {
    const double weight = uniform01(rng);
    const DensityMatrix rho =
        mix({{weight, pure_to_density(random_pure_state(rng, 2))},
             {1.0 - weight, pure_to_density(random_pure_state(rng, 2))}});
    const std::vector<double> dilated = dilated_probabilities(dilation, rho);
    for (std::size_t i = 0; i < povm.size(); ++i) {
      const double direct =
          std::real(trace(matmul(povm[i].matrix, rho.matrix())));
      stat_gap = std::max(stat_gap, std::abs(direct - dilated[i]));
    }
  }
  b.checked("statistics_gap", stat_gap, 0.0, 1e-9, kPaper,
            "projective statistics on the extended space reproduce the generalized "
            "measurement");

  const StateEnsemble ensemble = StateEnsemble::equal_priors(overlap_pair(s));
  const DiscriminationReport opt = optimal_usd(ensemble);
  b.checked("usd_direct_success", opt.p_success, 1.0 - s, 1e-9, kTrivial,
            "closed-form success of the dilated strategy's source measurement");
  const NaimarkDilation usd_dilation = naimark_dilation(opt.povm);
  double dilated_success = 0.0;
  for (std::size_t truth = 0; truth < 2; ++truth) {
    const std::vector<double> probs = dilated_probabilities(
        usd_dilation, pure_to_density(ensemble.states[truth]));
    for (std::size_t k = 0; k < opt.identifies.size(); ++k) {
      if (opt.identifies[k] == static_cast<int>(truth)) {
        dilated_success += 0.5 * probs[k];
      }
    }
  }
  b.checked("usd_dilated_success", dilated_success, 1.0 - s, 1e-9, kPaper,
            "the dilated unambiguous measurement keeps the optimal success rate");
}

// ---------------------------------------------------------------------------
// registry

struct ScenarioEntry {
  ScenarioInfo info;
  std::function<void(const Params&, std::mt19937_64&, Builder&)> run;
};

const std::vector<ScenarioEntry>& registry() {
  static const std::vector<ScenarioEntry> entries = [] {
    std::vector<ScenarioEntry> r;
    r.push_back({{"coin",
                  "Bayesian coin estimation: closed-form and gridded posteriors",
                  {{"heads", 7.0, "observed heads"},
                   {"tosses", 10.0, "total tosses"},
                   {"grid_size", 2001.0, "posterior grid points (>= 101)"}},
                  {"Laplace rule of succession",
                   "posterior mean under the Bures prior"}},
                 run_coin});
    r.push_back({{"disease",
                  "rare-disease screening posterior from one positive test",
                  {{"prior_disease", 1e-6, "prevalence"},
                   {"sensitivity", 0.99, "true-positive rate"},
                   {"false_positive", 1e-4, "false-positive rate"}},
                  {"rare-disease posterior after one positive screen"}},
                 run_disease});
    r.push_back({{"decay",
                  "spontaneous-emission steps: conditioned collapse and relaxation rates",
                  {{"eta", 0.5, "per-step emission probability"},
                   {"fit_eta", 0.01, "per-step probability for the rate fit"},
                   {"fit_steps", 500.0, "trajectory length for the rate fit"}},
                  {"population relaxes at twice the coherence rate",
                   "photon non-detection steers the state toward the ground state"}},
                 run_decay});
    r.push_back({{"duality",
                  "which-path marking: distinguishability against fringe visibility",
                  {{"overlap", std::numbers::sqrt2 / 2.0, "marker overlap"},
                   {"weight_a", 0.5, "path-a weight"},
                   {"n_phases", 64.0, "phase samples (>= 8)"}},
                  {"saturated duality relation for pure marker states"}},
                 run_duality});
    r.push_back({{"eraser",
                  "marker post-selection restores full-contrast, mutually inverted fringes",
                  {{"n_phases", 64.0, "phase samples (>= 8)"}},
                  {"full-contrast conditional fringes",
                   "the two conditional patterns are mutually inverted"}},
                 run_eraser});
    r.push_back({{"helstrom",
                  "minimum-error discrimination of two pure states",
                  {{"overlap", std::numbers::sqrt2 / 2.0, "state overlap"},
                   {"prior_a", 0.5, "prior of the first state"},
                   {"trials", 100000.0, "Monte Carlo sample count"}},
                  {"minimum-error rate for two pure states",
                   "firing-rate ratio of the tilted detector"}},
                 run_helstrom});
    r.push_back({{"usd",
                  "unambiguous discrimination: projective baseline against the optimal strategy",
                  {{"overlap", std::numbers::sqrt2 / 2.0, "state overlap in [0, 1)"},
                   {"trials", 100000.0, "Monte Carlo sample count"}},
                  {"optimal unambiguous success is one minus the overlap",
                   "orthocomplement projection certifies one of the two states"}},
                 run_usd});
    r.push_back({{"usd-multi",
                  "numerically optimized unambiguous discrimination of three symmetric states",
                  {{"overlap", 0.5, "pairwise overlap in [0, 1)"}},
                  {"beats the one-third ceiling of projective strategies"}},
                 run_usd_multi});
    r.push_back({{"ifm",
                  "interaction-free bomb testing: single pass, repeated runs, splitter sweep",
                  {{"trials", 100000.0, "Monte Carlo sample count"},
                   {"max_iterations", 10000.0, "per-run pass cap"},
                   {"grid_n", 200.0, "splitter sweep grid size"}},
                  {"a third of live triggers are certified without detonation",
                   "each bright-port click doubles the odds of a defective trigger"}},
                 run_ifm});
    r.push_back({{"zeno",
                  "multi-pass rotation tester approaching certain detection",
                  {{"n_passes", 10.0, "passes for the headline numbers"},
                   {"high_passes", 500.0, "passes for the near-certain regime"}},
                  {"survival through n rotate-and-project passes"}},
                 run_zeno});
    r.push_back({{"hardy",
                  "overlapping interferometers: paradoxical joint statistics and the weak table",
                  {},
                  {"both dark ports fire together one time in sixteen",
                   "negative weak-valued joint probability forced by the sum rule"}},
                 run_hardy});
    r.push_back({{"three-box",
                  "conditioned strong and weak occupation of three boxes",
                  {},
                  {"a conditioned strong look always finds the coin in the middle box",
                   "negative weak-valued occupation forced by completeness"}},
                 run_three_box});
    r.push_back({{"weak-pointer",
                  "discretized pointer readout of a weak conditioned measurement",
                  {{"strength", 0.02, "integrated coupling"},
                   {"sigma", 1.0, "initial pointer width"},
                   {"n_points", 2048.0, "pointer grid points"},
                   {"half_width", 12.0, "grid half-width in units of sigma"}},
                  {"mean pointer displacement is coupling times the expectation value",
                   "conditional momentum boost reads the imaginary part"}},
                 run_weak_pointer});
    r.push_back({{"naimark",
                  "projective realization of generalized measurements on an extended space",
                  {{"eta", 0.5, "decay-step probability for the dilated model"},
                   {"n_states", 100.0, "random states for the statistics check"},
                   {"overlap", std::numbers::sqrt2 / 2.0, "overlap for the dilated strategy"}},
                  {"projective statistics on the extended space reproduce the "
                   "generalized measurement"}},
                 run_naimark});
    return r;
  }();
  return entries;
}

std::string format_double(double v) {
  std::ostringstream out;
  out << std::setprecision(17) << v;
  return out.str();
}

}  // namespace

double ScenarioResult::value(const std::string& name) const {
  for (const auto& [key, v] : values) {
    if (key == name) {
      return v;
    }
  }
  throw std::out_of_range("no value named '" + name + "' in scenario " + scenario);
}

const std::vector<ScenarioInfo>& list_scenarios() {
  static const std::vector<ScenarioInfo> infos = [] {
    std::vector<ScenarioInfo> r;
    for (const ScenarioEntry& entry : registry()) {
      r.push_back(entry.info);
    }
    return r;
  }();
  return infos;
}

std::uint64_t scenario_seed(std::uint64_t root_seed, const std::string& name) {
  std::uint64_t hash = 1469598103934665603ULL;
  for (const unsigned char c : name) {
    hash ^= c;
    hash *= 1099511628211ULL;
  }
  return root_seed ^ hash;
}

ScenarioResult run_scenario(const std::string& name,
                            const std::map<std::string, double>& overrides,
                            std::uint64_t root_seed) {
  const ScenarioEntry* entry = nullptr;
  for (const ScenarioEntry& candidate : registry()) {
    if (candidate.info.name == name) {
      entry = &candidate;
      break;
    }
  }
  if (entry == nullptr) {
    throw UsageError("unknown scenario '" + name + "'; see `qmeas list`");
  }
  for (const auto& [key, value] : overrides) {
    (void)value;
    const bool known =
        std::any_of(entry->info.params.begin(), entry->info.params.end(),
                    [&key](const ParamSpec& param) { return param.name == key; });
    if (!known) {
      throw UsageError("unknown parameter '" + key + "' for scenario '" + name + "'");
    }
  }

  const Params params(entry->info.params, overrides);
  Builder builder;
  builder.result.scenario = name;
  builder.result.params = params.ordered();
  builder.result.seed = scenario_seed(root_seed, name);
  std::mt19937_64 rng(builder.result.seed);
  entry->run(params, rng, builder);
  builder.finalize();
  return builder.result;
}

std::string render_json(const ScenarioResult& result) {
  nlohmann::ordered_json j;
  j["scenario"] = result.scenario;
  j["params"] = nlohmann::ordered_json::object();
  for (const auto& [name, value] : result.params) {
    j["params"][name] = value;
  }
  j["seed"] = result.seed;
  j["values"] = nlohmann::ordered_json::object();
  for (const auto& [name, value] : result.values) {
    j["values"][name] = value;
  }
  j["expected"] = nlohmann::ordered_json::object();
  for (const auto& [name, exp] : result.expected) {
    j["expected"][name] = {{"value", exp.value},
                           {"tolerance", exp.tolerance},
                           {"provenance", exp.provenance},
                           {"anchor", exp.anchor}};
  }
  j["curves"] = nlohmann::ordered_json::object();
  for (const Curve& curve : result.curves) {
    nlohmann::ordered_json c;
    c["x_label"] = curve.x_label;
    c["y_label"] = curve.y_label;
    c["points"] = nlohmann::ordered_json::array();
    for (const auto& point : curve.points) {
      c["points"].push_back({point[0], point[1]});
    }
    j["curves"][curve.name] = std::move(c);
  }
  j["pass"] = result.pass;
  return j.dump(2) + "\n";
}

std::string render_csv(const ScenarioResult& result) {
  std::ostringstream out;
  out << "name,value\n";
  for (const auto& [name, value] : result.values) {
    out << name << "," << format_double(value) << "\n";
  }
  return out.str();
}

std::string render_list_text(const std::vector<ScenarioInfo>& infos) {
  std::ostringstream out;
  for (const ScenarioInfo& info : infos) {
    out << info.name << " — " << info.summary << "\n";
    for (const ParamSpec& param : info.params) {
      out << "  --param " << param.name << "=" << param.default_value << "  ("
          << param.description << ")\n";
    }
    for (const std::string& anchor : info.anchors) {
      out << "  anchor: " << anchor << "\n";
    }
  }
  return out.str();
}

std::string render_list_json(const std::vector<ScenarioInfo>& infos) {
  nlohmann::ordered_json j = nlohmann::ordered_json::array();
  for (const ScenarioInfo& info : infos) {
    nlohmann::ordered_json item;
    item["name"] = info.name;
    item["summary"] = info.summary;
    item["params"] = nlohmann::ordered_json::array();
    for (const ParamSpec& param : info.params) {
      item["params"].push_back({{"name", param.name},
                                {"default", param.default_value},
                                {"description", param.description}});
    }
    item["anchors"] = info.anchors;
    j.push_back(std::move(item));
  }
  return j.dump(2) + "\n";
}

}  // namespace qmeas
