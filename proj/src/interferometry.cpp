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

#include "qmeas/interferometry.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "qmeas/discrimination.hpp"

namespace qmeas {

namespace {

constexpr Complex kI(0.0, 1.0);

double reflection_from_transmission(double t) {
  if (!(t >= 0.0 && t <= 1.0)) {
    throw std::invalid_argument("beamsplitter transmission " + std::to_string(t) +
                                " outside [0, 1]");
  }
  return std::sqrt(std::max(0.0, 1.0 - t * t));
}

struct MzAmplitudes {
  Complex bright;  // detector C
  Complex dark;    // detector D
  double boom = 0.0;
};

// Propagates one photon through the interferometer.  The photon is
// reflected at the first splitter into the object arm with amplitude i*r1;
// an absorber converts that weight into the boom probability.
MzAmplitudes propagate(const MachZehnder& mz) {
  const double t1 = mz.bs1_transmission;
  const double t2 = mz.bs2_transmission;
  const double r1 = reflection_from_transmission(t1);
  const double r2 = reflection_from_transmission(t2);

  Complex free_arm(t1, 0.0);
  Complex object_arm = kI * r1;
  MzAmplitudes out;
  if (mz.object == ArmObject::kAbsorber) {
    out.boom = std::norm(object_arm);
    object_arm = Complex(0.0, 0.0);
  }
  // Second splitter: the free arm transmits into the dark port, the object
  // arm reflects into it, so without an absorber the two cancel when
  // t1 t2 = r1 r2.
  out.dark = free_arm * t2 + object_arm * (kI * r2);
  out.bright = free_arm * (kI * r2) + object_arm * t2;
  return out;
}

}  // namespace

std::vector<double> uniform_phase_grid(std::size_t n) {
  if (n < 8) {
    throw std::invalid_argument("uniform_phase_grid: need at least 8 phases, got " +
                                std::to_string(n));
  }
  std::vector<double> grid(n);
  for (std::size_t i = 0; i < n; ++i) {
    grid[i] = 2.0 * std::numbers::pi * static_cast<double>(i) / static_cast<double>(n);
  }
  return grid;
}

TwoPathConfig::TwoPathConfig(Complex amp_a_in, Complex amp_b_in, PureState marker_a_in,
                             PureState marker_b_in, std::vector<double> phase_grid_in)
    : amp_a(amp_a_in),
      amp_b(amp_b_in),
      marker_a(std::move(marker_a_in)),
      marker_b(std::move(marker_b_in)),
      phase_grid(std::move(phase_grid_in)) {
  const double total = std::norm(amp_a) + std::norm(amp_b);
  if (std::abs(total - 1.0) > 1e-10) {
    throw std::invalid_argument("TwoPathConfig: path weights sum to " +
                                std::to_string(total));
  }
  if (marker_a.dim() != marker_b.dim()) {
    throw std::invalid_argument("TwoPathConfig: marker dimensions differ");
  }
  if (phase_grid.size() < 8) {
    throw std::invalid_argument("TwoPathConfig: need at least 8 phases, got " +
                                std::to_string(phase_grid.size()));
  }
}

FringeReport fringe_pattern(const TwoPathConfig& config) {
  const Complex marker_overlap = config.marker_a.inner(config.marker_b);
  const Complex cross = std::conj(config.amp_a) * config.amp_b * marker_overlap;
  const double base = std::norm(config.amp_a) + std::norm(config.amp_b);

  FringeReport report;
  report.probabilities.reserve(config.phase_grid.size());
  double lo = 1.0;
  double hi = 0.0;
  for (double phi : config.phase_grid) {
    const Complex rot(std::cos(phi), std::sin(phi));
    const double p = 0.5 * (base + 2.0 * (rot * cross).real());
    report.probabilities.push_back(p);
    lo = std::min(lo, p);
    hi = std::max(hi, p);
  }
  report.visibility = hi + lo > 0.0 ? (hi - lo) / (hi + lo) : 0.0;
  report.distinguishability =
      std::sqrt(std::max(0.0, 1.0 - std::norm(marker_overlap)));
  return report;
}

DualityReport duality_report(const TwoPathConfig& config) {
  const FringeReport fringe = fringe_pattern(config);
  // Route the marker states through the minimum-error measurement; its bias
  // is the operational distinguishability.
  const auto markers =
      StateEnsemble::equal_priors({config.marker_a, config.marker_b});
  const double bias = 1.0 - 2.0 * helstrom(markers).p_error;

  DualityReport report;
  report.distinguishability = bias;
  report.visibility = fringe.visibility;
  report.slack = 1.0 - bias * bias - fringe.visibility * fringe.visibility;
  return report;
}

EraserReport eraser_postselect(const std::vector<double>& phase_grid) {
  if (phase_grid.size() < 8) {
    throw std::invalid_argument("eraser_postselect: need at least 8 phases, got " +
                                std::to_string(phase_grid.size()));
  }
  // Source (|s1>|i1> + e^{i phi}|s2>|i2>)/sqrt(2) with orthogonal markers.
  // The marker splitter ports measure <d1| = (<i1| - i <i2|)/sqrt(2) and
  // <d2| = (<i1| + i <i2|)/sqrt(2), so the conditional signal states are
  // (|s1> -+ i e^{i phi}|s2>)/2.  The fixed signal port is the bright
  // combination (s1 + s2)/sqrt(2).
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  EraserReport report;
  report.pattern_d1.reserve(phase_grid.size());
  report.pattern_d2.reserve(phase_grid.size());
  double sum_d1 = 0.0;
  double sum_d2 = 0.0;
  for (double phi : phase_grid) {
    const Complex rot(std::cos(phi), std::sin(phi));
    const Complex s1_d1 = 0.5;
    const Complex s2_d1 = -kI * rot * 0.5;
    const Complex s1_d2 = 0.5;
    const Complex s2_d2 = kI * rot * 0.5;
    report.pattern_d1.push_back(std::norm(inv_sqrt2 * (s1_d1 + s2_d1)));
    report.pattern_d2.push_back(std::norm(inv_sqrt2 * (s1_d2 + s2_d2)));
    sum_d1 += std::norm(s1_d1) + std::norm(s2_d1);
    sum_d2 += std::norm(s1_d2) + std::norm(s2_d2);
  }
  report.p_select_d1 = sum_d1 / static_cast<double>(phase_grid.size());
  report.p_select_d2 = sum_d2 / static_cast<double>(phase_grid.size());
  return report;
}

MachZehnder MachZehnder::balanced(ArmObject object) {
  const double t = 1.0 / std::sqrt(2.0);
  return MachZehnder{t, t, object};
}

DiscreteBelief ifm_single_pass(const MachZehnder& mz, BombState bomb) {
  MachZehnder configured = mz;
  configured.object =
      bomb == BombState::kWorking ? ArmObject::kAbsorber : ArmObject::kNone;
  const MzAmplitudes amps = propagate(configured);
  return DiscreteBelief({"C", "D", "boom"},
                        {std::norm(amps.bright), std::norm(amps.dark), amps.boom});
}

IfmRun ifm_repeat_until_conclusive(const MachZehnder& mz, BombState bomb,
                                   std::mt19937_64& rng, std::size_t max_iterations) {
  const DiscreteBelief dist = ifm_single_pass(mz, bomb);
  const double p_bright = dist.prob("C");
  const double p_dark = dist.prob("D");
  IfmRun run;
  for (std::size_t pass = 1; pass <= max_iterations; ++pass) {
    run.passes = pass;
    const double u = uniform01(rng);
    if (u < p_bright) continue;  // bright-port click: try again
    run.outcome =
        u < p_bright + p_dark ? IfmOutcome::kCertifiedWorking : IfmOutcome::kExploded;
    return run;
  }
  run.outcome = IfmOutcome::kInconclusive;
  return run;
}

SplitterSweepResult ifm_splitter_sweep(std::size_t grid_n) {
  if (grid_n < 2) {
    throw std::invalid_argument("ifm_splitter_sweep: grid too small");
  }
  SplitterSweepResult best;
  for (std::size_t i = 1; i <= grid_n; ++i) {
    for (std::size_t j = 1; j <= grid_n; ++j) {
      const double t1_sq = static_cast<double>(i) / static_cast<double>(grid_n + 1);
      const double t2_sq = static_cast<double>(j) / static_cast<double>(grid_n + 1);
      MachZehnder mz{std::sqrt(t1_sq), std::sqrt(t2_sq), ArmObject::kNone};
      // A usable tester needs the dark port silent for defective bombs;
      // otherwise a D click certifies nothing.
      const MzAmplitudes transparent = propagate(mz);
      if (std::norm(transparent.dark) > 1e-9) continue;
      mz.object = ArmObject::kAbsorber;
      const MzAmplitudes armed = propagate(mz);
      const double p_dark = std::norm(armed.dark);
      const double denominator = p_dark + armed.boom;
      if (denominator <= 0.0) continue;
      const double merit = p_dark / denominator;
      if (merit > best.best_merit) {
        best.best_merit = merit;
        best.t1_squared = t1_sq;
        best.t2_squared = t2_sq;
      }
    }
  }
  return best;
}

ZenoReport zeno_ifm(std::size_t n_passes) {
  if (n_passes == 0) {
    throw std::invalid_argument("zeno_ifm: need at least one pass");
  }
  const double theta =
      std::numbers::pi / (2.0 * static_cast<double>(n_passes));
  const double c = std::cos(theta);
  const double s = std::sin(theta);

  ZenoReport report;
  // Working bomb: the rotated-in component is absorbed every pass.  With
  // unnormalized amplitudes, |out|^2 after each projection is the joint
  // probability of having survived every pass so far.
  double out_amp = 1.0;
  double in_amp = 0.0;
  for (std::size_t pass = 0; pass < n_passes; ++pass) {
    const double rotated_out = c * out_amp - s * in_amp;
    out_amp = rotated_out;
    in_amp = 0.0;
  }
  report.p_detect_working = out_amp * out_amp;
  report.p_explode = 1.0 - report.p_detect_working;

  // Defective bomb: the rotations compose coherently; certifying "working"
  // means finding the photon still in the out mode.
  double free_out = 1.0;
  double free_in = 0.0;
  for (std::size_t pass = 0; pass < n_passes; ++pass) {
    const double rotated_out = c * free_out - s * free_in;
    const double rotated_in = s * free_out + c * free_in;
    free_out = rotated_out;
    free_in = rotated_in;
  }
  report.p_detect_defective_error = free_out * free_out;
  return report;
}

PureState HardyState::to_state() const {
  return PureState(std::vector<Complex>(amplitudes.begin(), amplitudes.end()));
}

HardyState hardy_evolution() {
  HardyState state;
  // Product of two (|O> + |I>)/sqrt(2) inputs, with the doubly-inner
  // component annihilated.
  state.amplitudes[kHardyOuterOuter] = Complex(0.5, 0.0);
  state.amplitudes[kHardyInnerOuter] = Complex(0.5, 0.0);
  state.amplitudes[kHardyOuterInner] = Complex(0.5, 0.0);
  state.amplitudes[kHardyInnerInner] = Complex(0.0, 0.0);
  state.amplitudes[kHardyBoom] = Complex(0.5, 0.0);
  return state;
}

HardyReport hardy_detection_probabilities() {
  const HardyState state = hardy_evolution();
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  // Port amplitudes on each side: C = (O + I)/sqrt(2), D = (O - I)/sqrt(2).
  // joint(port+, port-) = sum over arm pairs of the port overlaps.
  auto port_coeff = [&](bool dark, bool inner) {
    return dark ? (inner ? -inv_sqrt2 : inv_sqrt2) : inv_sqrt2;
  };
  auto joint = [&](bool dark_plus, bool dark_minus) {
    const Complex amp =
        state.amplitudes[kHardyOuterOuter] * port_coeff(dark_plus, false) *
            port_coeff(dark_minus, false) +
        state.amplitudes[kHardyInnerOuter] * port_coeff(dark_plus, true) *
            port_coeff(dark_minus, false) +
        state.amplitudes[kHardyOuterInner] * port_coeff(dark_plus, false) *
            port_coeff(dark_minus, true) +
        state.amplitudes[kHardyInnerInner] * port_coeff(dark_plus, true) *
            port_coeff(dark_minus, true);
    return std::norm(amp);
  };

  HardyReport report;
  report.p_cc = joint(false, false);
  report.p_cd = joint(false, true);
  report.p_dc = joint(true, false);
  report.p_dd = joint(true, true);
  report.p_boom = std::norm(state.amplitudes[kHardyBoom]);
  report.p_dplus = report.p_dc + report.p_dd;
  report.p_dminus = report.p_cd + report.p_dd;
  return report;
}

}  // namespace qmeas
