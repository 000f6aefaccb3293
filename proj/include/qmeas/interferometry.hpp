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

#include <array>
#include <cstddef>
#include <random>
#include <string>
#include <vector>

#include "qmeas/bayes.hpp"
#include "qmeas/state.hpp"

namespace qmeas {

// Beamsplitter convention used throughout: transmission keeps the phase,
// reflection picks up a factor i.

// n phases uniformly covering [0, 2*pi).
std::vector<double> uniform_phase_grid(std::size_t n);

/**
 * Two-path interferometer with internal marker states: path amplitudes
 * (|amp_a|^2 + |amp_b|^2 = 1 within 1e-10) and a normalized marker state
 * carried by each path.  `phase_grid` lists the relative phases to scan
 * (at least 8).
 */
struct TwoPathConfig {
  TwoPathConfig(Complex amp_a, Complex amp_b, PureState marker_a, PureState marker_b,
                std::vector<double> phase_grid);

  Complex amp_a;
  Complex amp_b;
  PureState marker_a;
  PureState marker_b;
  std::vector<double> phase_grid;
};

/**
 * Detector probabilities across the phase grid.  The two-path intensity
 * |amp_a|^2 + |amp_b|^2 + 2 Re(e^{i phi} amp_a* amp_b <A|B>) feeds a
 * two-port recombiner, so the stored per-detector probability is half of it
 * and stays in [0, 1].
 */
struct FringeReport {
  std::vector<double> probabilities;
  double visibility = 0.0;          // (max - min) / (max + min)
  double distinguishability = 0.0;  // sqrt(1 - |<A|B>|^2)
};

FringeReport fringe_pattern(const TwoPathConfig& config);

struct DualityReport {
  double distinguishability = 0.0;
  double visibility = 0.0;
  double slack = 0.0;  // 1 - D^2 - V^2
};

// Distinguishability from the optimal marker measurement (the minimum-error
// bias 1 - 2 p_err), visibility from the fringe scan.  D^2 + V^2 <= 1, with
// equality for pure markers and equal amplitudes.
DualityReport duality_report(const TwoPathConfig& config);

/**
 * Which-path eraser: a source emits (|s1>|i1> + e^{i phi}|s2>|i2>)/sqrt(2)
 * with orthogonal markers, the marker passes the mixing beamsplitter, and
 * the signal pattern is kept conditioned on each marker detector.  Patterns
 * are joint probabilities at a fixed signal port; each marker port selects
 * half the events.
 */
struct EraserReport {
  std::vector<double> pattern_d1;
  std::vector<double> pattern_d2;
  double p_select_d1 = 0.0;
  double p_select_d2 = 0.0;
};

EraserReport eraser_postselect(const std::vector<double>& phase_grid);

enum class ArmObject {
  kNone,
  kAbsorber,
};

/**
 * Mach-Zehnder interferometer with real transmission amplitudes at the two
 * splitters and an optional absorber in the arm reflected at the first
 * splitter.  Detector D sits at the port that is dark when the absorber is
 * absent and the splitters are balanced.
 */
struct MachZehnder {
  double bs1_transmission = 0.0;
  double bs2_transmission = 0.0;
  ArmObject object = ArmObject::kNone;

  static MachZehnder balanced(ArmObject object);
};

enum class BombState {
  kWorking,    // acts as an absorber
  kDefective,  // transparent
};

// Single-photon outcome distribution over {C, D, boom}.
DiscreteBelief ifm_single_pass(const MachZehnder& mz, BombState bomb);

enum class IfmOutcome {
  kCertifiedWorking,  // dark-port click
  kExploded,
  kInconclusive,  // iteration cap reached
};

struct IfmRun {
  IfmOutcome outcome = IfmOutcome::kInconclusive;
  std::size_t passes = 0;
};

// Repeats single passes, reinserting the photon after every bright-port
// click, until a dark-port click or an explosion.
IfmRun ifm_repeat_until_conclusive(const MachZehnder& mz, BombState bomb,
                                   std::mt19937_64& rng,
                                   std::size_t max_iterations = 10000);

struct SplitterSweepResult {
  double best_merit = 0.0;  // P(D) / (P(D) + P(boom)) for a working bomb
  double t1_squared = 0.0;
  double t2_squared = 0.0;
};

// Scans transmission pairs on an n x n grid, keeping only configurations
// whose dark port stays dark for a defective bomb, and maximizes the
// conclusive figure of merit.  The merit approaches 1/2 as the first
// splitter becomes nearly transparent but never attains it.
SplitterSweepResult ifm_splitter_sweep(std::size_t grid_n = 200);

struct ZenoReport {
  double p_detect_working = 0.0;         // photon survives all passes: cos^(2n)(pi/2n)
  double p_explode = 0.0;                // 1 - p_detect_working
  double p_detect_defective_error = 0.0; // wrongly certifying a defective bomb
};

// Quantum-Zeno bomb tester: per pass the polarization rotates by pi/(2n)
// and a working bomb projects out the rotated-in component.  Computed by
// explicit sequential evolution.
ZenoReport zeno_ifm(std::size_t n_passes);

// Basis order for the two-particle overlap region of the double
// interferometer: indices into HardyState::amplitudes.
inline constexpr std::size_t kHardyOuterOuter = 0;  // O+ O-
inline constexpr std::size_t kHardyInnerOuter = 1;  // I+ O-
inline constexpr std::size_t kHardyOuterInner = 2;  // O+ I-
inline constexpr std::size_t kHardyInnerInner = 3;  // I+ I-
inline constexpr std::size_t kHardyBoom = 4;

/**
 * Joint state of the overlapping interferometer pair after the annihilation
 * interaction, including the annihilated (boom) component.
 */
struct HardyState {
  std::array<Complex, 5> amplitudes{};

  PureState to_state() const;
};

// Each particle enters its interferometer in (|O> + |I>)/sqrt(2); the
// overlapping inner arms annihilate into the boom component.
HardyState hardy_evolution();

/**
 * Detection statistics after recombining each interferometer: C is the
 * bright port (|O> + |I>)/sqrt(2) and D the dark port (|O> - |I>)/sqrt(2).
 */
struct HardyReport {
  double p_cc = 0.0;
  double p_cd = 0.0;  // C on +, D on -
  double p_dc = 0.0;  // D on +, C on -
  double p_dd = 0.0;
  double p_boom = 0.0;
  double p_dplus = 0.0;   // marginal dark-port rate, + particle
  double p_dminus = 0.0;  // marginal dark-port rate, - particle
};

HardyReport hardy_detection_probabilities();

}  // namespace qmeas
