// Copyright 2026 The qfp-gates Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// End-to-end pipelines behind the command-line tool. Each returns plain rows
// so tests can check them without going through files.

#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "qfp/beamsplitter.hpp"
#include "qfp/synthesis.hpp"
#include "qfp/tomography.hpp"

namespace qfp {

/// cos(theta/2)|0> + e^{i phi} sin(theta/2)|1>, the image of |0> under
/// U(theta, phi, lambda).
QubitState rotated_state(double theta, double phi);

/// Report and config for U(theta, phi, lambda): the result of synthesizing
/// U(theta, 0, 0) and then reconfiguring it.
struct SynthRun {
  SynthesisResult base;
  QfpConfig config;
  GateReport report;
};

/// Throws SynthesisFailure if U(theta, 0, 0) is not reachable.
SynthRun run_synth(double theta, double phi, double lambda, const Scenario& scenario,
                   const SynthesisSettings& settings);

/// Re-evaluates `base` after reconfiguring it for (phi, lambda). The metrics
/// are computed from scratch against U(theta, phi, lambda).
SynthRun reconfigured_run(const SynthesisResult& base, double phi, double lambda, int report_half_width = 0);

/// `count` values evenly spaced on [0, pi], endpoints included.
std::vector<double> uniform_thetas(int count);

/// theta,success,fidelity,family,params_json,status
std::string sweep_csv(const std::vector<SweepRow>& rows);

struct TomographyOptions {
  double budget = 1e5;
  double dark_rate = 0.0;
  int samples = kDefaultPosteriorSamples;
  ChainSettings chain;
  std::uint64_t seed = 1;
};

struct TomographyResult {
  FidelityStats fidelity;
  double acceptance_rate = 0.0;
  bool sampler_ok = true;
  std::string message;
};

/// Simulates counts for the pure state `truth`, samples the posterior and
/// scores it against `ideal`. Sampler diagnostics are reported, not thrown.
TomographyResult tomography_of(const QubitState& truth, const QubitState& ideal, const TomographyOptions& opts);

struct BsRow {
  double alpha = 0.0;
  double reflectivity = 0.0;
  double transmissivity = 0.0;
  double theta = 0.0;
  double phi = 0.0;
  /// Largest |analytic W - cascade W| over the four entries.
  double cascade_max_dev = 0.0;
  std::optional<TomographyResult> tomo;
};

/// n_alpha evenly spaced alpha on [0, 2 pi]. With `tomo`, each output state
/// W(alpha)|0> (normalized) is also reconstructed and compared to itself
/// as computed analytically. Throws std::invalid_argument on n_alpha < 2.
std::vector<BsRow> bs_table(double theta_mod, int n_alpha, int half_width = 0,
                            const TomographyOptions* tomo = nullptr);

/// alpha,R,T,theta,phi,cascade_max_dev[,fidelity_mean,fidelity_std,status]
std::string bs_csv(const std::vector<BsRow>& rows);

struct GatePoint {
  double theta = 0.0;
  double phi = 0.0;
};

/// 41 points: theta = k pi / 10 for k = 0..10 with 1,4,4,4,5,5,5,4,4,4,1
/// evenly spaced phi values in [0, 2 pi) per theta.
std::vector<GatePoint> fig3_preset();

struct RotateRow {
  GatePoint gate;
  double success = 0.0;
  double gate_fidelity = 0.0;
  TomographyResult tomo;
  bool synthesized = true;
};

/// Synthesizes U(theta, 0, 0) once per distinct theta, reconfigures it for
/// each phi, applies it to |0> and reconstructs the normalized output.
/// Gate k uses tomography seed mix_seed(opts.seed, k).
std::vector<RotateRow> rotate_tomo(const std::vector<GatePoint>& gates, const Scenario& scenario,
                                   const SynthesisSettings& settings, const TomographyOptions& opts);

/// theta,phi,success,gate_fidelity,fidelity_mean,fidelity_std,acceptance,status
std::string rotate_csv(const std::vector<RotateRow>& rows);

}  // namespace qfp
