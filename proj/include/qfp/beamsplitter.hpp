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

// Tunable frequency beamsplitter: EOM(index, delay 0) / step shaper with
// jump alpha between bins 0 and 1 / EOM(index, delay 1/2). The two EOM drives
// are pi out of phase, so alpha = 0 is the identity and alpha = pi is a
// Hadamard-like splitter.

#pragma once

#include <vector>

#include "qfp/gates.hpp"
#include "qfp/multiport.hpp"

namespace qfp {

inline constexpr double kBeamsplitterIndex = 0.829;

struct BeamsplitterSpec {
  double theta_mod = kBeamsplitterIndex;
  double alpha = 0.0;
  int series_terms = 40;

  BeamsplitterSpec() = default;
  /// Throws std::invalid_argument if theta_mod < 0 or series_terms < 8.
  BeamsplitterSpec(double theta_mod, double alpha, int series_terms = 40);
};

/// Closed-form Bessel-series block:
///   W10 = W01 = (1 - e^{i alpha}) sum_{k>=1} J_k J_{k-1}
///   W00 = J0^2 + (1 + e^{i alpha}) (1 - J0^2) / 2
///   W11 = e^{i alpha} J0^2 + (1 + e^{i alpha}) (1 - J0^2) / 2
ComputationalGate bs_matrix(const BeamsplitterSpec& spec);

struct ReflectTransmit {
  double reflectivity = 0.0;    // |W10|^2
  double transmissivity = 1.0;  // |W00|^2
};

ReflectTransmit reflectivity_transmissivity(const BeamsplitterSpec& spec);

struct BlochPoint {
  double theta = 0.0;
  double phi = 0.0;
};

/// Bloch angles of a post-selected, normalized state with the global phase
/// chosen so that the |0> amplitude is real and nonnegative. phi lies in
/// (-pi, pi] and is 0 when either amplitude vanishes.
BlochPoint bloch_angles(const QubitState& s);

/// Bloch coordinates of W(alpha)|0> for each spec.
std::vector<BlochPoint> bloch_trajectory(const std::vector<BeamsplitterSpec>& specs);

QfpConfig bs_config(const BeamsplitterSpec& spec, const FrequencyGrid& grid = {});

/// `count` evenly spaced values on [lo, hi], endpoints included.
std::vector<double> linspace(double lo, double hi, int count);

}  // namespace qfp
