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

#pragma once

#include "qfp/multiport.hpp"

namespace qfp {

/// U(theta, phi, lambda) =
///   [[cos(theta/2),             -e^{i lambda} sin(theta/2)],
///    [e^{i phi} sin(theta/2),   e^{i(phi+lambda)} cos(theta/2)]]
struct TargetUnitary {
  double theta = 0.0;
  double phi = 0.0;
  double lambda = 0.0;

  TargetUnitary() = default;
  /// Throws std::invalid_argument unless theta in [0, pi] and phi, lambda
  /// in [0, 2 pi).
  TargetUnitary(double theta, double phi, double lambda);

  Matrix2c matrix() const;
};

struct GateMetrics {
  double success = 0.0;
  double fidelity = 0.0;
};

/// Amplitudes of a photon over bins 0 and 1. Not necessarily normalized:
/// after a lossy gate the squared norm is the retention probability.
struct QubitState {
  cplx c0{1.0, 0.0};
  cplx c1{0.0, 0.0};

  double norm_squared() const { return std::norm(c0) + std::norm(c1); }
  /// Throws std::domain_error on the zero vector.
  QubitState normalized() const;
  Eigen::Vector2cd vector() const { return {c0, c1}; }
};

Matrix2c target_unitary(double theta, double phi, double lambda);

/// Tr(W^dagger W) / 2.
double success_probability(const ComputationalGate& w);

/// |Tr(W^dagger U)|^2 / (4 P_W). Throws UndefinedMetricError when P_W == 0.
double gate_fidelity(const ComputationalGate& w, const Matrix2c& u);
double gate_fidelity(const ComputationalGate& w, const TargetUnitary& u);

GateMetrics evaluate_gate(const ComputationalGate& w, const Matrix2c& u);

/// Re-targets a configuration that realizes g U(theta, 0, 0) so that it
/// realizes g U(theta, phi, lambda): the first EOM is delayed by
/// -lambda / dw, the last by phi / dw, and linear phases k lambda and k phi
/// are added to the first and last shaper (the single shaper of a
/// three-element processor receives both). Every other setting is kept.
///
/// The block transforms as W'_{mn} = e^{i(m phi + n lambda)} W_{mn} on every
/// bin. A lone EOM can only absorb phi + lambda == 0 (mod 2 pi); anything else
/// throws std::invalid_argument.
QfpConfig reconfigure(const QfpConfig& cfg, double phi, double lambda);

QubitState apply_gate(const Matrix2c& m, const QubitState& s);

}  // namespace qfp
