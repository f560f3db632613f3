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

#include "qfp/gates.hpp"

#include <cmath>
#include <stdexcept>

#include "qfp/error.hpp"

namespace qfp {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;
// Slack for angles computed as k*pi/n landing a rounding error past an edge.
constexpr double kAngleSlack = 1e-12;

RfWaveform delayed(const RfWaveform& w, double delay_fraction) {
  std::vector<Harmonic> hs = w.harmonics();
  for (auto& h : hs) h.delay = wrap_delay(h.delay + delay_fraction);
  return RfWaveform(std::move(hs));
}

ShaperPhases ramped(const ShaperPhases& s, double slope) {
  ShaperPhases out = s;
  out.ramp += slope;
  return out;
}

double wrap_two_pi(double a) {
  double r = std::fmod(a, kTwoPi);
  return r < 0 ? r + kTwoPi : r;
}

}  // namespace

TargetUnitary::TargetUnitary(double theta_, double phi_, double lambda_) : theta(theta_), phi(phi_), lambda(lambda_) {
  if (!(theta >= -kAngleSlack && theta <= kPi + kAngleSlack)) {
    throw std::invalid_argument("TargetUnitary: theta outside [0, pi]");
  }
  if (!(phi >= -kAngleSlack && phi < kTwoPi) || !(lambda >= -kAngleSlack && lambda < kTwoPi)) {
    throw std::invalid_argument("TargetUnitary: phi and lambda must lie in [0, 2pi)");
  }
}

Matrix2c TargetUnitary::matrix() const {
  const double c = std::cos(theta / 2.0);
  const double s = std::sin(theta / 2.0);
  Matrix2c u;
  u << c, -std::polar(s, lambda),  //
      std::polar(s, phi), std::polar(c, phi + lambda);
  return u;
}

QubitState QubitState::normalized() const {
  const double n = std::sqrt(norm_squared());
  if (n == 0.0) throw std::domain_error("QubitState: cannot normalize the zero vector");
  return {c0 / n, c1 / n};
}

Matrix2c target_unitary(double theta, double phi, double lambda) {
  return TargetUnitary(theta, phi, lambda).matrix();
}

double success_probability(const ComputationalGate& w) { return w.w.squaredNorm() / 2.0; }

double gate_fidelity(const ComputationalGate& w, const Matrix2c& u) {
  const double p = success_probability(w);
  if (!(p > 0.0)) throw UndefinedMetricError("gate_fidelity: W vanishes, fidelity undefined");
  const cplx overlap = (w.w.adjoint() * u).trace();
  return std::norm(overlap) / (4.0 * p);
}

double gate_fidelity(const ComputationalGate& w, const TargetUnitary& u) { return gate_fidelity(w, u.matrix()); }

GateMetrics evaluate_gate(const ComputationalGate& w, const Matrix2c& u) {
  return {success_probability(w), gate_fidelity(w, u)};
}

QfpConfig reconfigure(const QfpConfig& cfg, double phi, double lambda) {
  if (!std::isfinite(phi) || !std::isfinite(lambda)) throw std::invalid_argument("reconfigure: non-finite phase");
  std::vector<Element> elements = cfg.elements();
  if (elements.empty()) throw std::invalid_argument("reconfigure: configuration has no EOM");

  const double first_delay = -lambda / kTwoPi;
  const double last_delay = phi / kTwoPi;

  if (elements.size() == 1) {
    // A single EOM multiplies W_mn by e^{i(m-n) dw tau}; only phi = -lambda works.
    const double residual = wrap_two_pi(phi + lambda);
    if (std::min(residual, kTwoPi - residual) > 1e-12) {
      throw std::invalid_argument("reconfigure: a lone EOM can only realize phi + lambda = 0 (mod 2pi)");
    }
    elements.front() = delayed(std::get<RfWaveform>(elements.front()), last_delay);
    return QfpConfig(cfg.grid(), std::move(elements));
  }

  elements.front() = delayed(std::get<RfWaveform>(elements.front()), first_delay);
  elements.back() = delayed(std::get<RfWaveform>(elements.back()), last_delay);
  auto& first_shaper = std::get<ShaperPhases>(elements[1]);
  first_shaper = ramped(first_shaper, lambda);
  auto& last_shaper = std::get<ShaperPhases>(elements[elements.size() - 2]);
  last_shaper = ramped(last_shaper, phi);
  return QfpConfig(cfg.grid(), std::move(elements));
}

QubitState apply_gate(const Matrix2c& m, const QubitState& s) {
  const Eigen::Vector2cd out = m * s.vector();
  return {out(0), out(1)};
}

}  // namespace qfp
