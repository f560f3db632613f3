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

#include "qfp/beamsplitter.hpp"

#include <cmath>
#include <stdexcept>

namespace qfp {

BeamsplitterSpec::BeamsplitterSpec(double theta_mod_, double alpha_, int series_terms_)
    : theta_mod(theta_mod_), alpha(alpha_), series_terms(series_terms_) {
  if (!(theta_mod >= 0.0) || !std::isfinite(theta_mod)) throw std::invalid_argument("BeamsplitterSpec: theta_mod must be >= 0");
  if (!std::isfinite(alpha)) throw std::invalid_argument("BeamsplitterSpec: non-finite alpha");
  if (series_terms < 8) throw std::invalid_argument("BeamsplitterSpec: series_terms must be >= 8");
}

ComputationalGate bs_matrix(const BeamsplitterSpec& spec) {
  const double x = spec.theta_mod;
  const double j0 = std::cyl_bessel_j(0.0, x);
  const double j0sq = j0 * j0;

  // Summed from the smallest terms up.
  double coupling = 0.0;
  for (int k = spec.series_terms; k >= 1; --k) {
    coupling += std::cyl_bessel_j(static_cast<double>(k), x) * std::cyl_bessel_j(static_cast<double>(k - 1), x);
  }

  const cplx e = std::polar(1.0, spec.alpha);
  const cplx shared = (1.0 + e) * (1.0 - j0sq) / 2.0;
  ComputationalGate g;
  g.w(0, 0) = j0sq + shared;
  g.w(1, 1) = e * j0sq + shared;
  g.w(1, 0) = (1.0 - e) * coupling;
  g.w(0, 1) = g.w(1, 0);
  return g;
}

ReflectTransmit reflectivity_transmissivity(const BeamsplitterSpec& spec) {
  const auto g = bs_matrix(spec);
  return {std::norm(g.w(1, 0)), std::norm(g.w(0, 0))};
}

BlochPoint bloch_angles(const QubitState& s) {
  const double a = std::abs(s.c0);
  const double b = std::abs(s.c1);
  BlochPoint p;
  p.theta = 2.0 * std::atan2(b, a);
  if (a == 0.0 || b == 0.0) return p;
  // Relative phase arg(c1) - arg(c0), already in (-pi, pi].
  p.phi = std::arg(s.c1 * std::conj(s.c0));
  return p;
}

std::vector<BlochPoint> bloch_trajectory(const std::vector<BeamsplitterSpec>& specs) {
  std::vector<BlochPoint> out;
  out.reserve(specs.size());
  for (const auto& spec : specs) {
    const auto g = bs_matrix(spec);
    out.push_back(bloch_angles({g.w(0, 0), g.w(1, 0)}));
  }
  return out;
}

QfpConfig bs_config(const BeamsplitterSpec& spec, const FrequencyGrid& grid) {
  return QfpConfig(grid, {RfWaveform::single_tone(spec.theta_mod, 0.0), ShaperPhases::step(spec.alpha),
                          RfWaveform::single_tone(spec.theta_mod, 0.5)});
}

std::vector<double> linspace(double lo, double hi, int count) {
  if (count < 2) throw std::invalid_argument("linspace: need at least two points");
  std::vector<double> v(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) v[static_cast<std::size_t>(i)] = lo + (hi - lo) * i / (count - 1);
  return v;
}

}  // namespace qfp
