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

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>

#include "qfp/optimize.hpp"

namespace qfp {

void Bounds::validate() const {
  if (lower.size() != upper.size() || lower.size() != periodic.size()) {
    throw std::invalid_argument("Bounds: lower/upper/periodic sizes differ");
  }
  if (lower.empty()) throw std::invalid_argument("Bounds: zero-dimensional problem");
  for (std::size_t i = 0; i < lower.size(); ++i) {
    if (!std::isfinite(lower[i]) || !std::isfinite(upper[i]) || !(upper[i] > lower[i])) {
      throw std::invalid_argument("Bounds: each coordinate needs finite lower < upper");
    }
  }
}

double Bounds::project(std::size_t i, double x) const {
  if (periodic[i]) {
    const double r = range(i);
    double y = lower[i] + std::fmod(x - lower[i], r);
    if (y < lower[i]) y += r;
    return y >= upper[i] ? lower[i] : y;
  }
  return std::clamp(x, lower[i], upper[i]);
}

void Bounds::project(std::span<double> x) const {
  for (std::size_t i = 0; i < x.size(); ++i) x[i] = project(i, x[i]);
}

double Bounds::delta(std::size_t i, double from, double to) const {
  double d = to - from;
  if (periodic[i]) {
    const double r = range(i);
    d = std::remainder(d, r);
  }
  return d;
}

bool Bounds::contains(std::span<const double> x) const {
  if (x.size() != size()) return false;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!(x[i] >= lower[i] && x[i] <= upper[i])) return false;
  }
  return true;
}

void PsoSettings::validate() const {
  if (particles < 2) throw std::invalid_argument("PsoSettings: need at least 2 particles");
  if (iterations < 1) throw std::invalid_argument("PsoSettings: need at least 1 iteration");
  if (!(velocity_clamp > 0.0)) throw std::invalid_argument("PsoSettings: velocity clamp must be positive");
}

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream) {
  std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

namespace {

double safe_cost(const CostFn& cost, std::span<const double> x) {
  const double c = cost(x);
  return std::isnan(c) ? std::numeric_limits<double>::infinity() : c;
}

// Uniform double in [0, 1) from raw 64-bit output; avoids the
// implementation-defined algorithm behind std::uniform_real_distribution.
double unit_draw(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

}  // namespace

PsoResult pso_minimize(const CostFn& cost, const Bounds& bounds, const PsoSettings& settings) {
  bounds.validate();
  settings.validate();
  const std::size_t dim = bounds.size();
  const auto n = static_cast<std::size_t>(settings.particles);
  std::mt19937_64 rng(settings.seed);

  std::vector<double> vmax(dim);
  for (std::size_t d = 0; d < dim; ++d) vmax[d] = settings.velocity_clamp * bounds.range(d);

  std::vector<std::vector<double>> pos(n, std::vector<double>(dim));
  std::vector<std::vector<double>> vel(n, std::vector<double>(dim, 0.0));
  for (auto& p : pos) {
    for (std::size_t d = 0; d < dim; ++d) p[d] = bounds.lower[d] + unit_draw(rng) * bounds.range(d);
  }

  std::vector<double> costs(n);
  for (std::size_t i = 0; i < n; ++i) costs[i] = safe_cost(cost, pos[i]);
  auto personal = pos;
  auto personal_cost = costs;

  auto argmin = [&] {
    std::size_t g = 0;
    for (std::size_t i = 1; i < n; ++i) {
      if (personal_cost[i] < personal_cost[g]) g = i;
    }
    return g;
  };
  std::size_t g = argmin();

  PsoResult result;
  result.history.reserve(static_cast<std::size_t>(settings.iterations) + 1);
  result.history.push_back(personal_cost[g]);

  for (int it = 0; it < settings.iterations; ++it) {
    const std::vector<double> swarm_best = personal[g];
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t d = 0; d < dim; ++d) {
        const double r1 = unit_draw(rng);
        const double r2 = unit_draw(rng);
        double v = settings.inertia * vel[i][d] +
                   settings.cognitive * r1 * bounds.delta(d, pos[i][d], personal[i][d]) +
                   settings.social * r2 * bounds.delta(d, pos[i][d], swarm_best[d]);
        v = std::clamp(v, -vmax[d], vmax[d]);
        vel[i][d] = v;
        pos[i][d] = bounds.project(d, pos[i][d] + v);
      }
    }
    for (std::size_t i = 0; i < n; ++i) costs[i] = safe_cost(cost, pos[i]);
    for (std::size_t i = 0; i < n; ++i) {
      if (costs[i] < personal_cost[i]) {
        personal_cost[i] = costs[i];
        personal[i] = pos[i];
      }
    }
    g = argmin();
    result.history.push_back(personal_cost[g]);
    result.iterations_run = it + 1;

    double radius = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      double r2 = 0.0;
      for (std::size_t d = 0; d < dim; ++d) {
        const double dd = bounds.delta(d, pos[i][d], personal[g][d]);
        r2 += dd * dd;
      }
      radius = std::max(radius, std::sqrt(r2));
    }
    if (radius < settings.convergence_radius) break;
  }

  result.best = personal[g];
  result.best_cost = personal_cost[g];
  return result;
}

}  // namespace qfp
