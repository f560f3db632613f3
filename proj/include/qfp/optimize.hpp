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

// Box-bounded minimizers used by gate synthesis: a global-best particle swarm
// and a finite-difference quasi-Newton refiner.

#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

namespace qfp {

using CostFn = std::function<double(std::span<const double>)>;

/// Per-coordinate box. Periodic coordinates wrap into [lower, upper) instead
/// of being clipped, and differences along them use the shortest way round.
struct Bounds {
  std::vector<double> lower;
  std::vector<double> upper;
  std::vector<bool> periodic;

  std::size_t size() const { return lower.size(); }
  double range(std::size_t i) const { return upper[i] - lower[i]; }
  /// Throws std::invalid_argument on mismatched sizes or empty/infinite boxes.
  void validate() const;
  double project(std::size_t i, double x) const;
  void project(std::span<double> x) const;
  /// Displacement from `from` to `to` along coordinate i.
  double delta(std::size_t i, double from, double to) const;
  bool contains(std::span<const double> x) const;
};

struct PsoSettings {
  int particles = 60;
  int iterations = 800;
  double inertia = 0.729;
  double cognitive = 1.494;
  double social = 1.494;
  /// Maximum speed per coordinate as a fraction of its range.
  double velocity_clamp = 0.5;
  std::uint64_t seed = 1;
  /// Stop once every particle is within this distance of the swarm best.
  double convergence_radius = 1e-8;

  void validate() const;
};

struct PsoResult {
  std::vector<double> best;
  double best_cost = 0.0;
  /// Swarm-best cost after initialization and after each iteration.
  std::vector<double> history;
  int iterations_run = 0;
};

/// Global-best PSO. Costs of one iteration are evaluated before any personal
/// or swarm best is updated, and ties resolve to the lowest particle index,
/// so results do not depend on evaluation order. NaN costs count as +inf.
PsoResult pso_minimize(const CostFn& cost, const Bounds& bounds, const PsoSettings& settings);

struct RefineSettings {
  int max_iterations = 300;
  /// Central-difference step in coordinates scaled to unit range.
  double fd_step = 1e-6;
  double gradient_tolerance = 1e-10;
};

struct RefineResult {
  std::vector<double> x;
  double cost = 0.0;
  double start_cost = 0.0;
  int iterations = 0;
  long evaluations = 0;
};

/// Projected BFGS with central-difference gradients and Armijo backtracking,
/// run in coordinates rescaled to unit range. The returned point is the best
/// one evaluated, so its cost never exceeds the cost at `start`.
RefineResult local_refine(const CostFn& cost, std::span<const double> start, const Bounds& bounds,
                          const RefineSettings& settings = {});

/// SplitMix64 finalizer; derives independent sub-seeds from one seed.
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream);

}  // namespace qfp
