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

// Gate synthesis: search over QFP drive parameters for the configuration
// that realizes U(theta, 0, 0) with the largest success probability subject
// to F_W >= 0.9999.

#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "qfp/gates.hpp"
#include "qfp/multiport.hpp"
#include "qfp/optimize.hpp"

namespace qfp {

inline constexpr double kFidelityFloor = 0.9999;
/// Slack on the feasibility check for rounding right at the band edge.
inline constexpr double kFeasibilitySlack = 1e-12;
/// EOM index separating the two 3x1 solution families.
inline constexpr double kFamilyIndexThreshold = 2.3;

enum class ScenarioKind { ThreeElemOneTone, ThreeElemTwoTone, FiveElemOneTone };

struct Scenario {
  ScenarioKind kind = ScenarioKind::ThreeElemOneTone;
  /// Upper bound on each harmonic's modulation index (rad).
  double index_bound = 4.0;
  /// Bins whose shaper phases are searched independently. One extra phase on
  /// each side is shared by every bin beyond the range.
  int shaper_lo = -5;
  int shaper_hi = 6;

  Scenario() = default;
  /// Uses default_shaper_range(kind). Throws std::invalid_argument on
  /// index_bound <= 0 or an empty or bin-0-only shaper range.
  explicit Scenario(ScenarioKind kind, double index_bound = 4.0);
  Scenario(ScenarioKind kind, double index_bound, int shaper_lo, int shaper_hi);

  /// Accepts "3x1", "3x2" and "5x1".
  static Scenario parse(std::string_view name);
  /// Searched shaper bins per layout. The two-tone drive spreads light over
  /// more bins, and its optima keep improving out to about +-10.
  static std::pair<int, int> default_shaper_range(ScenarioKind kind);
  std::string name() const;

  int eom_count() const { return kind == ScenarioKind::FiveElemOneTone ? 3 : 2; }
  std::vector<int> harmonic_orders() const;
};

/// Flat parameter layout, in element order: per EOM, (index, delay) for each
/// harmonic; per shaper, phases for bins shaper_lo-1 .. shaper_hi+1 with
/// bin 0 omitted (held at phase 0, a global phase).
class SearchSpace {
 public:
  explicit SearchSpace(Scenario scenario, FrequencyGrid grid = {});

  const Scenario& scenario() const { return scenario_; }
  std::size_t dimension() const { return bounds_.size(); }
  const Bounds& bounds() const { return bounds_; }
  /// Bins carried by each shaper, in parameter order.
  const std::vector<int>& shaper_bins() const { return shaper_bins_; }

  /// Throws std::invalid_argument on a wrong-length vector.
  QfpConfig config(std::span<const double> params) const;
  /// Parameters of the undriven cascade (the identity).
  std::vector<double> zero_params() const;
  /// Largest per-EOM summed index in `params`.
  double max_eom_index(std::span<const double> params) const;
  /// Window used while optimizing: sized for the index bound.
  const ModeWindow& window() const { return window_; }

 private:
  Scenario scenario_;
  FrequencyGrid grid_;
  Bounds bounds_;
  std::vector<int> shaper_bins_;
  ModeWindow window_;
};

/// Piecewise penalty weight over fidelity bands.
/// Throws std::invalid_argument if f is outside [0, 1] (beyond 1e-9 slack).
/// Maps `params` of `from` onto `to`: added harmonics and modulators are
/// undriven, added shapers are flat, and shaper bins keep their phases
/// (bins outside `from`'s range take its edge value).
std::vector<double> embed_params(const SearchSpace& from, std::span<const double> params, const SearchSpace& to);

double penalty_weight(double f);

/// -P + beta(F)(0.9999 - F) for a computed block against U(theta, 0, 0).
double penalty_cost(const GateMetrics& m);

struct CostEvaluator {
  const SearchSpace& space;
  Matrix2c target;
  int samples = 256;

  /// Metrics of the cascade at `params`. Throws TruncationError or
  /// UndefinedMetricError.
  GateMetrics metrics(std::span<const double> params) const;
  /// +inf when the point cannot be evaluated.
  double operator()(std::span<const double> params) const;
};

/// Convenience wrapper: cost at `params` for U(theta, 0, 0).
double synthesis_cost(const SearchSpace& space, std::span<const double> params, double theta);

enum class SolutionFamily { SmallIndex, LargeIndex };

std::string_view family_name(SolutionFamily f);
SolutionFamily classify_family(double max_index);

struct GateReport {
  double theta = 0.0;
  double phi = 0.0;
  double lambda = 0.0;
  Matrix2c w = Matrix2c::Identity();
  double success = 1.0;
  double fidelity = 1.0;
  std::vector<double> params;
  std::string scenario = "3x1";
  std::uint64_t seed = 0;
  SolutionFamily family = SolutionFamily::SmallIndex;
  bool refined = false;
};

struct SynthesisSettings {
  PsoSettings pso;
  int restarts = 8;
  bool refine = true;
  RefineSettings refine_settings;
  /// Quadrature samples per period inside the optimizer.
  int search_samples = 256;
  /// Half-width of the window for the final from-scratch evaluation;
  /// 0 selects default_window.
  int report_half_width = 0;
  /// Extra starting points, refined and ranked alongside the restarts.
  std::vector<std::vector<double>> warm_starts;
  /// For 3x2 and 5x1, first solve 3x1 with the same settings and add its
  /// embedded solution as a warm start.
  bool nested = true;
};

struct SynthesisResult {
  GateReport report;
  QfpConfig config;
  /// Best cost after each PSO iteration of the winning restart (or the cost
  /// of the winning warm start), followed by its refined cost when
  /// refinement helped. Nonincreasing.
  std::vector<double> cost_history;
  bool refined = false;
  SolutionFamily family = SolutionFamily::SmallIndex;
  bool feasible = false;
  /// Largest per-EOM summed index of the returned solution.
  double max_index = 0.0;
};

/// Thrown when no restart reaches F_W >= 0.9999; carries the best attempt.
class SynthesisFailure : public std::runtime_error {
 public:
  SynthesisFailure(const std::string& what, SynthesisResult best)
      : std::runtime_error(what), best_(std::move(best)) {}
  const SynthesisResult& best() const { return best_; }

 private:
  SynthesisResult best_;
};

/// Throws std::invalid_argument unless theta in [0, pi] and restarts >= 1;
/// SynthesisFailure if nothing feasible was found.
SynthesisResult synthesize(double theta, const Scenario& scenario, const SynthesisSettings& settings = {},
                           const FrequencyGrid& grid = {});

struct SweepRow {
  double theta = 0.0;
  bool feasible = false;
  SynthesisResult result;
};

/// One row per theta, sorted by theta. Failed rows carry the best infeasible
/// attempt with feasible = false.
std::vector<SweepRow> sweep(std::vector<double> thetas, const Scenario& scenario,
                            const SynthesisSettings& settings = {}, const FrequencyGrid& grid = {});

}  // namespace qfp
