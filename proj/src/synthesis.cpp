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

#include "qfp/synthesis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "qfp/error.hpp"

namespace qfp {
namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kInf = std::numeric_limits<double>::infinity();

// Refinement aims slightly above the floor so the fresh recompute, which uses
// a different window and quadrature, still lands on the feasible side.
constexpr double kRefineMargin = 1e-8;
constexpr int kAugmentedRounds = 10;
constexpr double kInitialPenalty = 1e4;

}  // namespace

Scenario::Scenario(ScenarioKind kind_, double index_bound_)
    : Scenario(kind_, index_bound_, default_shaper_range(kind_).first, default_shaper_range(kind_).second) {}

std::pair<int, int> Scenario::default_shaper_range(ScenarioKind kind) {
  if (kind == ScenarioKind::ThreeElemTwoTone) return {-10, 11};
  return {-5, 6};
}

Scenario::Scenario(ScenarioKind kind_, double index_bound_, int shaper_lo_, int shaper_hi_)
    : kind(kind_), index_bound(index_bound_), shaper_lo(shaper_lo_), shaper_hi(shaper_hi_) {
  if (!(index_bound > 0.0) || !std::isfinite(index_bound)) {
    throw std::invalid_argument("Scenario: index_bound must be positive and finite");
  }
  if (shaper_lo > 0 || shaper_hi < 1) {
    throw std::invalid_argument("Scenario: shaper range must cover bins 0 and 1");
  }
}

Scenario Scenario::parse(std::string_view name) {
  if (name == "3x1") return Scenario(ScenarioKind::ThreeElemOneTone);
  if (name == "3x2") return Scenario(ScenarioKind::ThreeElemTwoTone);
  if (name == "5x1") return Scenario(ScenarioKind::FiveElemOneTone);
  throw std::invalid_argument("unknown scenario '" + std::string(name) + "' (expected 3x1, 3x2 or 5x1)");
}

std::string Scenario::name() const {
  switch (kind) {
    case ScenarioKind::ThreeElemOneTone: return "3x1";
    case ScenarioKind::ThreeElemTwoTone: return "3x2";
    case ScenarioKind::FiveElemOneTone: return "5x1";
  }
  return "?";
}

std::vector<int> Scenario::harmonic_orders() const {
  if (kind == ScenarioKind::ThreeElemTwoTone) return {1, 2};
  return {1};
}

SearchSpace::SearchSpace(Scenario scenario, FrequencyGrid grid) : scenario_(scenario), grid_(grid) {
  for (int k = scenario_.shaper_lo - 1; k <= scenario_.shaper_hi + 1; ++k) {
    if (k != 0) shaper_bins_.push_back(k);
  }
  const auto orders = scenario_.harmonic_orders();
  const int eoms = scenario_.eom_count();
  for (int e = 0; e < eoms; ++e) {
    for (std::size_t h = 0; h < orders.size(); ++h) {
      bounds_.lower.push_back(0.0);
      bounds_.upper.push_back(scenario_.index_bound);
      bounds_.periodic.push_back(false);
      bounds_.lower.push_back(0.0);
      bounds_.upper.push_back(1.0);
      bounds_.periodic.push_back(true);
    }
    if (e + 1 == eoms) break;
    for (std::size_t b = 0; b < shaper_bins_.size(); ++b) {
      bounds_.lower.push_back(0.0);
      bounds_.upper.push_back(kTwoPi);
      bounds_.periodic.push_back(true);
    }
  }
  window_ = ModeWindow::symmetric(
      default_half_width(scenario_.index_bound * static_cast<double>(orders.size())));
}

QfpConfig SearchSpace::config(std::span<const double> params) const {
  if (params.size() != dimension()) throw std::invalid_argument("SearchSpace: parameter vector has wrong length");
  const auto orders = scenario_.harmonic_orders();
  const int eoms = scenario_.eom_count();
  const int lo = scenario_.shaper_lo - 1;
  std::vector<Element> elements;
  std::size_t p = 0;
  for (int e = 0; e < eoms; ++e) {
    std::vector<Harmonic> hs;
    for (int order : orders) {
      hs.push_back({order, params[p], params[p + 1]});
      p += 2;
    }
    elements.emplace_back(RfWaveform(std::move(hs)));
    if (e + 1 == eoms) break;
    std::vector<double> phases;
    for (int k = lo; k <= scenario_.shaper_hi + 1; ++k) phases.push_back(k == 0 ? 0.0 : params[p++]);
    elements.emplace_back(ShaperPhases(lo, std::move(phases)));
  }
  return QfpConfig(grid_, std::move(elements));
}

std::vector<double> SearchSpace::zero_params() const { return std::vector<double>(dimension(), 0.0); }

double SearchSpace::max_eom_index(std::span<const double> params) const {
  if (params.size() != dimension()) throw std::invalid_argument("SearchSpace: parameter vector has wrong length");
  const std::size_t harmonics = scenario_.harmonic_orders().size();
  double best = 0.0;
  std::size_t p = 0;
  for (int e = 0; e < scenario_.eom_count(); ++e) {
    double total = 0.0;
    for (std::size_t h = 0; h < harmonics; ++h, p += 2) total += params[p];
    best = std::max(best, total);
    p += shaper_bins_.size();
  }
  return best;
}

std::vector<double> embed_params(const SearchSpace& from, std::span<const double> params, const SearchSpace& to) {
  const QfpConfig src = from.config(params);
  const auto orders = to.scenario().harmonic_orders();
  const std::size_t eoms = static_cast<std::size_t>(to.scenario().eom_count());
  std::vector<double> out;
  out.reserve(to.dimension());
  for (std::size_t e = 0; e < eoms; ++e) {
    for (int order : orders) {
      Harmonic h{order, 0.0, 0.0};
      if (e < src.eom_count()) {
        for (const auto& g : src.eom(e).harmonics()) {
          if (g.order == order) h = g;
        }
      }
      out.push_back(h.index);
      out.push_back(h.delay);
    }
    if (e + 1 == eoms) break;
    for (int bin : to.shaper_bins()) {
      double phase = e < src.shaper_count() ? src.shaper(e).phase_at(bin) - src.shaper(e).phase_at(0) : 0.0;
      phase = std::fmod(phase, kTwoPi);
      out.push_back(phase < 0.0 ? phase + kTwoPi : phase);
    }
  }
  return out;
}

double penalty_weight(double f) {
  if (!(f >= -1e-9 && f <= 1.0 + 1e-9)) throw std::invalid_argument("penalty_weight: fidelity outside [0, 1]");
  if (f < 0.9) return 100.0;
  if (f < 0.99) return 50.0;
  if (f < 0.999) return 25.0;
  if (f < 0.9999) return 10.0;
  return 0.0;
}

double penalty_cost(const GateMetrics& m) {
  const double beta = penalty_weight(std::clamp(m.fidelity, 0.0, 1.0));
  if (beta == 0.0) return -m.success;
  return -m.success + beta * (kFidelityFloor - m.fidelity);
}

GateMetrics CostEvaluator::metrics(std::span<const double> params) const {
  const QfpConfig cfg = space.config(params);
  const ModeWindow& window = space.window();
  return evaluate_gate(computational_block(cfg, window, default_max_order(window), samples), target);
}

double CostEvaluator::operator()(std::span<const double> params) const {
  try {
    return penalty_cost(metrics(params));
  } catch (const TruncationError&) {
    return kInf;
  } catch (const UndefinedMetricError&) {
    return kInf;
  }
}

double synthesis_cost(const SearchSpace& space, std::span<const double> params, double theta) {
  return CostEvaluator{space, target_unitary(theta, 0.0, 0.0)}(params);
}

std::string_view family_name(SolutionFamily f) {
  return f == SolutionFamily::SmallIndex ? "small" : "large";
}

SolutionFamily classify_family(double max_index) {
  return max_index > kFamilyIndexThreshold ? SolutionFamily::LargeIndex : SolutionFamily::SmallIndex;
}

namespace {

// Feasible beats infeasible; then larger P among feasible points and
// larger F among infeasible ones.
bool ranks_above(const GateMetrics& a, const GateMetrics& b) {
  const bool fa = a.fidelity >= kFidelityFloor + 0.5 * kRefineMargin;
  const bool fb = b.fidelity >= kFidelityFloor + 0.5 * kRefineMargin;
  if (fa != fb) return fa;
  return fa ? a.success > b.success : a.fidelity > b.fidelity;
}

struct Candidate {
  std::vector<double> params;
  std::vector<double> history;
  bool refined = false;
};

// Augmented-Lagrangian wrapper around the local refiner for
//   minimize -P  subject to  F >= floor + margin.
// The banded penalty is flat within bands and has jumps at band edges,
// which stalls a quasi-Newton step; the smooth surrogate does not.
std::vector<double> refine_constrained(const CostEvaluator& eval, const SearchSpace& space,
                                       std::vector<double> start, const RefineSettings& rs) {
  const double goal = kFidelityFloor + kRefineMargin;
  double mu = 0.0;
  double rho = kInitialPenalty;
  std::vector<double> x = std::move(start);
  std::vector<double> best = x;
  GateMetrics best_metrics{0.0, 0.0};
  try {
    best_metrics = eval.metrics(x);
  } catch (const std::exception&) {
  }
  double last_violation = kInf;

  for (int round = 0; round < kAugmentedRounds; ++round) {
    const CostFn lagrangian = [&](std::span<const double> p) {
      GateMetrics m;
      try {
        m = eval.metrics(p);
      } catch (const TruncationError&) {
        return kInf;
      } catch (const UndefinedMetricError&) {
        return kInf;
      }
      const double shifted = std::max(0.0, goal - m.fidelity + mu / rho);
      return -m.success + 0.5 * rho * shifted * shifted;
    };
    x = local_refine(lagrangian, x, space.bounds(), rs).x;

    GateMetrics m;
    try {
      m = eval.metrics(x);
    } catch (const std::exception&) {
      break;
    }
    if (ranks_above(m, best_metrics)) {
      best_metrics = m;
      best = x;
    }
    const double violation = goal - m.fidelity;
    mu = std::max(0.0, mu + rho * violation);
    if (violation > 0.0 && violation > 0.25 * last_violation) rho *= 10.0;
    if (violation <= 0.0 && round > 0 && mu == 0.0) break;
    last_violation = std::max(violation, 0.0);
  }
  return best;
}

struct Scored {
  GateMetrics metrics;
  double cost = kInf;
  bool feasible = false;
  bool valid = false;
};

// From-scratch evaluation with the default window and quadrature.
Scored score(const SearchSpace& space, std::span<const double> params, const Matrix2c& target, int half_width,
             ComputationalGate* block) {
  Scored s;
  try {
    const QfpConfig cfg = space.config(params);
    ComputationalGate w;
    if (half_width > 0) {
      const auto window = ModeWindow::symmetric(half_width);
      w = computational_block(cfg, window, default_max_order(window));
    } else {
      w = computational_block(cfg);
    }
    s.metrics = evaluate_gate(w, target);
    if (block) *block = w;
  } catch (const TruncationError&) {
    return s;
  } catch (const UndefinedMetricError&) {
    return s;
  }
  s.valid = true;
  s.cost = penalty_cost(s.metrics);
  s.feasible = s.metrics.fidelity >= kFidelityFloor - kFeasibilitySlack;
  return s;
}

bool better(const Scored& a, const Scored& b) {
  if (a.feasible != b.feasible) return a.feasible;
  // Ties go to the earlier candidate, so the undriven identity wins at theta = 0.
  if (a.feasible) return a.metrics.success > b.metrics.success + 1e-12;
  return a.cost < b.cost;
}

}  // namespace

SynthesisResult synthesize(double theta, const Scenario& scenario, const SynthesisSettings& settings,
                           const FrequencyGrid& grid) {
  if (!(theta >= 0.0 && theta <= std::numbers::pi)) throw std::invalid_argument("synthesize: theta outside [0, pi]");
  if (settings.restarts < 1) throw std::invalid_argument("synthesize: restarts must be >= 1");
  settings.pso.validate();

  const SearchSpace space(scenario, grid);
  for (const auto& w : settings.warm_starts) {
    if (w.size() != space.dimension()) throw std::invalid_argument("synthesize: warm start has wrong length");
  }
  const Matrix2c target = target_unitary(theta, 0.0, 0.0);
  const CostEvaluator eval{space, target, settings.search_samples};

  Candidate best_candidate{space.zero_params(), {}, false};
  Scored best_score = score(space, best_candidate.params, target, settings.report_half_width, nullptr);
  best_candidate.history = {best_score.cost};

  const auto consider = [&](Candidate c) {
    if (settings.refine) {
      auto polished = refine_constrained(eval, space, c.params, settings.refine_settings);
      if (polished != c.params) {
        const double polished_cost = eval(polished);
        if (c.history.empty() || polished_cost < c.history.back()) c.history.push_back(polished_cost);
        c.params = std::move(polished);
        c.refined = true;
      }
    }
    const Scored s = score(space, c.params, target, settings.report_half_width, nullptr);
    if (better(s, best_score)) {
      best_score = s;
      best_candidate = std::move(c);
    }
  };

  std::vector<std::vector<double>> starts = settings.warm_starts;
  if (settings.nested && scenario.kind != ScenarioKind::ThreeElemOneTone) {
    Scenario base = scenario;
    base.kind = ScenarioKind::ThreeElemOneTone;
    SynthesisSettings inner = settings;
    inner.warm_starts.clear();
    try {
      const auto r = synthesize(theta, base, inner, grid);
      starts.push_back(embed_params(SearchSpace(base, grid), r.report.params, space));
    } catch (const SynthesisFailure& f) {
      starts.push_back(embed_params(SearchSpace(base, grid), f.best().report.params, space));
    }
  }
  for (auto& w : starts) {
    space.bounds().project(w);
    consider(Candidate{w, {eval(w)}, false});
  }

  for (int r = 0; r < settings.restarts; ++r) {
    PsoSettings ps = settings.pso;
    ps.seed = mix_seed(settings.pso.seed, static_cast<std::uint64_t>(r));
    const PsoResult swarm = pso_minimize(eval, space.bounds(), ps);
    consider(Candidate{swarm.best, swarm.history, false});
  }

  SynthesisResult result;
  ComputationalGate block;
  best_score = score(space, best_candidate.params, target, settings.report_half_width, &block);
  result.config = space.config(best_candidate.params);
  result.cost_history = std::move(best_candidate.history);
  result.refined = best_candidate.refined;
  result.max_index = space.max_eom_index(best_candidate.params);
  result.family = classify_family(result.max_index);
  result.feasible = best_score.feasible;

  GateReport& rep = result.report;
  rep.theta = theta;
  rep.w = block.w;
  rep.success = best_score.metrics.success;
  rep.fidelity = best_score.metrics.fidelity;
  rep.params = std::move(best_candidate.params);
  rep.scenario = scenario.name();
  rep.seed = settings.pso.seed;
  rep.family = result.family;
  rep.refined = result.refined;

  if (!result.feasible) {
    throw SynthesisFailure("synthesize: no restart reached F_W >= 0.9999 (best F_W = " +
                               std::to_string(rep.fidelity) + ")",
                           std::move(result));
  }
  return result;
}

std::vector<SweepRow> sweep(std::vector<double> thetas, const Scenario& scenario, const SynthesisSettings& settings,
                            const FrequencyGrid& grid) {
  std::sort(thetas.begin(), thetas.end());
  std::vector<SweepRow> rows;
  rows.reserve(thetas.size());
  for (double theta : thetas) {
    SweepRow row;
    row.theta = theta;
    try {
      row.result = synthesize(theta, scenario, settings, grid);
      row.feasible = true;
    } catch (const SynthesisFailure& f) {
      row.result = f.best();
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace qfp
