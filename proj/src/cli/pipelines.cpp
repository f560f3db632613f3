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

#include "qfp/pipelines.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "qfp/error.hpp"
#include "qfp/serialization.hpp"

namespace qfp {
namespace {

constexpr double kPi = std::numbers::pi;

ComputationalGate block_for(const QfpConfig& cfg, int half_width) {
  if (half_width <= 0) return computational_block(cfg);
  const auto window = ModeWindow::symmetric(half_width);
  return computational_block(cfg, window, default_max_order(window));
}

std::string params_field(const std::vector<double>& params) {
  std::string s = "\"[";
  for (std::size_t i = 0; i < params.size(); ++i) {
    if (i) s += ',';
    s += format_double(params[i]);
  }
  return s + "]\"";
}

}  // namespace

QubitState rotated_state(double theta, double phi) {
  return {std::cos(theta / 2.0), std::polar(std::sin(theta / 2.0), phi)};
}

SynthRun reconfigured_run(const SynthesisResult& base, double phi, double lambda, int report_half_width) {
  SynthRun run{base, reconfigure(base.config, phi, lambda), base.report};
  const auto w = block_for(run.config, report_half_width);
  const auto m = evaluate_gate(w, target_unitary(base.report.theta, phi, lambda));
  run.report.phi = phi;
  run.report.lambda = lambda;
  run.report.w = w.w;
  run.report.success = m.success;
  run.report.fidelity = m.fidelity;
  return run;
}

SynthRun run_synth(double theta, double phi, double lambda, const Scenario& scenario,
                   const SynthesisSettings& settings) {
  // Validate the full target before spending time on the search.
  (void)TargetUnitary(theta, phi, lambda);
  return reconfigured_run(synthesize(theta, scenario, settings), phi, lambda, settings.report_half_width);
}

std::vector<double> uniform_thetas(int count) {
  if (count < 2) throw std::invalid_argument("uniform_thetas: need at least two values");
  auto v = linspace(0.0, kPi, count);
  v.back() = kPi;
  return v;
}

std::string sweep_csv(const std::vector<SweepRow>& rows) {
  std::ostringstream out;
  out << "theta,success,fidelity,family,params_json,status\n";
  for (const auto& r : rows) {
    const auto& rep = r.result.report;
    out << format_double(r.theta) << ',' << format_double(rep.success) << ',' << format_double(rep.fidelity) << ','
        << family_name(r.result.family) << ',' << params_field(rep.params) << ','
        << (r.feasible ? "ok" : "infeasible") << '\n';
  }
  return out.str();
}

TomographyResult tomography_of(const QubitState& truth, const QubitState& ideal, const TomographyOptions& opts) {
  TomographyResult out;
  const auto rho = DensityMatrix::pure(truth);
  const auto data = simulate_counts(rho, AnalyzerModel(), opts.budget, opts.seed, opts.dark_rate);
  try {
    const auto post = sample_posterior(data, opts.samples, opts.chain, mix_seed(opts.seed, 0x7A));
    out.fidelity = fidelity_stats(post.samples, ideal);
    out.acceptance_rate = post.acceptance_rate;
  } catch (const SamplerDiagnosticError& e) {
    out.sampler_ok = false;
    out.acceptance_rate = e.acceptance_rate();
    out.message = e.what();
  }
  return out;
}

std::vector<BsRow> bs_table(double theta_mod, int n_alpha, int half_width, const TomographyOptions* tomo) {
  if (n_alpha < 2) throw std::invalid_argument("bs_table: need at least two alpha values");
  std::vector<BsRow> rows;
  const auto alphas = linspace(0.0, 2.0 * kPi, n_alpha);
  for (std::size_t i = 0; i < alphas.size(); ++i) {
    const BeamsplitterSpec spec(theta_mod, alphas[i]);
    const auto analytic = bs_matrix(spec);
    const auto numeric = block_for(bs_config(spec), half_width);
    const auto rt = reflectivity_transmissivity(spec);
    const auto bloch = bloch_angles({analytic.w(0, 0), analytic.w(1, 0)});

    BsRow row;
    row.alpha = alphas[i];
    row.reflectivity = rt.reflectivity;
    row.transmissivity = rt.transmissivity;
    row.theta = bloch.theta;
    row.phi = bloch.phi;
    row.cascade_max_dev = (analytic.w - numeric.w).cwiseAbs().maxCoeff();
    if (tomo) {
      TomographyOptions o = *tomo;
      o.seed = mix_seed(tomo->seed, i);
      const QubitState truth{numeric.w(0, 0), numeric.w(1, 0)};
      const QubitState ideal{analytic.w(0, 0), analytic.w(1, 0)};
      row.tomo = tomography_of(truth.normalized(), ideal.normalized(), o);
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

std::string bs_csv(const std::vector<BsRow>& rows) {
  const bool tomo = !rows.empty() && rows.front().tomo.has_value();
  std::ostringstream out;
  out << "alpha,R,T,theta,phi,cascade_max_dev";
  if (tomo) out << ",fidelity_mean,fidelity_std,status";
  out << '\n';
  for (const auto& r : rows) {
    out << format_double(r.alpha) << ',' << format_double(r.reflectivity) << ',' << format_double(r.transmissivity)
        << ',' << format_double(r.theta) << ',' << format_double(r.phi) << ',' << format_double(r.cascade_max_dev);
    if (tomo) {
      out << ',' << format_double(r.tomo->fidelity.mean) << ',' << format_double(r.tomo->fidelity.stddev) << ','
          << (r.tomo->sampler_ok ? "ok" : "sampler");
    }
    out << '\n';
  }
  return out.str();
}

std::vector<GatePoint> fig3_preset() {
  const int per_theta[] = {1, 4, 4, 4, 5, 5, 5, 4, 4, 4, 1};
  std::vector<GatePoint> gates;
  for (int k = 0; k <= 10; ++k) {
    const double theta = k == 10 ? kPi : k * kPi / 10.0;
    for (int j = 0; j < per_theta[k]; ++j) gates.push_back({theta, 2.0 * kPi * j / per_theta[k]});
  }
  return gates;
}

std::vector<RotateRow> rotate_tomo(const std::vector<GatePoint>& gates, const Scenario& scenario,
                                   const SynthesisSettings& settings, const TomographyOptions& opts) {
  std::map<double, std::optional<SynthesisResult>> cache;
  for (const auto& g : gates) {
    if (cache.count(g.theta)) continue;
    try {
      cache[g.theta] = synthesize(g.theta, scenario, settings);
    } catch (const SynthesisFailure&) {
      cache[g.theta] = std::nullopt;
    }
  }

  std::vector<RotateRow> rows;
  for (std::size_t k = 0; k < gates.size(); ++k) {
    const auto& g = gates[k];
    RotateRow row;
    row.gate = g;
    const auto& base = cache.at(g.theta);
    if (!base) {
      row.synthesized = false;
      rows.push_back(row);
      continue;
    }
    const auto run = reconfigured_run(*base, g.phi, 0.0, settings.report_half_width);
    row.success = run.report.success;
    row.gate_fidelity = run.report.fidelity;
    const QubitState out = apply_gate(run.report.w, QubitState{1.0, 0.0}).normalized();
    TomographyOptions o = opts;
    o.seed = mix_seed(opts.seed, k);
    row.tomo = tomography_of(out, rotated_state(g.theta, g.phi), o);
    rows.push_back(row);
  }
  return rows;
}

std::string rotate_csv(const std::vector<RotateRow>& rows) {
  std::ostringstream out;
  out << "theta,phi,success,gate_fidelity,fidelity_mean,fidelity_std,acceptance,status\n";
  for (const auto& r : rows) {
    const char* status = !r.synthesized ? "infeasible" : (r.tomo.sampler_ok ? "ok" : "sampler");
    out << format_double(r.gate.theta) << ',' << format_double(r.gate.phi) << ',' << format_double(r.success) << ','
        << format_double(r.gate_fidelity) << ',' << format_double(r.tomo.fidelity.mean) << ','
        << format_double(r.tomo.fidelity.stddev) << ',' << format_double(r.tomo.acceptance_rate) << ',' << status
        << '\n';
  }
  return out.str();
}

}  // namespace qfp
