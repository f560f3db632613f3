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

// End-to-end acceptance checks. Prints one PASS/FAIL line per criterion and
// exits nonzero if any fails. Pass a list of criterion numbers to run a
// subset, e.g. `acceptance 1 2 3`.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <numbers>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "qfp/beamsplitter.hpp"
#include "qfp/multiport.hpp"
#include "qfp/pipelines.hpp"
#include "qfp/synthesis.hpp"
#include "qfp/tomography.hpp"

using namespace qfp;
constexpr double kPi = std::numbers::pi;

namespace {

struct Verdict {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* f, double a) {
  char buf[128];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

std::string fmt(const char* f, double a, double b) {
  char buf[160];
  std::snprintf(buf, sizeof buf, f, a, b);
  return buf;
}

Verdict hadamard_anchor() {
  const Matrix2c h = target_unitary(kPi / 2, 0, kPi);
  const auto a = evaluate_gate(bs_matrix({0.829, kPi}), h);
  const auto b = evaluate_gate(bs_matrix({0.8169, kPi}), h);
  const bool ok = a.fidelity >= 0.999999 && std::abs(a.success - 0.9746) <= 5e-4 &&
                  std::abs(b.fidelity - 0.9999) <= 5e-5 && std::abs(b.success - 0.9760) <= 5e-4;
  char buf[256];
  std::snprintf(buf, sizeof buf, "0.829: F=%.8f P=%.5f; 0.8169: F=%.6f P=%.5f", a.fidelity, a.success, b.fidelity,
                b.success);
  return {ok, buf};
}

Verdict analytic_numeric() {
  double worst = 0.0;
  for (double x : {0.5, 0.8169, 0.829, 1.2}) {
    for (double alpha : linspace(0.0, 2 * kPi, 21)) {
      const BeamsplitterSpec spec(x, alpha);
      worst = std::max(worst, (computational_block(bs_config(spec)).w - bs_matrix(spec).w).cwiseAbs().maxCoeff());
    }
  }
  return {worst <= 1e-8, fmt("max |analytic - cascade| = %.3e over 84 blocks", worst)};
}

Verdict jacobi_anger() {
  double worst = 0.0;
  for (double x : {0.1, 0.829, 1.4347, 3.9}) {
    const auto c = eom_coefficients(RfWaveform::single_tone(x), {}, 24);
    for (int j = -12; j <= 12; ++j) worst = std::max(worst, std::abs(std::abs(c(j)) - std::abs(oracle::bessel_j(j, x))));
  }
  return {worst <= 1e-10, fmt("max ||c_j| - |J_j|| = %.3e", worst)};
}

Verdict reconfigure_symmetry() {
  std::mt19937_64 rng(20260101);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  double worst = 0.0;
  for (int t = 0; t < 100; ++t) {
    std::vector<double> phases(8);
    for (double& p : phases) p = 2 * kPi * u(rng);
    const QfpConfig cfg({}, {RfWaveform::single_tone(4.0 * u(rng), u(rng)), ShaperPhases(-3, phases),
                             RfWaveform::single_tone(4.0 * u(rng), u(rng))});
    const double phi = 2 * kPi * u(rng);
    const double lambda = 2 * kPi * u(rng);
    const Matrix2c w = computational_block(cfg).w;
    const Matrix2c wt = computational_block(reconfigure(cfg, phi, lambda)).w;
    for (int m = 0; m < 2; ++m) {
      for (int n = 0; n < 2; ++n) worst = std::max(worst, std::abs(wt(m, n) - std::polar(1.0, m * phi + n * lambda) * w(m, n)));
    }
  }
  return {worst <= 1e-9, fmt("max |W~ - e^{i(m phi + n lambda)} W| = %.3e over 100 configs", worst)};
}

Verdict single_tone_sweep() {
  const auto thetas = uniform_thetas(15);
  const auto rows = sweep(thetas, Scenario::parse("3x1"));
  bool ok = true;
  double min_f = 1.0;
  for (const auto& r : rows) {
    min_f = std::min(min_f, r.result.report.fidelity);
    ok = ok && r.feasible && r.result.report.fidelity >= kFidelityFloor;
    std::printf("  3x1 theta=%.4fpi P=%.6f F=%.8f index=%.3f family=%s\n", r.theta / kPi, r.result.report.success,
                r.result.report.fidelity, r.result.max_index, std::string(family_name(r.result.family)).c_str());
  }
  const double p0 = rows[0].result.report.success;
  const double p_half = rows[7].result.report.success;
  ok = ok && p0 >= 0.999 && p_half >= 0.9746;

  // Family switch: small before, large after, with the switch between two
  // consecutive samples inside [0.70 pi, 0.82 pi].
  std::size_t first_large = rows.size();
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].result.family == SolutionFamily::LargeIndex) {
      first_large = i;
      break;
    }
  }
  bool switch_ok = first_large > 0 && first_large < rows.size();
  for (std::size_t i = first_large; switch_ok && i < rows.size(); ++i) {
    switch_ok = rows[i].result.family == SolutionFamily::LargeIndex;
  }
  double lo = 0.0, hi = 0.0;
  if (switch_ok) {
    lo = rows[first_large - 1].theta / kPi;
    hi = rows[first_large].theta / kPi;
    switch_ok = lo >= 0.70 - 1e-12 && hi <= 0.82 + 1e-12;
  }
  ok = ok && switch_ok;
  char buf[256];
  std::snprintf(buf, sizeof buf, "min F=%.8f P(0)=%.6f P(pi/2)=%.6f family switch between %.4fpi and %.4fpi", min_f,
                p0, p_half, lo, hi);
  return {ok, buf};
}

Verdict extended_layouts() {
  bool ok = true;
  std::string detail;
  for (const auto& [name, floor] : std::vector<std::pair<std::string, double>>{{"3x2", 0.95}, {"5x1", 0.999}}) {
    for (double theta : {kPi / 4, kPi / 2, 3 * kPi / 4, kPi}) {
      const Scenario sc = Scenario::parse(name);
      SynthesisSettings s;
      double p = 0.0;
      double f = 0.0;
      bool reached = false;
      int used = 0;
      for (int restarts : {s.restarts, 4 * s.restarts}) {
        s.restarts = restarts;
        used = restarts;
        try {
          const auto r = synthesize(theta, sc, s);
          p = r.report.success;
          f = r.report.fidelity;
        } catch (const SynthesisFailure& e) {
          p = e.best().report.success;
          f = e.best().report.fidelity;
        }
        reached = f >= kFidelityFloor && p > floor;
        if (reached) break;
      }
      std::printf("  %s theta=%.2fpi P=%.6f F=%.8f restarts=%d %s\n", name.c_str(), theta / kPi, p, f, used,
                  reached ? "ok" : "below target");
      std::fflush(stdout);
      if (!reached) {
        ok = false;
        if (!detail.empty()) detail += "; ";
        detail += name + fmt(" theta=%.2fpi P=%.6f below target", theta / kPi, p);
      }
    }
  }
  if (ok) detail = "3x2 all P > 0.95, 5x1 all P > 0.999 at theta in {pi/4, pi/2, 3pi/4, pi}";
  return {ok, detail};
}

Verdict analyzer() {
  const double h = analyzer_root();
  const double retained = std::pow(oracle::bessel_j(0, h), 2) + std::pow(oracle::bessel_j(1, h), 2);
  const bool ok = h >= 1.433 && h <= 1.436 && std::abs(retained - 0.60) <= 0.01;
  return {ok, fmt("root=%.6f retained=%.4f", h, retained)};
}

Verdict tomography_round_trip() {
  TomographyOptions opts;
  opts.budget = 1e5;
  opts.samples = 1024;
  const auto rows = rotate_tomo(fig3_preset(), Scenario::parse("3x1"), SynthesisSettings{}, opts);
  bool ok = rows.size() == 41;
  double worst_rot = 1.0;
  for (const auto& r : rows) {
    ok = ok && r.synthesized && r.tomo.sampler_ok && r.tomo.fidelity.mean >= 0.98;
    worst_rot = std::min(worst_rot, r.synthesized ? r.tomo.fidelity.mean : 0.0);
  }
  const auto bs = bs_table(kBeamsplitterIndex, 21, 0, &opts);
  double worst_bs = 1.0;
  for (const auto& r : bs) {
    ok = ok && r.tomo && r.tomo->sampler_ok && r.tomo->fidelity.mean >= 0.98;
    worst_bs = std::min(worst_bs, r.tomo ? r.tomo->fidelity.mean : 0.0);
  }
  return {ok, fmt("lowest mean fidelity: 41 rotations %.5f, 21 beamsplitter states %.5f", worst_rot, worst_bs)};
}

Verdict property_suite() {
  std::string failures;
  const auto require = [&](bool cond, const std::string& what) {
    if (!cond) failures += what + "; ";
  };

  // Prior recovery.
  const auto prior = sample_posterior(TomographyDataset{}, 4096, {}, 101);
  double sum = 0.0, sum_sq = 0.0;
  for (const auto& s : prior.samples) {
    sum += s.purity();
    sum_sq += s.purity() * s.purity();
  }
  const double n = static_cast<double>(prior.samples.size());
  const double mean = sum / n;
  const double se = std::sqrt((sum_sq / n - mean * mean) / n);
  require(std::abs(mean - 2.0 / 3.0) <= 3.0 * se, fmt("prior purity %.5f vs 2/3 (se %.5f)", mean, se));

  // Posterior consistency at 10^6 counts per setting.
  std::mt19937_64 rng(7);
  std::normal_distribution<double> g;
  const AnalyzerModel model;
  double worst_td = 0.0;
  for (int t = 0; t < 3; ++t) {
    const auto truth = DensityMatrix::pure({cplx(g(rng), g(rng)), cplx(g(rng), g(rng))});
    const auto post = sample_posterior(simulate_counts(truth, model, 1e6, 40 + t), 1024, {}, 50 + t);
    worst_td = std::max(worst_td, posterior_mean(post.samples).trace_distance(truth));
  }
  require(worst_td <= 0.01, fmt("consistency trace distance %.4f", worst_td));

  // Density-matrix invariants over random parameter draws.
  std::vector<double> x(kDensityParams);
  double min_eig = 1.0, trace_err = 0.0;
  for (int t = 0; t < 10000; ++t) {
    for (double& v : x) v = g(rng);
    const auto rho = density_from_params(x);
    min_eig = std::min(min_eig, rho.min_eigenvalue());
    trace_err = std::max(trace_err, std::abs(rho.matrix().trace() - 1.0));
    const Matrix2c m = rho.matrix();
    require((m - m.adjoint()).cwiseAbs().maxCoeff() < 1e-12, "hermiticity");
  }
  require(min_eig >= -1e-12 && trace_err < 1e-12, fmt("density min eigenvalue %.3e trace error %.3e", min_eig, trace_err));

  // Interior unitarity of a wide-window cascade.
  const auto wide = ModeWindow::symmetric(40);
  const double defect = unitarity_defect(cascade(bs_config({0.829, 1.3}), wide, default_max_order(wide)), 8);
  require(defect <= 1e-10, fmt("unitarity defect %.3e", defect));
  double worst_sv = 0.0;
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int t = 0; t < 100; ++t) {
    const QfpConfig cfg({}, {RfWaveform::single_tone(4 * u(rng), u(rng)), ShaperPhases(-1, {u(rng) * 6, 0.0, u(rng) * 6}),
                             RfWaveform::single_tone(4 * u(rng), u(rng))});
    worst_sv = std::max(worst_sv, computational_block(cfg).max_singular_value());
  }
  require(worst_sv <= 1.0 + 1e-9, fmt("largest singular value %.12f", worst_sv));

  // Determinism.
  SynthesisSettings quick;
  quick.restarts = 1;
  quick.pso.iterations = 100;
  quick.pso.particles = 20;
  const auto a = synthesize(0.3 * kPi, Scenario::parse("3x1"), quick);
  const auto b = synthesize(0.3 * kPi, Scenario::parse("3x1"), quick);
  require(a.report.params == b.report.params && a.cost_history == b.cost_history, "synthesis determinism");
  const auto rho = DensityMatrix::pure({cplx(0.8, 0), cplx(0, 0.6)});
  const auto d1 = simulate_counts(rho, model, 1e5, 3);
  const auto d2 = simulate_counts(rho, model, 1e5, 3);
  require(d1.counts == d2.counts, "count determinism");
  const auto p1 = sample_posterior(d1, 128, {}, 4);
  const auto p2 = sample_posterior(d2, 128, {}, 4);
  bool same = p1.samples.size() == p2.samples.size();
  for (std::size_t i = 0; same && i < p1.samples.size(); ++i) same = p1.samples[i].matrix() == p2.samples[i].matrix();
  require(same, "posterior determinism");

  char buf[256];
  std::snprintf(buf, sizeof buf, "prior purity %.4f (target 0.6667, 3se=%.4f); consistency td %.4f; defect %.1e",
                mean, 3 * se, worst_td, defect);
  return {failures.empty(), failures.empty() ? std::string(buf) : failures};
}

}  // namespace

int main(int argc, char** argv) {
  const std::vector<std::pair<int, std::function<Verdict()>>> criteria{
      {1, hadamard_anchor},   {2, analytic_numeric},       {3, jacobi_anger},
      {4, reconfigure_symmetry}, {5, single_tone_sweep},   {6, extended_layouts},
      {7, analyzer},          {8, tomography_round_trip},  {9, property_suite},
  };
  std::set<int> wanted;
  for (int i = 1; i < argc; ++i) wanted.insert(std::atoi(argv[i]));

  int failed = 0;
  for (const auto& [id, check] : criteria) {
    if (!wanted.empty() && !wanted.count(id)) continue;
    const auto start = std::chrono::steady_clock::now();
    const Verdict v = check();
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("%s criterion %d: %s (%.1f s)\n", v.pass ? "PASS" : "FAIL", id, v.detail.c_str(), secs);
    std::fflush(stdout);
    if (!v.pass) ++failed;
  }
  return failed == 0 ? 0 : 1;
}
