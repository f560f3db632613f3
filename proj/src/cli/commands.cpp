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

#include <chrono>
#include <cmath>
#include <filesystem>
#include <functional>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "qfp/cli.hpp"
#include "qfp/error.hpp"
#include "qfp/pipelines.hpp"
#include "qfp/serialization.hpp"

namespace qfp {
namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct Globals {
  std::uint64_t seed = 1;
  std::string out = ".";
  int window = 0;
  double budget = 1e5;
};

struct SynthOptions {
  std::string scenario = "3x1";
  int restarts = 8;
  int particles = 60;
  int iterations = 800;
  std::optional<int> shaper_lo;
  std::optional<int> shaper_hi;
  double index_bound = 4.0;

  Scenario make_scenario() const {
    const ScenarioKind kind = Scenario::parse(scenario).kind;
    const auto [lo, hi] = Scenario::default_shaper_range(kind);
    return Scenario(kind, index_bound, shaper_lo.value_or(lo), shaper_hi.value_or(hi));
  }
  SynthesisSettings make_settings(const Globals& g) const {
    SynthesisSettings s;
    s.restarts = restarts;
    s.pso.particles = particles;
    s.pso.iterations = iterations;
    s.pso.seed = g.seed;
    s.report_half_width = g.window;
    return s;
  }
};

void add_synth_options(CLI::App* sub, SynthOptions& o) {
  sub->add_option("--scenario", o.scenario, "QFP layout: 3x1, 3x2 or 5x1")
      ->check(CLI::IsMember({"3x1", "3x2", "5x1"}))
      ->capture_default_str();
  sub->add_option("--restarts", o.restarts, "Independent PSO + refinement passes")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  sub->add_option("--particles", o.particles, "Swarm size")->check(CLI::Range(2, 100000))->capture_default_str();
  sub->add_option("--iterations", o.iterations, "PSO iterations per pass")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  sub->add_option("--index-bound", o.index_bound, "Largest modulation index per harmonic (rad)")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  sub->add_option("--shaper-lo", o.shaper_lo, "Lowest independently searched shaper bin (default -5, or -10 for 3x2)");
  sub->add_option("--shaper-hi", o.shaper_hi, "Highest independently searched shaper bin (default 6, or 11 for 3x2)");
}

TomographyOptions tomo_options(const Globals& g, int samples, double dark_rate) {
  TomographyOptions o;
  o.budget = g.budget;
  o.samples = samples;
  o.dark_rate = dark_rate;
  o.seed = g.seed;
  return o;
}

json option_values(const CLI::App* app) {
  json j = json::object();
  for (const CLI::Option* opt : app->get_options()) {
    if (opt == app->get_help_ptr()) continue;
    const std::string name = opt->get_name();
    const bool flag = opt->get_expected_max() == 0;
    if (opt->count() > 0) {
      const auto& r = opt->results();
      j[name] = r.size() == 1 ? json(r.front()) : json(r);
    } else {
      j[name] = flag ? std::string("false") : opt->get_default_str();
    }
  }
  return j;
}

json matrix_json(const Matrix2c& m) {
  json rows = json::array();
  for (int r = 0; r < 2; ++r) {
    json row = json::array();
    for (int c = 0; c < 2; ++c) row.push_back({m(r, c).real(), m(r, c).imag()});
    rows.push_back(row);
  }
  return rows;
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

// Accepts "theta:phi" pairs separated by commas.
std::vector<GatePoint> parse_gates(const std::string& spec) {
  std::vector<GatePoint> gates;
  std::stringstream ss(spec);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto colon = item.find(':');
    if (colon == std::string::npos) throw CLI::ValidationError("--gates", "expected theta:phi, got '" + item + "'");
    try {
      gates.push_back({std::stod(item.substr(0, colon)), std::stod(item.substr(colon + 1))});
    } catch (const std::exception&) {
      throw CLI::ValidationError("--gates", "bad number in '" + item + "'");
    }
  }
  if (gates.empty()) throw CLI::ValidationError("--gates", "no gates given");
  return gates;
}

class Outputs {
 public:
  explicit Outputs(fs::path dir) : dir_(std::move(dir)) {}
  void write(const std::string& name, const std::string& contents) {
    write_file(dir_ / name, contents);
    names_.push_back(name);
  }
  const std::vector<std::string>& names() const { return names_; }
  const fs::path& dir() const { return dir_; }

 private:
  fs::path dir_;
  std::vector<std::string> names_;
};

std::vector<std::string> strip_out(const std::vector<std::string>& args) {
  std::vector<std::string> kept;
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--out") {
      ++i;
      continue;
    }
    if (args[i].rfind("--out=", 0) == 0) continue;
    kept.push_back(args[i]);
  }
  return kept;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Frequency-bin qubit gate synthesis, beamsplitter and tomography toolkit", "qfp"};
  app.require_subcommand(1);
  Globals g;
  app.add_option("--seed", g.seed, "Seed for every random stream")->capture_default_str();
  app.add_option("--out", g.out, "Output directory")->capture_default_str();
  app.add_option("--window", g.window, "Simulation half-width in bins for reported metrics (0 = automatic)")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  app.add_option("--budget", g.budget, "Photon counts per tomography setting")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();

  // synth
  auto* synth = app.add_subcommand("synth", "Synthesize U(theta, phi, lambda)");
  double s_theta = 0.0, s_phi = 0.0, s_lambda = 0.0;
  SynthOptions s_opts;
  synth->add_option("--theta", s_theta, "Rotation angle in [0, pi]")->required();
  synth->add_option("--phi", s_phi, "Phase in [0, 2 pi)")->capture_default_str();
  synth->add_option("--lambda", s_lambda, "Phase in [0, 2 pi)")->capture_default_str();
  add_synth_options(synth, s_opts);

  // sweep
  auto* sweep_cmd = app.add_subcommand("sweep", "Optimized success probability of U(theta, 0, 0) versus theta");
  int n_theta = 15;
  SynthOptions w_opts;
  sweep_cmd->add_option("--n-theta", n_theta, "Number of theta values on [0, pi]")
      ->check(CLI::Range(2, 100000))
      ->capture_default_str();
  add_synth_options(sweep_cmd, w_opts);

  // reconfig
  auto* reconfig = app.add_subcommand("reconfig", "Retarget a U(theta, 0, 0) configuration to (phi, lambda)");
  std::string r_config;
  double r_phi = 0.0, r_lambda = 0.0;
  reconfig->add_option("--config", r_config, "Configuration JSON")->required();
  reconfig->add_option("--phi", r_phi, "Phase in [0, 2 pi)")->capture_default_str();
  reconfig->add_option("--lambda", r_lambda, "Phase in [0, 2 pi)")->capture_default_str();

  // bs
  auto* bs = app.add_subcommand("bs", "Tunable beamsplitter table");
  double b_theta = kBeamsplitterIndex;
  int b_n = 21;
  bool b_tomo = false;
  int b_samples = kDefaultPosteriorSamples;
  bs->add_option("--theta-mod", b_theta, "Modulation index of both EOMs")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  bs->add_option("--n-alpha", b_n, "Number of alpha values on [0, 2 pi]")
      ->check(CLI::Range(2, 100000))
      ->capture_default_str();
  bs->add_flag("--tomo", b_tomo, "Also reconstruct each output state");
  bs->add_option("--samples", b_samples, "Posterior samples per state")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();

  // tomo-sim
  auto* tsim = app.add_subcommand("tomo-sim", "Simulate a tomography dataset");
  double t_theta = 0.0, t_phi = 0.0, t_dark = 0.0;
  std::string t_config;
  bool t_analytic = false;
  tsim->add_option("--theta", t_theta, "Bloch polar angle of the state")->capture_default_str();
  tsim->add_option("--phi", t_phi, "Bloch azimuth of the state")->capture_default_str();
  tsim->add_option("--config", t_config, "Use the normalized output W|0> of this configuration instead");
  tsim->add_option("--dark-rate", t_dark, "Mean dark counts per outcome")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  tsim->add_flag("--analytic", t_analytic, "Expected counts instead of Poisson draws");

  // tomo-fit
  auto* tfit = app.add_subcommand("tomo-fit", "Bayesian mean estimate from a dataset");
  std::string f_data;
  int f_samples = kDefaultPosteriorSamples;
  std::vector<double> f_target;
  ChainSettings f_chain;
  tfit->add_option("--dataset", f_data, "Dataset JSON")->required();
  tfit->add_option("--samples", f_samples, "Posterior samples")->check(CLI::PositiveNumber)->capture_default_str();
  tfit->add_option("--target", f_target, "Bloch angles theta phi of the ideal state")->expected(2);
  tfit->add_option("--burn-in", f_chain.burn_in, "Adaptive burn-in steps")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  tfit->add_option("--thinning", f_chain.thinning, "Steps between kept samples")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  tfit->add_option("--step", f_chain.initial_step, "Initial pCN step in (0, 1]")
      ->check(CLI::Range(1e-9, 1.0))
      ->capture_default_str();

  // rotate-tomo
  auto* rot = app.add_subcommand("rotate-tomo", "Rotate |0> by synthesized gates and reconstruct the outputs");
  std::string o_preset;
  std::string o_gates;
  int o_samples = kDefaultPosteriorSamples;
  SynthOptions o_opts;
  auto* preset_opt = rot->add_option("--preset", o_preset, "Named gate list")->check(CLI::IsMember({"fig3"}));
  rot->add_option("--gates", o_gates, "theta:phi pairs separated by commas")->excludes(preset_opt);
  rot->add_option("--samples", o_samples, "Posterior samples per gate")->check(CLI::PositiveNumber)->capture_default_str();
  add_synth_options(rot, o_opts);

  // replay
  auto* replay = app.add_subcommand("replay", "Re-run a manifest");
  std::string m_path;
  bool m_verify = false;
  replay->add_option("manifest", m_path, "Manifest JSON")->required();
  replay->add_flag("--verify", m_verify, "Compare regenerated outputs with the recorded ones");

  for (auto* sub : app.get_subcommands({})) sub->fallthrough();

  std::vector<std::string> argv_store{"qfp"};
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<const char*> argv;
  for (const auto& a : argv_store) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  const auto started = std::chrono::steady_clock::now();
  Outputs files{fs::path(g.out)};
  CLI::App* chosen = app.get_subcommands().front();
  int status = kExitOk;

  try {
    if (chosen == synth) {
      const auto scenario = s_opts.make_scenario();
      const auto settings = s_opts.make_settings(g);
      try {
        const auto run = run_synth(s_theta, s_phi, s_lambda, scenario, settings);
        files.write("gate_report.json", dump(to_json(run.report)));
        files.write("config.json", dump(to_json(run.config)));
        out << "P_W = " << format_double(run.report.success) << "  F_W = " << format_double(run.report.fidelity)
            << "\n";
      } catch (const SynthesisFailure& f) {
        const auto run = reconfigured_run(f.best(), s_phi, s_lambda, g.window);
        auto j = to_json(run.report);
        j["feasible"] = false;
        files.write("gate_report.json", dump(j));
        files.write("config.json", dump(to_json(run.config)));
        err << f.what() << "\n";
        status = kExitInfeasible;
      }
    } else if (chosen == sweep_cmd) {
      const auto rows = sweep(uniform_thetas(n_theta), w_opts.make_scenario(), w_opts.make_settings(g));
      files.write("sweep.csv", sweep_csv(rows));
      for (const auto& r : rows) {
        if (!r.feasible) status = kExitInfeasible;
      }
    } else if (chosen == reconfig) {
      const auto cfg = config_from_json(json::parse(read_file(r_config)));
      const auto re = reconfigure(cfg, r_phi, r_lambda);
      files.write("config.json", dump(to_json(re)));
      const auto before = g.window > 0 ? computational_block(cfg, ModeWindow::symmetric(g.window),
                                                             default_max_order(ModeWindow::symmetric(g.window)))
                                       : computational_block(cfg);
      const auto after = g.window > 0 ? computational_block(re, ModeWindow::symmetric(g.window),
                                                            default_max_order(ModeWindow::symmetric(g.window)))
                                      : computational_block(re);
      double dev = 0.0;
      for (int m = 0; m < 2; ++m) {
        for (int n = 0; n < 2; ++n) {
          dev = std::max(dev, std::abs(after.w(m, n) - std::polar(1.0, m * r_phi + n * r_lambda) * before.w(m, n)));
        }
      }
      out << "max |W'_mn - e^{i(m phi + n lambda)} W_mn| = " << format_double(dev) << "\n";
    } else if (chosen == bs) {
      std::optional<TomographyOptions> topts;
      if (b_tomo) topts = tomo_options(g, b_samples, 0.0);
      const auto rows = bs_table(b_theta, b_n, g.window, topts ? &*topts : nullptr);
      files.write("bs.csv", bs_csv(rows));
      for (const auto& r : rows) {
        if (r.tomo && !r.tomo->sampler_ok) status = kExitSampler;
      }
    } else if (chosen == tsim) {
      QubitState state = rotated_state(t_theta, t_phi);
      if (!t_config.empty()) {
        const auto cfg = config_from_json(json::parse(read_file(t_config)));
        const auto w = g.window > 0 ? computational_block(cfg, ModeWindow::symmetric(g.window),
                                                          default_max_order(ModeWindow::symmetric(g.window)))
                                    : computational_block(cfg);
        state = apply_gate(w.w, QubitState{1.0, 0.0}).normalized();
      }
      const auto d = simulate_counts(DensityMatrix::pure(state), AnalyzerModel(), g.budget, g.seed, t_dark,
                                     t_analytic ? CountMode::Analytic : CountMode::Sampled);
      files.write("dataset.json", dump(to_json(d)));
    } else if (chosen == tfit) {
      const auto d = dataset_from_json(json::parse(read_file(f_data)));
      json j;
      try {
        const auto post = sample_posterior(d, f_samples, f_chain, g.seed);
        const auto mean = posterior_mean(post.samples);
        j["mean"] = matrix_json(mean.matrix());
        j["min_eigenvalue"] = mean.min_eigenvalue();
        j["purity"] = mean.purity();
        j["acceptance_rate"] = post.acceptance_rate;
        j["step"] = post.step;
        j["samples"] = post.samples.size();
        j["thinning"] = post.thinning;
        if (f_target.size() == 2) {
          const auto st = fidelity_stats(post.samples, rotated_state(f_target[0], f_target[1]));
          j["fidelity"] = {{"mean", st.mean}, {"std", st.stddev}};
        }
      } catch (const SamplerDiagnosticError& e) {
        j["error"] = e.what();
        j["acceptance_rate"] = e.acceptance_rate();
        status = kExitSampler;
      }
      files.write("posterior.json", dump(j));
    } else if (chosen == rot) {
      std::vector<GatePoint> gates;
      if (!o_gates.empty()) {
        gates = parse_gates(o_gates);
      } else if (o_preset == "fig3" || o_preset.empty()) {
        gates = fig3_preset();
      }
      const auto rows =
          rotate_tomo(gates, o_opts.make_scenario(), o_opts.make_settings(g), tomo_options(g, o_samples, 0.0));
      files.write("rotate.csv", rotate_csv(rows));
      for (const auto& r : rows) {
        if (!r.synthesized) status = std::max(status, static_cast<int>(kExitInfeasible));
        if (r.synthesized && !r.tomo.sampler_ok) status = kExitSampler;
      }
    } else if (chosen == replay) {
      const fs::path manifest_path(m_path);
      const auto m = manifest_from_json(json::parse(read_file(manifest_path)));
      fs::path target = fs::path(g.out);
      const bool out_given = app.get_option("--out")->count() > 0;
      if (!out_given) target = manifest_path.parent_path() / (m_verify ? "replay" : "");
      std::vector<std::string> again{"--out", target.string()};
      const auto rest = strip_out(m.args);
      again.insert(again.end(), rest.begin(), rest.end());
      const int code = run_cli(again, out, err);
      if (m_verify) {
        for (const auto& name : m.outputs) {
          const auto a = read_file(manifest_path.parent_path() / name);
          const auto b = read_file(target / name);
          if (a != b) {
            err << "replay mismatch: " << name << "\n";
            return kExitMismatch;
          }
        }
        out << "replay reproduced " << m.outputs.size() << " output(s)\n";
      }
      return code;
    }
  } catch (const FormatError& e) {
    err << "error: " << e.what() << "\n";
    return kExitIo;
  } catch (const json::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitIo;
  } catch (const CLI::ValidationError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const SamplerDiagnosticError& e) {
    err << "error: " << e.what() << "\n";
    return kExitSampler;
  } catch (const std::runtime_error& e) {
    err << "error: " << e.what() << "\n";
    return kExitIo;
  }

  RunManifest manifest;
  manifest.command = chosen->get_name();
  manifest.args = args;
  manifest.parameters = option_values(&app);
  manifest.parameters[manifest.command] = option_values(chosen);
  manifest.seed = g.seed;
  manifest.outputs = files.names();
  manifest.wall_time_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
  try {
    write_file(files.dir() / (manifest.command + ".manifest.json"), dump(to_json(manifest)));
  } catch (const std::runtime_error& e) {
    err << "error: " << e.what() << "\n";
    return kExitIo;
  }
  return status;
}

}  // namespace qfp
