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

#include "qfp/tomography.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <sstream>
#include <stdexcept>

#include "qfp/error.hpp"

namespace qfp {
namespace {

constexpr double kTol = 1e-12;
constexpr double kProbabilityFloor = 1e-300;
const cplx kI{0.0, 1.0};

double min_eig(const Matrix2c& m) {
  return Eigen::SelfAdjointEigenSolver<Matrix2c>(m, Eigen::EigenvaluesOnly).eigenvalues()(0);
}

}  // namespace

DensityMatrix::DensityMatrix() : m_(Matrix2c::Identity() / 2.0) {}

DensityMatrix::DensityMatrix(const Matrix2c& m) : m_(m) {
  if ((m - m.adjoint()).cwiseAbs().maxCoeff() > kTol) throw std::invalid_argument("DensityMatrix: not Hermitian");
  if (std::abs(m.trace() - 1.0) > kTol) throw std::invalid_argument("DensityMatrix: trace is not 1");
  // Enforce exact Hermiticity after the check.
  m_ = (m + m.adjoint()) / 2.0;
  if (min_eig(m_) < -kTol) throw std::invalid_argument("DensityMatrix: negative eigenvalue");
}

DensityMatrix DensityMatrix::pure(const QubitState& s) {
  const Eigen::Vector2cd v = s.normalized().vector();
  return DensityMatrix(v * v.adjoint());
}

double DensityMatrix::purity() const { return (m_ * m_).trace().real(); }

double DensityMatrix::min_eigenvalue() const { return min_eig(m_); }

double DensityMatrix::fidelity(const QubitState& phi) const {
  const Eigen::Vector2cd v = phi.normalized().vector();
  return (v.adjoint() * m_ * v)(0).real();
}

double DensityMatrix::trace_distance(const DensityMatrix& other) const {
  // The difference is traceless, so its eigenvalues are +-lambda.
  const Matrix2c d = m_ - other.m_;
  return Eigen::SelfAdjointEigenSolver<Matrix2c>(d, Eigen::EigenvaluesOnly).eigenvalues().cwiseAbs().sum() / 2.0;
}

std::array<QubitState, kOutcomeCount> projector_states() {
  const double r = 1.0 / std::sqrt(2.0);
  return {QubitState{1.0, 0.0}, QubitState{0.0, 1.0}, QubitState{r, r},
          QubitState{r, -r},    QubitState{r, r * kI}, QubitState{r, -r * kI}};
}

std::array<double, kOutcomeCount> born_probabilities(const DensityMatrix& rho) {
  const auto& m = rho.matrix();
  const double p0 = m(0, 0).real();
  const double p1 = m(1, 1).real();
  const double re = m(1, 0).real();
  const double im = m(1, 0).imag();
  // <+|rho|+> = 1/2 + Re rho10 and <+i|rho|+i> = 1/2 + Im rho10.
  return {p0, p1, 0.5 + re, 0.5 - re, 0.5 + im, 0.5 - im};
}

double analyzer_root() {
  auto f = [](double x) {
    const double j0 = std::cyl_bessel_j(0.0, x);
    const double j1 = std::cyl_bessel_j(1.0, x);
    return j0 * j0 - j1 * j1;
  };
  double lo = 1.2;
  double hi = 1.6;
  double flo = f(lo);
  while (hi - lo > 1e-13) {
    const double mid = 0.5 * (lo + hi);
    const double fm = f(mid);
    if ((fm > 0.0) == (flo > 0.0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

AnalyzerModel::AnalyzerModel() : h_index(analyzer_root()) {}

AnalyzerModel::AnalyzerModel(double h_index_, bool include_loss_) : h_index(h_index_), include_loss(include_loss_) {
  if (!(h_index > 0.0) || !std::isfinite(h_index)) throw std::invalid_argument("AnalyzerModel: h_index must be > 0");
}

namespace {

constexpr int kAnalyzerOrders = 24;
constexpr int kAnalyzerSamples = 128;

CoefficientSeries analyzer_series(const AnalyzerModel& model) {
  return eom_coefficients(RfWaveform::single_tone(model.h_index, 0.0), FrequencyGrid{}, kAnalyzerOrders,
                          kAnalyzerSamples);
}

Eigen::Vector2cd setting_input(const QubitState& s, MeasurementSetting setting) {
  Eigen::Vector2cd a = s.vector();
  if (setting == MeasurementSetting::Y) a(1) *= -kI;
  return a;
}

}  // namespace

Matrix2c analyzer_operator(const AnalyzerModel& model, MeasurementSetting setting) {
  if (setting == MeasurementSetting::Z) return Matrix2c::Identity();
  const auto c = analyzer_series(model);
  Matrix2c m;
  m << c(0), c(-1), c(1), c(0);
  if (setting == MeasurementSetting::Y) m.col(1) *= -kI;
  return m;
}

AnalyzerOutcome analyzer_outcome(const AnalyzerModel& model, const QubitState& s, MeasurementSetting setting) {
  AnalyzerOutcome out;
  if (setting == MeasurementSetting::Z) {
    out.q0 = std::norm(s.c0);
    out.q1 = std::norm(s.c1);
    return out;
  }
  const auto c = analyzer_series(model);
  const Eigen::Vector2cd a = setting_input(s, setting);
  const int k = c.max_order();
  for (int m = -k; m <= k + 1; ++m) {
    const double p = std::norm(c(m) * a(0) + c(m - 1) * a(1));
    if (m == 0) {
      out.q0 = p;
    } else if (m == 1) {
      out.q1 = p;
    } else {
      out.scatter += p;
    }
  }
  return out;
}

namespace {

std::pair<double, double> finish(const AnalyzerModel& model, double q0, double q1) {
  if (model.include_loss) return {q0, q1};
  const double total = q0 + q1;
  if (!(total > 0.0)) return {0.5, 0.5};
  return {q0 / total, q1 / total};
}

}  // namespace

std::pair<double, double> analyzer_probabilities(const AnalyzerModel& model, const QubitState& s,
                                                 MeasurementSetting setting) {
  const auto o = analyzer_outcome(model, s, setting);
  return finish(model, o.q0, o.q1);
}

std::pair<double, double> analyzer_probabilities(const AnalyzerModel& model, const DensityMatrix& rho,
                                                 MeasurementSetting setting) {
  const Matrix2c m = analyzer_operator(model, setting);
  const Matrix2c out = m * rho.matrix() * m.adjoint();
  return finish(model, out(0, 0).real(), out(1, 1).real());
}

double TomographyDataset::total() const {
  double t = 0.0;
  for (double c : counts) t += c;
  return t;
}

TomographyDataset simulate_counts(const DensityMatrix& rho, const AnalyzerModel& model, double budget,
                                  std::uint64_t seed, double dark_rate, CountMode mode) {
  if (!(budget > 0.0) || !std::isfinite(budget)) throw std::invalid_argument("simulate_counts: budget must be > 0");
  if (!(dark_rate >= 0.0) || !std::isfinite(dark_rate)) {
    throw std::invalid_argument("simulate_counts: dark_rate must be >= 0");
  }
  TomographyDataset d;
  d.budget = budget;
  d.seed = seed;
  d.dark_rate = dark_rate;
  std::mt19937_64 rng(seed);
  const MeasurementSetting settings[] = {MeasurementSetting::Z, MeasurementSetting::X, MeasurementSetting::Y};
  for (int s = 0; s < 3; ++s) {
    const auto [q0, q1] = analyzer_probabilities(model, rho, settings[s]);
    const double q[2] = {q0, q1};
    for (int o = 0; o < 2; ++o) {
      const double mean = budget * std::max(q[o], 0.0);
      double n = mean;
      if (mode == CountMode::Sampled) {
        double raw = 0.0;
        if (mean + dark_rate > 0.0) {
          std::poisson_distribution<long long> draw(mean + dark_rate);
          raw = static_cast<double>(draw(rng));
        }
        n = std::max(raw - dark_rate, 0.0);
      }
      d.counts[static_cast<std::size_t>(2 * s + o)] = n;
    }
  }
  return d;
}

namespace {

double sum_log(const std::array<double, kOutcomeCount>& p, const TomographyDataset& d) {
  double ll = 0.0;
  for (int t = 0; t < kOutcomeCount; ++t) {
    const double n = d.counts[static_cast<std::size_t>(t)];
    if (n == 0.0) continue;
    ll += n * std::log(std::max(p[static_cast<std::size_t>(t)], kProbabilityFloor));
  }
  return ll;
}

}  // namespace

double log_likelihood(const DensityMatrix& rho, const TomographyDataset& d) {
  return sum_log(born_probabilities(rho), d);
}

double log_likelihood(const DensityMatrix& rho, const TomographyDataset& d, const AnalyzerModel& model) {
  // Renormalizing per setting: in the multinomial form a state-independent
  // loss only rescales the likelihood.
  const AnalyzerModel renorm(model.h_index, false);
  std::array<double, kOutcomeCount> p{};
  const MeasurementSetting settings[] = {MeasurementSetting::Z, MeasurementSetting::X, MeasurementSetting::Y};
  for (int s = 0; s < 3; ++s) {
    const auto [q0, q1] = analyzer_probabilities(renorm, rho, settings[s]);
    p[static_cast<std::size_t>(2 * s)] = q0;
    p[static_cast<std::size_t>(2 * s + 1)] = q1;
  }
  return sum_log(p, d);
}

DensityMatrix density_from_params(std::span<const double> x) {
  if (x.size() != static_cast<std::size_t>(kDensityParams)) {
    throw std::invalid_argument("density_from_params: expected 16 parameters");
  }
  Eigen::Matrix<cplx, 2, 4> g;
  for (int i = 0; i < 8; ++i) g(i / 4, i % 4) = cplx(x[static_cast<std::size_t>(2 * i)], x[static_cast<std::size_t>(2 * i + 1)]);
  Matrix2c m = g * g.adjoint();
  const double tr = m.trace().real();
  if (!(tr > 0.0)) return DensityMatrix();
  m /= tr;
  m = (m + m.adjoint()) / 2.0;
  // Rounding can leave the trace off by an ulp.
  m(1, 1) = 1.0 - m(0, 0).real();
  return DensityMatrix(m);
}

void ChainSettings::validate() const {
  if (burn_in < 0) throw std::invalid_argument("ChainSettings: burn_in must be >= 0");
  if (thinning < 1) throw std::invalid_argument("ChainSettings: thinning must be >= 1");
  if (!(target_acceptance > 0.0 && target_acceptance < 1.0)) {
    throw std::invalid_argument("ChainSettings: target_acceptance must be in (0, 1)");
  }
  if (!(initial_step > 0.0 && initial_step <= 1.0)) throw std::invalid_argument("ChainSettings: initial_step must be in (0, 1]");
  if (adapt_interval < 1) throw std::invalid_argument("ChainSettings: adapt_interval must be >= 1");
  if (start_draws < 1) throw std::invalid_argument("ChainSettings: start_draws must be >= 1");
}

namespace {

constexpr double kMinStep = 1e-7;
constexpr double kMinAcceptance = 0.05;
constexpr double kMaxAcceptance = 0.9;

using Params = std::array<double, kDensityParams>;

class Chain {
 public:
  Chain(const TomographyDataset& d, std::uint64_t seed) : data_(d), rng_(seed) {}

  double loglik(const Params& x) const { return log_likelihood(density_from_params(x), data_); }

  Params prior_draw() {
    Params x;
    for (double& v : x) v = normal_(rng_);
    return x;
  }

  void start(int draws) {
    x_ = prior_draw();
    ll_ = loglik(x_);
    for (int i = 1; i < draws; ++i) {
      const Params y = prior_draw();
      const double l = loglik(y);
      if (l > ll_) {
        x_ = y;
        ll_ = l;
      }
    }
  }

  // One pCN step; the prior is invariant under the proposal, so the
  // acceptance ratio is the likelihood ratio alone.
  bool step(double beta) {
    const double keep = std::sqrt(std::max(0.0, 1.0 - beta * beta));
    Params y;
    for (std::size_t i = 0; i < y.size(); ++i) y[i] = keep * x_[i] + beta * normal_(rng_);
    const double l = loglik(y);
    const double u = unit_(rng_);
    if (std::log(u) < l - ll_) {
      x_ = y;
      ll_ = l;
      return true;
    }
    return false;
  }

  const Params& state() const { return x_; }

 private:
  const TomographyDataset& data_;
  std::mt19937_64 rng_;
  std::normal_distribution<double> normal_{0.0, 1.0};
  std::uniform_real_distribution<double> unit_{0.0, 1.0};
  Params x_{};
  double ll_ = 0.0;
};

}  // namespace

PosteriorSamples sample_posterior(const TomographyDataset& d, int samples, const ChainSettings& chain,
                                  std::uint64_t seed) {
  if (samples < 1) throw std::invalid_argument("sample_posterior: need at least one sample");
  chain.validate();

  Chain c(d, seed);
  c.start(chain.start_draws);

  double beta = chain.initial_step;
  int accepted = 0;
  for (int i = 0; i < chain.burn_in; ++i) {
    if (c.step(beta)) ++accepted;
    if ((i + 1) % chain.adapt_interval == 0) {
      const double rate = static_cast<double>(accepted) / chain.adapt_interval;
      beta = std::clamp(beta * std::exp(2.0 * (rate - chain.target_acceptance)), kMinStep, 1.0);
      accepted = 0;
    }
  }

  PosteriorSamples out;
  out.thinning = chain.thinning;
  out.step = beta;
  out.samples.reserve(static_cast<std::size_t>(samples));
  long total_accepted = 0;
  const long steps = static_cast<long>(samples) * chain.thinning;
  for (long i = 0; i < steps; ++i) {
    if (c.step(beta)) ++total_accepted;
    if ((i + 1) % chain.thinning == 0) out.samples.push_back(density_from_params(c.state()));
  }
  out.acceptance_rate = static_cast<double>(total_accepted) / static_cast<double>(steps);

  const bool too_low = out.acceptance_rate < kMinAcceptance;
  // With an uninformative dataset every proposal is accepted; that is only a
  // fault if the step could still have grown.
  const bool too_high = out.acceptance_rate > kMaxAcceptance && beta < 1.0;
  if (too_low || too_high) {
    std::ostringstream msg;
    msg << "sample_posterior: acceptance rate " << out.acceptance_rate << " outside [" << kMinAcceptance << ", "
        << kMaxAcceptance << "] after adaptation";
    throw SamplerDiagnosticError(msg.str(), out.acceptance_rate);
  }
  return out;
}

FidelityStats fidelity_stats(std::span<const DensityMatrix> samples, const QubitState& phi) {
  if (samples.empty()) throw std::invalid_argument("fidelity_stats: no samples");
  const QubitState p = phi.normalized();
  std::vector<double> f;
  f.reserve(samples.size());
  for (const auto& s : samples) f.push_back(s.fidelity(p));
  const double n = static_cast<double>(f.size());
  double mean = 0.0;
  for (double v : f) mean += v;
  mean /= n;
  double var = 0.0;
  for (double v : f) var += (v - mean) * (v - mean);
  return {mean, std::sqrt(var / n)};
}

DensityMatrix posterior_mean(std::span<const DensityMatrix> samples) {
  if (samples.empty()) throw std::invalid_argument("posterior_mean: no samples");
  Matrix2c m = Matrix2c::Zero();
  for (const auto& s : samples) m += s.matrix();
  m /= static_cast<double>(samples.size());
  m(1, 1) = 1.0 - m(0, 0).real();
  return DensityMatrix(m);
}

}  // namespace qfp
