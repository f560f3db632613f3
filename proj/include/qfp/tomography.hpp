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

// Single-qubit state tomography for frequency-bin qubits: a probabilistic
// Hadamard analyzer built from one sinusoidal EOM, simulated photon counts,
// and Bayesian mean estimation by Markov-chain sampling.

#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "qfp/gates.hpp"
#include "qfp/multiport.hpp"

namespace qfp {

class DensityMatrix {
 public:
  /// Maximally mixed state.
  DensityMatrix();
  /// Throws std::invalid_argument unless m is Hermitian, unit trace and
  /// positive semidefinite, each to 1e-12.
  explicit DensityMatrix(const Matrix2c& m);

  /// |s><s| for the normalized s. Throws std::domain_error on a zero vector.
  static DensityMatrix pure(const QubitState& s);

  const Matrix2c& matrix() const { return m_; }
  cplx operator()(int r, int c) const { return m_(r, c); }

  double purity() const;
  double min_eigenvalue() const;
  /// <phi|rho|phi> for the normalized phi.
  double fidelity(const QubitState& phi) const;
  /// Half the trace norm of the difference.
  double trace_distance(const DensityMatrix& other) const;

 private:
  Matrix2c m_;
};

/// Order of the six outcomes everywhere in this module.
enum Outcome : int { kZero = 0, kOne, kPlus, kMinus, kPlusI, kMinusI };
inline constexpr int kOutcomeCount = 6;

/// |0>, |1>, |+>, |->, |+i>, |-i>.
std::array<QubitState, kOutcomeCount> projector_states();

std::array<double, kOutcomeCount> born_probabilities(const DensityMatrix& rho);

enum class MeasurementSetting { Z = 0, X = 1, Y = 2 };

/// Index where J0(x)^2 = J1(x)^2 nearest 1.4, by bisection.
double analyzer_root();

struct AnalyzerModel {
  double h_index;
  /// Report raw detection probabilities at bins 0 and 1 instead of
  /// renormalizing them to sum to one.
  bool include_loss = false;

  AnalyzerModel();
  /// Throws std::invalid_argument unless h_index > 0.
  explicit AnalyzerModel(double h_index, bool include_loss = false);
};

/// Amplitude map from input bins {0, 1} to output bins {0, 1} for a setting:
/// identity for Z, the EOM block for X, and the EOM block after a -pi/2
/// phase on bin 1 for Y.
Matrix2c analyzer_operator(const AnalyzerModel& model, MeasurementSetting setting);

struct AnalyzerOutcome {
  double q0 = 0.0;
  double q1 = 0.0;
  /// Power leaving bins 0 and 1, summed over all other output bins.
  double scatter = 0.0;
};

/// Unnormalized detection probabilities plus the scattered remainder.
AnalyzerOutcome analyzer_outcome(const AnalyzerModel& model, const QubitState& s, MeasurementSetting setting);

/// (q0, q1), renormalized unless model.include_loss.
std::pair<double, double> analyzer_probabilities(const AnalyzerModel& model, const QubitState& s,
                                                 MeasurementSetting setting);
std::pair<double, double> analyzer_probabilities(const AnalyzerModel& model, const DensityMatrix& rho,
                                                 MeasurementSetting setting);

struct TomographyDataset {
  /// N0, N1, N+, N-, N+i, N-i.
  std::array<double, kOutcomeCount> counts{};
  double budget = 0.0;
  std::uint64_t seed = 0;
  double dark_rate = 0.0;

  double total() const;
};

enum class CountMode { Sampled, Analytic };

/// Expected count per setting is budget * q + dark_rate. Sampled mode draws
/// independent Poisson counts, subtracts the mean dark count and clamps at 0.
/// Throws std::invalid_argument unless budget > 0 and dark_rate >= 0.
TomographyDataset simulate_counts(const DensityMatrix& rho, const AnalyzerModel& model, double budget,
                                  std::uint64_t seed, double dark_rate = 0.0,
                                  CountMode mode = CountMode::Sampled);

/// Sum of N_t log p_t over Born probabilities, each floored at 1e-300.
double log_likelihood(const DensityMatrix& rho, const TomographyDataset& d);
/// Same, with probabilities from the analyzer model renormalized per setting.
double log_likelihood(const DensityMatrix& rho, const TomographyDataset& d, const AnalyzerModel& model);

/// Length of the real parameter vector behind density_from_params.
inline constexpr int kDensityParams = 16;

/// rho = G G^dagger / Tr(G G^dagger) with G the 2x4 complex matrix whose
/// entries are (x[2i], x[2i+1]) in row-major order. Returns I/2 when G = 0.
/// Throws std::invalid_argument on a wrong-length x.
DensityMatrix density_from_params(std::span<const double> x);

struct ChainSettings {
  int burn_in = 20000;
  int thinning = 20;
  double target_acceptance = 0.25;
  double initial_step = 0.2;
  /// Steps between step-size adjustments during burn-in.
  int adapt_interval = 100;
  /// Prior draws screened for the chain's starting point.
  int start_draws = 2000;

  void validate() const;
};

struct PosteriorSamples {
  std::vector<DensityMatrix> samples;
  double acceptance_rate = 0.0;
  int thinning = 0;
  /// pCN mixing parameter after adaptation, in (0, 1].
  double step = 0.0;
};

inline constexpr int kDefaultPosteriorSamples = 1024;

/// Preconditioned Crank-Nicolson Metropolis chain over the standard-normal
/// prior of density_from_params. Throws std::invalid_argument on R < 1 and
/// SamplerDiagnosticError when the post-adaptation acceptance rate lies
/// outside [0.05, 0.9], unless the step is already at its cap of 1.
PosteriorSamples sample_posterior(const TomographyDataset& d, int samples = kDefaultPosteriorSamples,
                                  const ChainSettings& chain = {}, std::uint64_t seed = 1);

struct FidelityStats {
  double mean = 0.0;
  double stddev = 0.0;
};

/// Mean and population standard deviation of <phi|rho_r|phi>.
/// Throws std::invalid_argument on an empty sample list.
FidelityStats fidelity_stats(std::span<const DensityMatrix> samples, const QubitState& phi);

DensityMatrix posterior_mean(std::span<const DensityMatrix> samples);

}  // namespace qfp
