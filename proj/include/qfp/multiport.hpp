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

// Frequency-domain multiport model of an alternating cascade of
// electro-optic phase modulators (EOMs) and line-by-line pulse shapers.
//
// Conventions used throughout the library:
//
//  * A field component in bin n oscillates as exp(-i w_n t), w_n = w_0 + n dw.
//  * An EOM multiplies the field by exp(iA(t)) with
//        A(t) = sum_h index_h * sin(order_h * dw * (t - delay_h * T)),
//    and couples bin n to bin m with weight c_{m-n}, where
//        c_j = (1/T) \int_T exp(iA(t)) exp(+i j dw t) dt.
//    For one zero-delay tone this gives c_j = J_{-j}(index) = (-1)^j J_j(index).
//  * Delaying a waveform by a fraction d of the period multiplies c_j by
//    exp(+2 pi i j d).
//  * Elements are listed in the order the photon meets them; the cascade
//    matrix is E_last * ... * S_1 * E_1 (first element is the rightmost factor).

#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <complex>
#include <cstddef>
#include <numbers>
#include <span>
#include <variant>
#include <vector>

namespace qfp {

using cplx = std::complex<double>;
using Matrix2c = Eigen::Matrix2cd;

struct FrequencyGrid {
  /// Centre angular frequency of bin 0 (rad/s). Bookkeeping only.
  double omega0 = 0.0;
  /// Bin spacing (rad/s).
  double delta_omega = 2.0 * std::numbers::pi * 25e9;

  FrequencyGrid() = default;
  FrequencyGrid(double omega0, double delta_omega);

  double period() const { return 2.0 * std::numbers::pi / delta_omega; }

  friend bool operator==(const FrequencyGrid&, const FrequencyGrid&) = default;
};

struct Harmonic {
  /// Positive multiple of the bin spacing.
  int order = 1;
  /// Peak phase deviation (rad).
  double index = 0.0;
  /// Time offset as a fraction of the fundamental period, kept in [0, 1).
  double delay = 0.0;

  friend bool operator==(const Harmonic&, const Harmonic&) = default;
};

/// Wraps a delay into [0, 1).
double wrap_delay(double delay);

/// Periodic EOM drive: a finite sum of sinusoidal harmonics.
class RfWaveform {
 public:
  RfWaveform() = default;
  /// Throws std::invalid_argument on non-positive or repeated orders, negative
  /// or non-finite indices. Delays are wrapped into [0, 1).
  explicit RfWaveform(std::vector<Harmonic> harmonics);

  static RfWaveform single_tone(double index, double delay = 0.0);

  const std::vector<Harmonic>& harmonics() const { return harmonics_; }
  bool empty() const { return harmonics_.empty(); }
  /// Sum of the harmonic indices; bounds the peak phase excursion.
  double total_index() const;

  friend bool operator==(const RfWaveform&, const RfWaveform&) = default;

 private:
  std::vector<Harmonic> harmonics_;
};

/// Contiguous range of bin indices [lo, hi] kept in a truncated simulation.
/// Always contains the computational bins 0 and 1.
struct ModeWindow {
  int lo = 0;
  int hi = 1;

  ModeWindow() = default;
  ModeWindow(int lo, int hi);

  /// Window [-half_width, 1 + half_width].
  static ModeWindow symmetric(int half_width);

  int dimension() const { return hi - lo + 1; }
  /// Number of bins on the narrower side of the computational pair.
  int half_width() const { return std::min(-lo, hi - 1); }
  bool contains(int bin) const { return bin >= lo && bin <= hi; }
  /// Row/column of `bin` in matrices over this window.
  Eigen::Index offset(int bin) const { return bin - lo; }

  friend bool operator==(const ModeWindow&, const ModeWindow&) = default;
};

/// Spectral phase mask of a line-by-line pulse shaper.
///
/// `phases[i]` is the phase of bin `lo + i`. Bins outside the stored range
/// hold the phase of the nearest stored edge, so a mask with a handful of
/// entries still describes every bin. `ramp` adds `ramp * k` to bin k on top
/// of the stored pattern; linear phases are exact over any window this way.
struct ShaperPhases {
  int lo = 0;
  std::vector<double> phases{0.0};
  double ramp = 0.0;

  ShaperPhases() = default;
  ShaperPhases(int lo, std::vector<double> phases, double ramp = 0.0);

  static ShaperPhases flat(double phase = 0.0) { return ShaperPhases(0, {phase}); }
  /// Phase 0 on bins <= 0 and `jump` on bins >= 1.
  static ShaperPhases step(double jump) { return ShaperPhases(0, {0.0, jump}); }

  int hi() const { return lo + static_cast<int>(phases.size()) - 1; }
  double phase_at(int bin) const;

  friend bool operator==(const ShaperPhases&, const ShaperPhases&) = default;
};

using Element = std::variant<RfWaveform, ShaperPhases>;

/// Alternating EOM / shaper sequence, starting and ending with an EOM.
class QfpConfig {
 public:
  QfpConfig() = default;
  /// Throws std::invalid_argument unless the elements strictly alternate
  /// EOM, shaper, EOM, ..., EOM.
  QfpConfig(FrequencyGrid grid, std::vector<Element> elements);

  const FrequencyGrid& grid() const { return grid_; }
  const std::vector<Element>& elements() const { return elements_; }
  std::size_t eom_count() const { return (elements_.size() + 1) / 2; }
  std::size_t shaper_count() const { return elements_.size() / 2; }

  const RfWaveform& eom(std::size_t i) const;
  const ShaperPhases& shaper(std::size_t i) const;

  /// Largest per-EOM sum of harmonic indices.
  double max_total_index() const;

  friend bool operator==(const QfpConfig&, const QfpConfig&) = default;

 private:
  FrequencyGrid grid_;
  std::vector<Element> elements_;
};

/// Fourier coefficients c_{-K..K} of exp(iA(t)).
class CoefficientSeries {
 public:
  CoefficientSeries(int max_order, std::vector<cplx> values);

  int max_order() const { return max_order_; }
  /// c_j; zero for |j| > max_order.
  cplx operator()(int j) const {
    return (j < -max_order_ || j > max_order_) ? cplx{} : values_[static_cast<std::size_t>(j + max_order_)];
  }
  /// Sum of |c_j|^2 over the retained orders.
  double retained_power() const;
  std::span<const cplx> values() const { return values_; }

 private:
  int max_order_;
  std::vector<cplx> values_;
};

struct TruncatedMultiport {
  ModeWindow window;
  Eigen::MatrixXcd matrix;

  cplx at(int out_bin, int in_bin) const {
    return matrix(window.offset(out_bin), window.offset(in_bin));
  }
};

/// Transformation restricted to bins {0, 1}.
struct ComputationalGate {
  Matrix2c w = Matrix2c::Identity();

  double max_singular_value() const;
};

/// Samples per period used by eom_coefficients unless told otherwise.
inline constexpr int kDefaultQuadratureSamples = 4096;
/// Coefficients retaining less power than this are rejected as truncated.
inline constexpr double kMinRetainedPower = 0.999;

double eval_waveform(const RfWaveform& w, const FrequencyGrid& grid, double t);

/// Uniform-sample DFT estimate of c_{-K..K}. `samples` must be a power of two
/// larger than 2K+1. Throws TruncationError when sum |c_j|^2 < 0.999.
CoefficientSeries eom_coefficients(const RfWaveform& w, const FrequencyGrid& grid, int max_order,
                                   int samples = kDefaultQuadratureSamples);

/// Banded Toeplitz matrix with entry (m, n) = c_{m-n}. Throws
/// std::invalid_argument when the window is wider than 2K+1 bins.
TruncatedMultiport eom_matrix(const CoefficientSeries& coeffs, const ModeWindow& window);

/// Diagonal matrix over the shaper's own stored range.
TruncatedMultiport shaper_matrix(const ShaperPhases& s);
TruncatedMultiport shaper_matrix(const ShaperPhases& s, const ModeWindow& window);

/// Half-width max(16, 4*ceil(index) + 8) around the computational pair.
int default_half_width(double total_index);
ModeWindow default_window(const QfpConfig& cfg);
/// Smallest coefficient order giving full Toeplitz coverage of `window`.
int default_max_order(const ModeWindow& window);

/// Full truncated multiport V = E_{N+1} S_N ... S_1 E_1.
TruncatedMultiport cascade(const QfpConfig& cfg, const ModeWindow& window, int max_order,
                           int samples = kDefaultQuadratureSamples);
/// cascade() with the default window and full coefficient coverage.
TruncatedMultiport cascade(const QfpConfig& cfg);

/// Throws std::invalid_argument if the window lacks bins 0 or 1.
ComputationalGate extract_computational(const TruncatedMultiport& v);

/// The {0,1} block of cascade(cfg, window, max_order), computed by propagating
/// only the two computational input columns. Same truncation semantics as
/// cascade(); cost is linear in the number of EOMs.
ComputationalGate computational_block(const QfpConfig& cfg, const ModeWindow& window, int max_order,
                                      int samples = kDefaultQuadratureSamples);
ComputationalGate computational_block(const QfpConfig& cfg);

/// max over bins at least `guard` bins inside the window edges of
/// |column norm^2 - 1| and |row norm^2 - 1|.
double unitarity_defect(const TruncatedMultiport& v, int guard);

}  // namespace qfp
