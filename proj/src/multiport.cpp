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

#include "qfp/multiport.hpp"

#include <cmath>
#include <set>
#include <sstream>
#include <stdexcept>

#include "fourier.hpp"
#include "qfp/error.hpp"

namespace qfp {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;
}  // namespace

FrequencyGrid::FrequencyGrid(double omega0_, double delta_omega_) : omega0(omega0_), delta_omega(delta_omega_) {
  if (!(delta_omega > 0.0) || !std::isfinite(delta_omega)) {
    throw std::invalid_argument("FrequencyGrid: delta_omega must be positive and finite");
  }
}

double wrap_delay(double delay) {
  double d = delay - std::floor(delay);
  // floor() of a tiny negative number can round d up to exactly 1.
  return d >= 1.0 ? 0.0 : d;
}

RfWaveform::RfWaveform(std::vector<Harmonic> harmonics) : harmonics_(std::move(harmonics)) {
  std::set<int> seen;
  for (auto& h : harmonics_) {
    if (h.order < 1) throw std::invalid_argument("RfWaveform: harmonic order must be >= 1");
    if (!seen.insert(h.order).second) throw std::invalid_argument("RfWaveform: repeated harmonic order");
    if (!(h.index >= 0.0) || !std::isfinite(h.index)) {
      throw std::invalid_argument("RfWaveform: modulation index must be finite and >= 0");
    }
    if (!std::isfinite(h.delay)) throw std::invalid_argument("RfWaveform: delay must be finite");
    h.delay = wrap_delay(h.delay);
  }
}

RfWaveform RfWaveform::single_tone(double index, double delay) { return RfWaveform({{1, index, delay}}); }

double RfWaveform::total_index() const {
  double total = 0.0;
  for (const auto& h : harmonics_) total += h.index;
  return total;
}

ModeWindow::ModeWindow(int lo_, int hi_) : lo(lo_), hi(hi_) {
  if (lo > 0 || hi < 1) throw std::invalid_argument("ModeWindow must contain bins 0 and 1");
}

ModeWindow ModeWindow::symmetric(int half_width) {
  if (half_width < 0) throw std::invalid_argument("ModeWindow: negative half width");
  return ModeWindow(-half_width, 1 + half_width);
}

ShaperPhases::ShaperPhases(int lo_, std::vector<double> phases_, double ramp_)
    : lo(lo_), phases(std::move(phases_)), ramp(ramp_) {
  if (phases.empty()) throw std::invalid_argument("ShaperPhases: at least one phase required");
  for (double p : phases) {
    if (!std::isfinite(p)) throw std::invalid_argument("ShaperPhases: non-finite phase");
  }
  if (!std::isfinite(ramp)) throw std::invalid_argument("ShaperPhases: non-finite ramp");
}

double ShaperPhases::phase_at(int bin) const {
  const int i = std::clamp(bin - lo, 0, static_cast<int>(phases.size()) - 1);
  return phases[static_cast<std::size_t>(i)] + ramp * bin;
}

QfpConfig::QfpConfig(FrequencyGrid grid, std::vector<Element> elements)
    : grid_(grid), elements_(std::move(elements)) {
  if (elements_.size() % 2 == 0) {
    throw std::invalid_argument("QfpConfig: element count must be odd (EOM ... EOM)");
  }
  for (std::size_t i = 0; i < elements_.size(); ++i) {
    const bool want_eom = (i % 2 == 0);
    if (want_eom != std::holds_alternative<RfWaveform>(elements_[i])) {
      std::ostringstream msg;
      msg << "QfpConfig: element " << i << " breaks EOM/shaper alternation";
      throw std::invalid_argument(msg.str());
    }
  }
}

const RfWaveform& QfpConfig::eom(std::size_t i) const { return std::get<RfWaveform>(elements_.at(2 * i)); }

const ShaperPhases& QfpConfig::shaper(std::size_t i) const {
  return std::get<ShaperPhases>(elements_.at(2 * i + 1));
}

double QfpConfig::max_total_index() const {
  double m = 0.0;
  for (std::size_t i = 0; i < eom_count(); ++i) m = std::max(m, eom(i).total_index());
  return m;
}

CoefficientSeries::CoefficientSeries(int max_order, std::vector<cplx> values)
    : max_order_(max_order), values_(std::move(values)) {
  if (max_order_ < 0 || values_.size() != static_cast<std::size_t>(2 * max_order_ + 1)) {
    throw std::invalid_argument("CoefficientSeries: expected 2K+1 values");
  }
}

double CoefficientSeries::retained_power() const {
  double p = 0.0;
  for (const auto& c : values_) p += std::norm(c);
  return p;
}

double ComputationalGate::max_singular_value() const {
  Eigen::JacobiSVD<Matrix2c> svd(w);
  return svd.singularValues()(0);
}

double eval_waveform(const RfWaveform& w, const FrequencyGrid& grid, double t) {
  const double period = grid.period();
  double a = 0.0;
  for (const auto& h : w.harmonics()) {
    a += h.index * std::sin(h.order * grid.delta_omega * (t - h.delay * period));
  }
  return a;
}

CoefficientSeries eom_coefficients(const RfWaveform& w, const FrequencyGrid& /*grid*/, int max_order, int samples) {
  if (max_order < 1) throw std::invalid_argument("eom_coefficients: max_order must be >= 1");
  if (!detail::is_power_of_two(samples) || samples <= 2 * max_order) {
    throw std::invalid_argument("eom_coefficients: samples must be a power of two exceeding 2K+1");
  }
  // Sample exp(iA) at t_s = s T / N. Written in units of the period so the
  // result does not depend on the grid spacing.
  std::vector<cplx> field(static_cast<std::size_t>(samples));
  const double inv_n = 1.0 / samples;
  for (int s = 0; s < samples; ++s) {
    double a = 0.0;
    for (const auto& h : w.harmonics()) a += h.index * std::sin(kTwoPi * h.order * (s * inv_n - h.delay));
    field[static_cast<std::size_t>(s)] = std::polar(1.0, a);
  }
  const auto spectrum = detail::backward_dft(field);

  std::vector<cplx> values(static_cast<std::size_t>(2 * max_order + 1));
  for (int j = -max_order; j <= max_order; ++j) {
    values[static_cast<std::size_t>(j + max_order)] = spectrum[static_cast<std::size_t>((j + samples) % samples)] * inv_n;
  }
  CoefficientSeries series(max_order, std::move(values));
  const double retained = series.retained_power();
  if (retained < kMinRetainedPower) {
    std::ostringstream msg;
    msg << "eom_coefficients: orders up to " << max_order << " retain only " << retained << " of the power";
    throw TruncationError(msg.str(), retained);
  }
  return series;
}

TruncatedMultiport eom_matrix(const CoefficientSeries& coeffs, const ModeWindow& window) {
  const int dim = window.dimension();
  if (dim > 2 * coeffs.max_order() + 1) {
    throw std::invalid_argument("eom_matrix: window wider than the coefficient range");
  }
  TruncatedMultiport v{window, Eigen::MatrixXcd::Zero(dim, dim)};
  for (int m = 0; m < dim; ++m) {
    for (int n = 0; n < dim; ++n) v.matrix(m, n) = coeffs(m - n);
  }
  return v;
}

TruncatedMultiport shaper_matrix(const ShaperPhases& s) { return shaper_matrix(s, ModeWindow(std::min(s.lo, 0), std::max(s.hi(), 1))); }

TruncatedMultiport shaper_matrix(const ShaperPhases& s, const ModeWindow& window) {
  const int dim = window.dimension();
  TruncatedMultiport v{window, Eigen::MatrixXcd::Zero(dim, dim)};
  for (int k = window.lo; k <= window.hi; ++k) {
    v.matrix(window.offset(k), window.offset(k)) = std::polar(1.0, s.phase_at(k));
  }
  return v;
}

int default_half_width(double total_index) {
  return std::max(16, 4 * static_cast<int>(std::ceil(total_index)) + 8);
}

ModeWindow default_window(const QfpConfig& cfg) {
  return ModeWindow::symmetric(default_half_width(cfg.max_total_index()));
}

int default_max_order(const ModeWindow& window) { return window.dimension() - 1; }

TruncatedMultiport cascade(const QfpConfig& cfg, const ModeWindow& window, int max_order, int samples) {
  const int dim = window.dimension();
  Eigen::MatrixXcd v = Eigen::MatrixXcd::Identity(dim, dim);
  for (const auto& element : cfg.elements()) {
    if (const auto* eom = std::get_if<RfWaveform>(&element)) {
      v = eom_matrix(eom_coefficients(*eom, cfg.grid(), max_order, samples), window).matrix * v;
    } else {
      const auto& shaper = std::get<ShaperPhases>(element);
      for (int k = window.lo; k <= window.hi; ++k) {
        v.row(window.offset(k)) *= std::polar(1.0, shaper.phase_at(k));
      }
    }
  }
  return {window, std::move(v)};
}

TruncatedMultiport cascade(const QfpConfig& cfg) {
  const ModeWindow window = default_window(cfg);
  return cascade(cfg, window, default_max_order(window));
}

ComputationalGate extract_computational(const TruncatedMultiport& v) {
  if (!v.window.contains(0) || !v.window.contains(1)) {
    throw std::invalid_argument("extract_computational: window lacks computational bins");
  }
  ComputationalGate g;
  for (int m = 0; m < 2; ++m) {
    for (int n = 0; n < 2; ++n) g.w(m, n) = v.at(m, n);
  }
  return g;
}

ComputationalGate computational_block(const QfpConfig& cfg, const ModeWindow& window, int max_order, int samples) {
  const int dim = window.dimension();
  const auto& elements = cfg.elements();
  Eigen::MatrixX2cd cols = Eigen::MatrixX2cd::Zero(dim, 2);
  cols(window.offset(0), 0) = 1.0;
  cols(window.offset(1), 1) = 1.0;

  for (std::size_t e = 0; e < elements.size(); ++e) {
    if (const auto* eom = std::get_if<RfWaveform>(&elements[e])) {
      const auto c = eom_coefficients(*eom, cfg.grid(), max_order, samples);
      if (dim > 2 * max_order + 1) throw std::invalid_argument("computational_block: window wider than the coefficient range");
      const bool last = (e + 1 == elements.size());
      Eigen::MatrixX2cd next = Eigen::MatrixX2cd::Zero(dim, 2);
      const int row_lo = last ? window.offset(0) : 0;
      const int row_hi = last ? window.offset(1) : dim - 1;
      for (int m = row_lo; m <= row_hi; ++m) {
        const int k_lo = std::max(0, m - max_order);
        const int k_hi = std::min(dim - 1, m + max_order);
        cplx acc0{}, acc1{};
        for (int k = k_lo; k <= k_hi; ++k) {
          const cplx ck = c(m - k);
          acc0 += ck * cols(k, 0);
          acc1 += ck * cols(k, 1);
        }
        next(m, 0) = acc0;
        next(m, 1) = acc1;
      }
      cols = std::move(next);
    } else {
      const auto& shaper = std::get<ShaperPhases>(elements[e]);
      for (int k = window.lo; k <= window.hi; ++k) {
        cols.row(window.offset(k)) *= std::polar(1.0, shaper.phase_at(k));
      }
    }
  }
  ComputationalGate g;
  g.w = cols.middleRows(window.offset(0), 2);
  return g;
}

ComputationalGate computational_block(const QfpConfig& cfg) {
  const ModeWindow window = default_window(cfg);
  return computational_block(cfg, window, default_max_order(window));
}

double unitarity_defect(const TruncatedMultiport& v, int guard) {
  if (guard < 0 || guard >= v.window.half_width()) {
    throw std::invalid_argument("unitarity_defect: guard must lie in [0, half_width)");
  }
  double defect = 0.0;
  for (int b = v.window.lo + guard; b <= v.window.hi - guard; ++b) {
    const auto i = v.window.offset(b);
    defect = std::max(defect, std::abs(v.matrix.col(i).squaredNorm() - 1.0));
    defect = std::max(defect, std::abs(v.matrix.row(i).squaredNorm() - 1.0));
  }
  return defect;
}

}  // namespace qfp
