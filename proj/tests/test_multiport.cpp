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

#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "qfp/error.hpp"
#include "qfp/multiport.hpp"

using namespace qfp;
constexpr double kPi = std::numbers::pi;

namespace {

QfpConfig random_config(std::mt19937_64& rng, int eoms, int harmonics) {
  std::uniform_real_distribution<double> index(0.0, 2.0);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::uniform_real_distribution<double> phase(0.0, 2.0 * kPi);
  std::vector<Element> elements;
  for (int e = 0; e < eoms; ++e) {
    std::vector<Harmonic> hs;
    for (int h = 1; h <= harmonics; ++h) hs.push_back({h, index(rng), unit(rng)});
    elements.emplace_back(RfWaveform(hs));
    if (e + 1 == eoms) break;
    std::vector<double> phases(8);
    for (double& p : phases) p = phase(rng);
    elements.emplace_back(ShaperPhases(-3, phases));
  }
  return QfpConfig({}, elements);
}

}  // namespace

TEST_CASE("wrap_delay maps into [0, 1)") {
  CHECK(wrap_delay(0.25) == 0.25);
  CHECK(wrap_delay(1.25) == doctest::Approx(0.25));
  CHECK(wrap_delay(-0.25) == doctest::Approx(0.75));
  CHECK(wrap_delay(1.0) == 0.0);
  CHECK(wrap_delay(-1e-300) < 1.0);
}

TEST_CASE("RfWaveform validation") {
  CHECK_THROWS_AS(RfWaveform({{0, 1.0, 0.0}}), std::invalid_argument);
  CHECK_THROWS_AS(RfWaveform({{1, -0.1, 0.0}}), std::invalid_argument);
  CHECK_THROWS_AS(RfWaveform({{1, 1.0, 0.0}, {1, 0.5, 0.0}}), std::invalid_argument);
  CHECK_THROWS_AS(RfWaveform({{1, NAN, 0.0}}), std::invalid_argument);
  const RfWaveform w({{1, 1.0, 1.5}, {2, 0.5, -0.25}});
  CHECK(w.harmonics()[0].delay == doctest::Approx(0.5));
  CHECK(w.harmonics()[1].delay == doctest::Approx(0.75));
  CHECK(w.total_index() == doctest::Approx(1.5));
}

TEST_CASE("ModeWindow and QfpConfig validation") {
  CHECK_THROWS_AS(ModeWindow(1, 3), std::invalid_argument);
  CHECK_THROWS_AS(ModeWindow(-3, 0), std::invalid_argument);
  const auto w = ModeWindow::symmetric(5);
  CHECK(w.lo == -5);
  CHECK(w.hi == 6);
  CHECK(w.dimension() == 12);
  CHECK(w.half_width() == 5);
  CHECK(w.offset(0) == 5);
  CHECK_THROWS_AS(FrequencyGrid(0.0, 0.0), std::invalid_argument);

  const RfWaveform e = RfWaveform::single_tone(1.0);
  CHECK_THROWS_AS(QfpConfig({}, {e, e}), std::invalid_argument);
  CHECK_THROWS_AS(QfpConfig({}, {e, e, e}), std::invalid_argument);
  CHECK_THROWS_AS(QfpConfig({}, {ShaperPhases::flat()}), std::invalid_argument);
  const QfpConfig ok({}, {e, ShaperPhases::flat(), RfWaveform::single_tone(2.5)});
  CHECK(ok.eom_count() == 2);
  CHECK(ok.shaper_count() == 1);
  CHECK(ok.max_total_index() == doctest::Approx(2.5));
}

TEST_CASE("single-tone coefficients follow Jacobi-Anger") {
  for (double theta : {0.1, 0.829, 1.4347, 3.9}) {
    const auto c = eom_coefficients(RfWaveform::single_tone(theta), {}, 24);
    for (int j = -12; j <= 12; ++j) {
      // c_j = J_{-j}(theta) for the exp(+i j dw t) analysis kernel.
      CHECK(std::abs(c(j) - oracle::bessel_j(-j, theta)) <= 1e-10);
      CHECK(std::abs(std::abs(c(j)) - std::abs(oracle::bessel_j(j, theta))) <= 1e-10);
    }
    CHECK(c.retained_power() == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("a delay multiplies c_j by exp(2 pi i j d)") {
  const double d = 0.3;
  const auto c0 = eom_coefficients(RfWaveform::single_tone(1.3, 0.0), {}, 16);
  const auto cd = eom_coefficients(RfWaveform::single_tone(1.3, d), {}, 16);
  for (int j = -10; j <= 10; ++j) {
    CHECK(std::abs(cd(j) - c0(j) * std::polar(1.0, 2.0 * kPi * j * d)) <= 1e-12);
  }
}

TEST_CASE("two-tone coefficients match the double Bessel sum") {
  const RfWaveform w({{1, 1.1, 0.0}, {2, 0.7, 0.0}});
  const auto c = eom_coefficients(w, {}, 30);
  for (int j = -12; j <= 12; ++j) CHECK(std::abs(c(j) - oracle::two_tone_coefficient(j, 1.1, 0.7)) <= 1e-10);
}

TEST_CASE("coefficient series truncation and argument errors") {
  CHECK_THROWS_AS(eom_coefficients(RfWaveform::single_tone(3.9), {}, 2), TruncationError);
  try {
    eom_coefficients(RfWaveform::single_tone(3.9), {}, 2);
  } catch (const TruncationError& e) {
    CHECK(e.retained_power() < kMinRetainedPower);
  }
  CHECK_THROWS_AS(eom_coefficients(RfWaveform::single_tone(1.0), {}, 0), std::invalid_argument);
  CHECK_THROWS_AS(eom_coefficients(RfWaveform::single_tone(1.0), {}, 8, 100), std::invalid_argument);
  CHECK_THROWS_AS(eom_coefficients(RfWaveform::single_tone(1.0), {}, 8, 16), std::invalid_argument);
  const auto c = eom_coefficients(RfWaveform::single_tone(1.0), {}, 4, 64);
  CHECK(c(5) == cplx{});
  CHECK(c(-5) == cplx{});
}

TEST_CASE("coefficient samples converge with quadrature size") {
  const RfWaveform w({{1, 2.0, 0.1}, {2, 1.0, 0.4}});
  const auto fine = eom_coefficients(w, {}, 20, 4096);
  const auto coarse = eom_coefficients(w, {}, 20, 256);
  for (int j = -20; j <= 20; ++j) CHECK(std::abs(fine(j) - coarse(j)) <= 1e-13);
}

TEST_CASE("waveform evaluation respects the delay") {
  const FrequencyGrid grid;
  const auto w = RfWaveform::single_tone(1.5, 0.25);
  CHECK(eval_waveform(w, grid, 0.25 * grid.period()) == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(eval_waveform(w, grid, 0.5 * grid.period()) == doctest::Approx(1.5));
}

TEST_CASE("eom_matrix is banded Toeplitz") {
  const auto c = eom_coefficients(RfWaveform::single_tone(0.9, 0.2), {}, 15);
  const auto v = eom_matrix(c, ModeWindow::symmetric(5));
  for (int m = -5; m <= 6; ++m) {
    for (int n = -5; n <= 6; ++n) CHECK(v.at(m, n) == c(m - n));
  }
  CHECK_THROWS_AS(eom_matrix(eom_coefficients(RfWaveform::single_tone(0.5), {}, 3), ModeWindow::symmetric(5)),
                  std::invalid_argument);
}

TEST_CASE("shaper phases extend flat past both ends and add the ramp") {
  const ShaperPhases s(-1, {0.1, 0.2, 0.3}, 0.5);
  CHECK(s.hi() == 1);
  CHECK(s.phase_at(-4) == doctest::Approx(0.1 - 2.0));
  CHECK(s.phase_at(0) == doctest::Approx(0.2));
  CHECK(s.phase_at(5) == doctest::Approx(0.3 + 2.5));
  const auto m = shaper_matrix(s, ModeWindow::symmetric(3));
  for (int k = -3; k <= 4; ++k) CHECK(std::abs(m.at(k, k) - std::polar(1.0, s.phase_at(k))) < 1e-15);
  CHECK(m.matrix.cwiseAbs().sum() == doctest::Approx(8.0));
  CHECK(shaper_matrix(s).window.dimension() == 3);
  CHECK_THROWS_AS(ShaperPhases(0, {}), std::invalid_argument);
}

TEST_CASE("cascade applies the first element first") {
  const auto window = ModeWindow::symmetric(12);
  const int k = default_max_order(window);
  const RfWaveform e1 = RfWaveform::single_tone(0.8, 0.1);
  const RfWaveform e2 = RfWaveform::single_tone(1.2, 0.6);
  const ShaperPhases s(-2, {0.3, 1.1, 0.0, 2.0, 0.7, 1.9});
  const QfpConfig cfg({}, {e1, s, e2});
  const Eigen::MatrixXcd expected = eom_matrix(eom_coefficients(e2, {}, k), window).matrix *
                                    shaper_matrix(s, window).matrix *
                                    eom_matrix(eom_coefficients(e1, {}, k), window).matrix;
  CHECK((cascade(cfg, window, k).matrix - expected).cwiseAbs().maxCoeff() < 1e-14);
}

TEST_CASE("computational_block agrees with the full cascade") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 20; ++trial) {
    const auto cfg = random_config(rng, 2 + trial % 2, 1 + trial % 2);
    const auto full = extract_computational(cascade(cfg));
    const auto fast = computational_block(cfg);
    CHECK((full.w - fast.w).cwiseAbs().maxCoeff() < 1e-12);
  }
}

TEST_CASE("default window sizing") {
  CHECK(default_half_width(0.0) == 16);
  CHECK(default_half_width(2.0) == 16);
  CHECK(default_half_width(3.9) == 24);
  const QfpConfig cfg({}, {RfWaveform::single_tone(3.9), ShaperPhases::flat(), RfWaveform::single_tone(0.1)});
  CHECK(default_window(cfg) == ModeWindow::symmetric(24));
}

TEST_CASE("computational block converges with window size") {
  const QfpConfig cfg({}, {RfWaveform::single_tone(3.5, 0.1), ShaperPhases(-2, {0.4, 1.0, 0.0, 2.2, 0.9, 3.0}),
                           RfWaveform::single_tone(3.5, 0.6)});
  const auto ref = computational_block(cfg, ModeWindow::symmetric(40), 81);
  const auto def = computational_block(cfg);
  CHECK((ref.w - def.w).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("interior unitarity defect does not grow with the window") {
  const QfpConfig cfg({}, {RfWaveform::single_tone(1.5, 0.2), ShaperPhases(-2, {0.4, 1.0, 0.0, 2.2, 0.9, 3.0}),
                           RfWaveform::single_tone(1.1, 0.7)});
  const int guard = 8;
  double previous = 1.0;
  for (int hw = 10; hw <= 30; hw += 4) {
    const auto window = ModeWindow::symmetric(hw);
    const double d = unitarity_defect(cascade(cfg, window, default_max_order(window)), guard);
    CHECK(d <= previous + 1e-12);
    previous = d;
  }
  CHECK(previous < 1e-9);
  const auto v = cascade(cfg);
  CHECK(unitarity_defect(v, v.window.half_width() / 2) < 1e-12);
  CHECK_THROWS_AS(unitarity_defect(v, v.window.half_width()), std::invalid_argument);
  CHECK_THROWS_AS(unitarity_defect(v, -1), std::invalid_argument);
}

TEST_CASE("computational block is subunitary") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 100; ++trial) {
    const auto cfg = random_config(rng, 2 + trial % 2, 1 + trial % 2);
    CHECK(computational_block(cfg).max_singular_value() <= 1.0 + 1e-9);
  }
}

TEST_CASE("undriven cascade is the identity") {
  const QfpConfig cfg({}, {RfWaveform::single_tone(0.0), ShaperPhases::flat(), RfWaveform::single_tone(0.0)});
  const auto w = computational_block(cfg);
  CHECK((w.w - Matrix2c::Identity()).cwiseAbs().maxCoeff() < 1e-15);
}
