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
#include <stdexcept>

#include "doctest.h"
#include "qfp/optimize.hpp"

using namespace qfp;
constexpr double kPi = std::numbers::pi;

namespace {

Bounds box(std::size_t n, double lo, double hi, bool periodic = false) {
  return Bounds{std::vector<double>(n, lo), std::vector<double>(n, hi), std::vector<bool>(n, periodic)};
}

double rastrigin(std::span<const double> x) {
  double s = 10.0 * static_cast<double>(x.size());
  for (double v : x) s += v * v - 10.0 * std::cos(2.0 * kPi * v);
  return s;
}

}  // namespace

TEST_CASE("Bounds validation and projection") {
  CHECK_THROWS_AS(Bounds({0.0}, {1.0, 2.0}, {false}).validate(), std::invalid_argument);
  CHECK_THROWS_AS(box(0, 0, 1).validate(), std::invalid_argument);
  CHECK_THROWS_AS(box(1, 1, 1).validate(), std::invalid_argument);
  CHECK_THROWS_AS(box(1, 0, INFINITY).validate(), std::invalid_argument);

  const Bounds clip = box(1, -1, 1);
  CHECK(clip.project(0, 3.0) == 1.0);
  CHECK(clip.project(0, -3.0) == -1.0);
  const Bounds wrap = box(1, 0, 2 * kPi, true);
  CHECK(wrap.project(0, 2 * kPi + 0.5) == doctest::Approx(0.5));
  CHECK(wrap.project(0, -0.5) == doctest::Approx(2 * kPi - 0.5));
  CHECK(wrap.delta(0, 0.1, 2 * kPi - 0.1) == doctest::Approx(-0.2));
  CHECK(clip.delta(0, -0.5, 0.5) == doctest::Approx(1.0));
  const std::vector<double> inside{0.3};
  const std::vector<double> outside{1.3};
  CHECK(clip.contains(inside));
  CHECK_FALSE(clip.contains(outside));
}

TEST_CASE("PsoSettings validation") {
  PsoSettings s;
  CHECK_NOTHROW(s.validate());
  s.particles = 0;
  CHECK_THROWS_AS(s.validate(), std::invalid_argument);
  s = {};
  s.iterations = -1;
  CHECK_THROWS_AS(s.validate(), std::invalid_argument);
}

TEST_CASE("PSO finds the minimum of a quadratic") {
  PsoSettings s;
  s.particles = 20;
  s.iterations = 200;
  s.seed = 9;
  const auto r = pso_minimize([](std::span<const double> x) { return (x[0] - 2) * (x[0] - 2); }, box(1, -10, 10), s);
  CHECK(std::abs(r.best[0] - 2.0) <= 1e-3);
  CHECK(r.iterations_run <= 200);
}

TEST_CASE("PSO on 2-D Rastrigin") {
  PsoSettings s;
  s.particles = 50;
  s.iterations = 500;
  s.seed = 42;
  const auto r = pso_minimize(rastrigin, box(2, -5.12, 5.12), s);
  CHECK(r.best_cost <= 1.0);
}

TEST_CASE("PSO is deterministic and its history never rises") {
  PsoSettings s;
  s.particles = 30;
  s.iterations = 150;
  s.seed = 123;
  const auto a = pso_minimize(rastrigin, box(3, -5.12, 5.12), s);
  const auto b = pso_minimize(rastrigin, box(3, -5.12, 5.12), s);
  CHECK(a.history == b.history);
  CHECK(a.best == b.best);
  for (std::size_t i = 1; i < a.history.size(); ++i) CHECK(a.history[i] <= a.history[i - 1]);
  CHECK(a.history.back() == a.best_cost);

  s.seed = 124;
  const auto c = pso_minimize(rastrigin, box(3, -5.12, 5.12), s);
  CHECK(c.history != a.history);
}

TEST_CASE("PSO respects periodic coordinates") {
  PsoSettings s;
  s.particles = 20;
  s.iterations = 200;
  // Minimum sits on the seam of a periodic coordinate.
  const auto r = pso_minimize([](std::span<const double> x) { return 1.0 - std::cos(x[0]); },
                              box(1, 0, 2 * kPi, true), s);
  CHECK(r.best_cost < 1e-6);
  CHECK(r.best[0] >= 0.0);
  CHECK(r.best[0] < 2 * kPi);
}

TEST_CASE("local_refine at an exact minimum returns it unchanged") {
  const auto cost = [](std::span<const double> x) { return (x[0] - 1) * (x[0] - 1) + (x[1] + 2) * (x[1] + 2); };
  const std::vector<double> start{1.0, -2.0};
  const auto r = local_refine(cost, start, box(2, -5, 5));
  CHECK(r.cost == r.start_cost);
  CHECK(r.x == start);
}

TEST_CASE("local_refine converges on a smooth bowl") {
  const auto cost = [](std::span<const double> x) {
    return (x[0] - 1) * (x[0] - 1) + 10 * (x[1] + 2) * (x[1] + 2) + 0.5 * x[0] * x[1];
  };
  const std::vector<double> start{3.0, 3.0};
  const auto r = local_refine(cost, start, box(2, -5, 5));
  CHECK(r.cost < r.start_cost);
  // Stationary point of the quadratic, solved by hand.
  const double x1 = -40.5 / 19.875;
  const double x0 = 1 - 0.25 * x1;
  CHECK(r.x[0] == doctest::Approx(x0).epsilon(1e-5));
  CHECK(r.x[1] == doctest::Approx(x1).epsilon(1e-5));
}

TEST_CASE("local_refine never worsens a nonsmooth cost") {
  const auto step = [](std::span<const double> x) { return x[0] < 0.3 ? 1.0 : 0.0; };
  for (double x0 : {-0.9, 0.0, 0.29, 0.31, 0.8}) {
    const std::vector<double> start{x0};
    const auto r = local_refine(step, start, box(1, -1, 1));
    CHECK(r.cost <= r.start_cost);
    CHECK(r.cost == step(r.x));
  }
  const auto kink = [](std::span<const double> x) { return std::abs(x[0] - 0.123) + std::abs(x[1]); };
  const std::vector<double> start{0.9, -0.7};
  const auto r = local_refine(kink, start, box(2, -1, 1));
  CHECK(r.cost <= r.start_cost);
}

TEST_CASE("local_refine stays inside the bounds") {
  const auto cost = [](std::span<const double> x) { return -x[0]; };
  const std::vector<double> start{0.0};
  const auto r = local_refine(cost, start, box(1, -1, 1));
  CHECK(r.x[0] <= 1.0);
  CHECK(r.cost <= -0.999);
}

TEST_CASE("mix_seed separates streams") {
  CHECK(mix_seed(1, 0) != mix_seed(1, 1));
  CHECK(mix_seed(1, 0) != mix_seed(2, 0));
  CHECK(mix_seed(7, 3) == mix_seed(7, 3));
}
