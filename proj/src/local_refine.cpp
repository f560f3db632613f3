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

#include <Eigen/Dense>

#include <cmath>
#include <limits>
#include <stdexcept>

#include "qfp/optimize.hpp"

namespace qfp {
namespace {

constexpr double kArmijo = 1e-4;
constexpr int kMaxBacktracks = 40;
// Largest step along any scaled coordinate in one line search.
constexpr double kMaxStep = 0.25;
constexpr int kStallLimit = 5;

class ScaledProblem {
 public:
  ScaledProblem(const CostFn& cost, const Bounds& bounds) : cost_(cost), bounds_(bounds), x_(bounds.size()) {}

  Eigen::VectorXd to_unit(std::span<const double> x) const {
    Eigen::VectorXd u(static_cast<Eigen::Index>(x.size()));
    for (std::size_t i = 0; i < x.size(); ++i) {
      u(static_cast<Eigen::Index>(i)) = (x[i] - bounds_.lower[i]) / bounds_.range(i);
    }
    return u;
  }

  std::vector<double> to_x(const Eigen::VectorXd& u) const {
    std::vector<double> x(bounds_.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
      x[i] = bounds_.project(i, bounds_.lower[i] + u(static_cast<Eigen::Index>(i)) * bounds_.range(i));
    }
    return x;
  }

  void clamp(Eigen::VectorXd& u) const {
    for (Eigen::Index i = 0; i < u.size(); ++i) {
      if (!bounds_.periodic[static_cast<std::size_t>(i)]) u(i) = std::clamp(u(i), 0.0, 1.0);
    }
  }

  bool periodic(Eigen::Index i) const { return bounds_.periodic[static_cast<std::size_t>(i)]; }

  double operator()(const Eigen::VectorXd& u) {
    ++evaluations;
    for (std::size_t i = 0; i < x_.size(); ++i) {
      x_[i] = bounds_.project(i, bounds_.lower[i] + u(static_cast<Eigen::Index>(i)) * bounds_.range(i));
    }
    const double c = cost_(x_);
    return std::isnan(c) ? std::numeric_limits<double>::infinity() : c;
  }

  Eigen::VectorXd gradient(const Eigen::VectorXd& u, double h) {
    Eigen::VectorXd g(u.size());
    Eigen::VectorXd probe = u;
    for (Eigen::Index i = 0; i < u.size(); ++i) {
      double hi = u(i) + h;
      double lo = u(i) - h;
      if (!periodic(i)) {
        hi = std::min(hi, 1.0);
        lo = std::max(lo, 0.0);
      }
      probe(i) = hi;
      const double f_hi = (*this)(probe);
      probe(i) = lo;
      const double f_lo = (*this)(probe);
      probe(i) = u(i);
      g(i) = (std::isfinite(f_hi) && std::isfinite(f_lo) && hi > lo) ? (f_hi - f_lo) / (hi - lo) : 0.0;
    }
    return g;
  }

  long evaluations = 0;

 private:
  const CostFn& cost_;
  const Bounds& bounds_;
  std::vector<double> x_;
};

}  // namespace

RefineResult local_refine(const CostFn& cost, std::span<const double> start, const Bounds& bounds,
                          const RefineSettings& settings) {
  bounds.validate();
  if (start.size() != bounds.size()) throw std::invalid_argument("local_refine: start has wrong dimension");

  ScaledProblem problem(cost, bounds);
  Eigen::VectorXd u = problem.to_unit(start);
  problem.clamp(u);
  const Eigen::Index n = u.size();

  RefineResult result;
  {
    const double c = cost(start);
    result.start_cost = std::isnan(c) ? std::numeric_limits<double>::infinity() : c;
  }
  double f = problem(u);
  Eigen::VectorXd best_u = u;
  double best_f = f;

  if (!std::isfinite(f)) {
    result.x.assign(start.begin(), start.end());
    result.cost = result.start_cost;
    result.evaluations = problem.evaluations;
    return result;
  }

  Eigen::MatrixXd h_inv = Eigen::MatrixXd::Identity(n, n);
  bool h_is_identity = true;
  Eigen::VectorXd g = problem.gradient(u, settings.fd_step);
  int stall = 0;

  auto free_mask = [&](const Eigen::VectorXd& at, const Eigen::VectorXd& grad) {
    Eigen::VectorXd mask = Eigen::VectorXd::Ones(n);
    for (Eigen::Index i = 0; i < n; ++i) {
      if (problem.periodic(i)) continue;
      if ((at(i) <= 0.0 && grad(i) > 0.0) || (at(i) >= 1.0 && grad(i) < 0.0)) mask(i) = 0.0;
    }
    return mask;
  };

  for (int it = 0; it < settings.max_iterations; ++it) {
    result.iterations = it + 1;
    const Eigen::VectorXd mask = free_mask(u, g);
    const Eigen::VectorXd pg = g.cwiseProduct(mask);
    if (pg.lpNorm<Eigen::Infinity>() < settings.gradient_tolerance) break;

    Eigen::VectorXd d = -(h_inv * pg).cwiseProduct(mask);
    if (d.dot(pg) >= 0.0) {
      h_inv.setIdentity();
      h_is_identity = true;
      d = -pg;
    }
    const double dmax = d.lpNorm<Eigen::Infinity>();
    if (dmax > kMaxStep) d *= kMaxStep / dmax;

    double t = 1.0;
    bool accepted = false;
    Eigen::VectorXd u_new;
    double f_new = f;
    for (int ls = 0; ls < kMaxBacktracks; ++ls) {
      u_new = u + t * d;
      problem.clamp(u_new);
      f_new = problem(u_new);
      if (f_new <= f + kArmijo * pg.dot(u_new - u)) {
        accepted = true;
        break;
      }
      t *= 0.5;
    }
    if (!accepted) {
      if (!h_is_identity) {
        h_inv.setIdentity();
        h_is_identity = true;
        continue;
      }
      break;
    }

    const Eigen::VectorXd g_new = problem.gradient(u_new, settings.fd_step);
    const Eigen::VectorXd s = u_new - u;
    const Eigen::VectorXd y = g_new - g;
    const double sy = s.dot(y);
    if (sy > 1e-14) {
      const double rho = 1.0 / sy;
      const Eigen::MatrixXd left = Eigen::MatrixXd::Identity(n, n) - rho * s * y.transpose();
      h_inv = left * h_inv * left.transpose() + rho * s * s.transpose();
      h_is_identity = false;
    }

    const double decrease = f - f_new;
    u = u_new;
    f = f_new;
    g = g_new;
    if (f < best_f) {
      best_f = f;
      best_u = u;
    }
    stall = (decrease <= 1e-15 * (1.0 + std::abs(f))) ? stall + 1 : 0;
    if (stall >= kStallLimit) break;
  }

  result.x = problem.to_x(best_u);
  result.cost = best_f;
  result.evaluations = problem.evaluations;
  // The unit-range round trip can move the start by an ulp; never report a
  // point that is not strictly better than the caller's own start.
  if (best_f >= result.start_cost) {
    result.x.assign(start.begin(), start.end());
    result.cost = result.start_cost;
  }
  return result;
}

}  // namespace qfp
