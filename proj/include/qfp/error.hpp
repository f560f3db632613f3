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

#pragma once

#include <stdexcept>
#include <string>

namespace qfp {

/// Fourier series truncated so far that a noticeable fraction of the
/// modulated power falls outside the retained sidebands.
class TruncationError : public std::runtime_error {
 public:
  TruncationError(const std::string& what, double retained_power)
      : std::runtime_error(what), retained_power_(retained_power) {}

  double retained_power() const noexcept { return retained_power_; }

 private:
  double retained_power_;
};

/// Raised when a metric is evaluated where it is mathematically undefined
/// (e.g. gate fidelity of an all-zero transformation).
class UndefinedMetricError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// MCMC chain that failed its post-adaptation acceptance check.
class SamplerDiagnosticError : public std::runtime_error {
 public:
  SamplerDiagnosticError(const std::string& what, double acceptance_rate)
      : std::runtime_error(what), acceptance_rate_(acceptance_rate) {}

  double acceptance_rate() const noexcept { return acceptance_rate_; }

 private:
  double acceptance_rate_;
};

}  // namespace qfp
