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

#include <complex>
#include <span>
#include <vector>

namespace qfp::detail {

/// out[j] = sum_s in[s] * exp(+2 pi i j s / N), unnormalized.
std::vector<std::complex<double>> backward_dft(std::span<const std::complex<double>> in);

bool is_power_of_two(int n);

}  // namespace qfp::detail
