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

// JSON forms of configurations, gate reports and tomography datasets. The
// layouts are described by the files in schemas/.

#pragma once

#include <string>

#include "json.hpp"
#include "qfp/multiport.hpp"
#include "qfp/synthesis.hpp"
#include "qfp/tomography.hpp"

namespace qfp {

/// Thrown on structurally invalid JSON documents.
class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

nlohmann::json to_json(const QfpConfig& cfg);
QfpConfig config_from_json(const nlohmann::json& j);

nlohmann::json to_json(const GateReport& r);
GateReport report_from_json(const nlohmann::json& j);

nlohmann::json to_json(const TomographyDataset& d);
TomographyDataset dataset_from_json(const nlohmann::json& j);

/// Seventeen significant digits, enough to read back the same double.
std::string format_double(double v);

}  // namespace qfp
