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

#include <filesystem>
#include <ostream>
#include <string>
#include <vector>

#include "json.hpp"

namespace qfp {

inline constexpr const char* kToolkitVersion = "0.1.0";

enum ExitCode : int {
  kExitOk = 0,
  kExitUsage = 1,
  kExitInfeasible = 2,
  kExitSampler = 3,
  kExitIo = 4,
  /// `replay --verify` regenerated something that differs from the original.
  kExitMismatch = 5,
};

/// Everything needed to regenerate a run's outputs.
struct RunManifest {
  std::string command;
  /// Arguments after the program name, as given.
  std::vector<std::string> args;
  /// Resolved value of every option, defaults included.
  nlohmann::json parameters = nlohmann::json::object();
  std::uint64_t seed = 0;
  std::string version = kToolkitVersion;
  /// Output file names relative to the output directory.
  std::vector<std::string> outputs;
  double wall_time_s = 0.0;
};

nlohmann::json to_json(const RunManifest& m);
/// Throws FormatError on a malformed document.
RunManifest manifest_from_json(const nlohmann::json& j);

/// Throws std::runtime_error when the file cannot be read or written.
std::string read_file(const std::filesystem::path& p);
void write_file(const std::filesystem::path& p, const std::string& contents);

/// `args` excludes the program name. Returns one of ExitCode.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace qfp
