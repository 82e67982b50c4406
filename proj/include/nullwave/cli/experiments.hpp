// Copyright 2026 The nullwave Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <filesystem>
#include <string>

#include "nullwave/cli/config.hpp"

namespace nullwave::cli {

enum ExitStatus : int {
  kSuccess = 0,
  kConfigError = 1,
  kViolated = 2,
};

struct RunOutcome {
  int exit_code = kSuccess;
  std::string report_json;  // exactly what was written to report.json
  std::string summary;      // one line for humans
};

/// Runs the named experiment and writes report.json, tables/*.csv and
/// fields/*.csv under out_dir. Library errors raised by the configuration
/// surface as nullwave::Error; everything the experiment measures is in
/// the outcome.
RunOutcome run_experiment(const ExperimentConfig& config, const std::filesystem::path& out_dir);

}  // namespace nullwave::cli
