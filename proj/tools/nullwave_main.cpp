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

// nullwave <experiment> --config <path> [--out <dir>] [--dx <v>] [--dt <v>] [--seed <n>]

#include <cstdint>
#include <cstdio>
#include <string>

#include "CLI11.hpp"
#include "nullwave/nullwave.h"

int main(int argc, char** argv) {
  CLI::App app{"Batch experiments for 1D semilinear hyperbolic systems with null coupling"};
  app.set_version_flag("--version", std::string(nw_version()));

  std::string experiment;
  std::string config;
  std::string out_dir = "out";
  double dx = 0.0;
  double dt = 0.0;
  std::uint64_t seed = 0;

  app.add_option("experiment", experiment, "Experiment to run")
      ->required()
      ->check(CLI::IsMember({"validate", "picard", "estimates", "stability", "glue", "wave-bridge", "blowup"}));
  app.add_option("--config,-c", config, "JSON experiment configuration")->required()->check(CLI::ExistingFile);
  app.add_option("--out,-o", out_dir, "Output directory")->capture_default_str();
  auto* dx_opt = app.add_option("--dx", dx, "Override the grid spacing in x")->check(CLI::PositiveNumber);
  auto* dt_opt = app.add_option("--dt", dt, "Override the time step")->check(CLI::PositiveNumber);
  auto* seed_opt = app.add_option("--seed", seed, "Override the random seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  nw_overrides ov{};
  ov.has_dx = dx_opt->count() > 0;
  ov.dx = dx;
  ov.has_dt = dt_opt->count() > 0;
  ov.dt = dt;
  ov.has_seed = seed_opt->count() > 0;
  ov.seed = seed;

  int exit_code = 1;
  const char* summary = nullptr;
  const nw_status status =
      nw_run_experiment(experiment.c_str(), config.c_str(), &ov, out_dir.c_str(), &exit_code, &summary);
  if (status != NW_OK) {
    std::fprintf(stderr, "nullwave: %s error: %s\n", nw_status_name(status), nw_last_error());
    return 1;
  }
  std::printf("%s: %s [%s]\n", experiment.c_str(), summary, exit_code == 0 ? "holds" : "VIOLATED");
  return exit_code;
}
