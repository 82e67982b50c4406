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

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "nullwave/fields.hpp"
#include "nullwave/system_core.hpp"

namespace nullwave::cli {

inline constexpr const char* kExperiments[] = {"validate", "picard",      "estimates", "stability",
                                              "glue",     "wave-bridge", "blowup"};

bool is_experiment(const std::string& name) noexcept;

struct GridConfig {
  double dx = 1e-3;
  double dt = 1e-3;
  std::optional<double> horizon;  // default: T*, or 1 without a triangle
  double padding = 0.05;
};

struct Tolerances {
  double picard = 1e-10;  // relative to sum_i eps_i
  int max_iter = 60;
  double quadrature = 1e-3;
  double ratio_slack = 0.05;
  double norm_identity = 1e-12;
  double riccati = 1e-2;
  double stability_slack = 0.1;
  double glue_mismatch = 1e-6;
  double glue_consistency = 1e-8;
  double blowup_threshold = 1e6;
  double divergence_factor = 1e6;
  double wave_ratio_lo = 0.4;
  double wave_ratio_hi = 0.7;
  double wave_control_floor = 0.5;
};

struct Perturbation {
  int component = 0;  // zero-based
  double l1 = 1e-3;
};

struct EstimatesConfig {
  std::optional<geometry::Interval> support;  // default: hull of the data supports
  int samples = 100;
  int lemma1_samples = 50;
  int max_breaks = 6;
  int bumps = 3;
};

struct ControlConfig {
  double alpha = 1.0;
  double beta = 2.0;
};

struct WaveBridgeConfig {
  std::optional<ControlConfig> control;
  int refinements = 1;
};

struct BlowupConfig {
  std::optional<double> horizon;  // default: 10 T*, or 1 without a triangle
  std::optional<bool> expect_blow_up;
  std::optional<std::pair<double, double>> t_detect_range;
};

struct OutputConfig {
  int field_stride_x = 0;  // 0: about 100 columns
  int field_stride_t = 0;
  bool fields = true;
};

struct ExperimentConfig {
  std::string experiment;
  core::SystemSpec system = core::SystemSpec::uncoupled({0.0});
  std::vector<core::CouplingEntry> coupling;  // as listed, zero-based
  std::vector<fields::InitialDatum> data;
  GridConfig grid;
  Tolerances tolerances;
  std::uint64_t seed = 0;
  std::optional<Perturbation> perturbation;
  std::vector<geometry::Interval> partition;
  EstimatesConfig estimates;
  WaveBridgeConfig wave_bridge;
  BlowupConfig blowup;
  OutputConfig output;
};

struct Overrides {
  std::optional<std::string> experiment;
  std::optional<double> dx;
  std::optional<double> dt;
  std::optional<std::uint64_t> seed;
};

/// Malformed configuration; the message names the line and the field.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(int line, std::string field, const std::string& what);
  int line() const noexcept { return line_; }
  const std::string& field() const noexcept { return field_; }

 private:
  int line_;
  std::string field_;
};

ExperimentConfig parse_config(const std::string& text, const Overrides& overrides = {});
ExperimentConfig load_config(const std::string& path, const Overrides& overrides = {});

/// The configuration with every default filled in, as embedded in reports.
std::string resolved_config_json(const ExperimentConfig& config);

}  // namespace nullwave::cli
