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

#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "nullwave/solver/glue.hpp"

namespace nullwave::solver {

struct BlowupOptions {
  double threshold = 1e6;  // max|u| above this counts as blow-up
  int record_stride = 1;   // growth curve sampled every this many steps
};

struct BlowupResult {
  bool blew_up = false;
  std::optional<double> t_detect;
  std::vector<std::pair<double, double>> growth_curve;  // (t, max_i max_x |u_i|)
  fields::Grid grid;
};

/// Marches the full system in time without any smallness guard: each step
/// takes u_i from its characteristic foot (linear interpolation) and adds the
/// quadratic source with Heun's rule along the characteristic. Resonant
/// systems are accepted. Stops at the horizon or once max|u| exceeds the
/// threshold or turns non-finite.
BlowupResult blowup_probe(const core::SystemSpec& spec, std::span<const fields::InitialDatum> data, double horizon,
                          const GridSpacing& spacing, const BlowupOptions& options = {});

}  // namespace nullwave::solver
