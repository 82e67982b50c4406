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

#include "nullwave/solver/picard.hpp"

namespace nullwave::solver {

struct StabilityReport {
  double data_distance = 0.0;          // sum_i ||phi_i - phibar_i||_{L1}, exact
  double sup_solution_distance = 0.0;  // max over grid levels of sum_i ||u_i - ubar_i||_{L1}
  double sup_time = 0.0;               // level where the sup is attained
  double k2_observed = 1.0;            // 1 by convention when the data coincide
  std::optional<double> k2_predicted;  // 1 / (1 - 4 gamma E0), E0 the larger of the two masses
  Verdict verdict = Verdict::converged;
  PicardReport run;
  PicardReport run_bar;
};

/// Solves with both data sets on the same grid and compares the solutions
/// level by level over the whole grid window. If either run fails to converge
/// the distances are NaN and the failing verdict is propagated.
StabilityReport stability_experiment(const core::SystemSpec& spec, std::span<const fields::InitialDatum> data,
                                     std::span<const fields::InitialDatum> data_bar,
                                     const std::optional<geometry::TriangleDomain>& domain,
                                     const fields::Grid& grid, const PicardOptions& options = {});

/// Fixed points reached from the two starting guesses (free transport, zero).
struct UniquenessReport {
  double gap = 0.0;  // sum_i |||u_i - ubar_i||| = sum_i ||f_i - fbar_i||
  PicardReport from_free_transport;
  PicardReport from_zero;
};

UniquenessReport uniqueness_check(const core::SystemSpec& spec, std::span<const fields::InitialDatum> data,
                                  const std::optional<geometry::TriangleDomain>& domain, const fields::Grid& grid,
                                  const PicardOptions& options = {});

}  // namespace nullwave::solver
