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

#include <iosfwd>
#include <span>
#include <utility>

#include "nullwave/solver/picard.hpp"

namespace nullwave::cli {

/// Columns m, r_measured, r_budget, diff_triple, ratio; 17 significant
/// digits. Empty cells where a value is undefined. Runs that did not
/// converge end with a `verdict,<verdict>,,,` row.
void emit_convergence_table(std::ostream& out, const solver::PicardReport& report);

/// Columns t, max_abs_u.
void emit_growth_table(std::ostream& out, std::span<const std::pair<double, double>> curve);

}  // namespace nullwave::cli
