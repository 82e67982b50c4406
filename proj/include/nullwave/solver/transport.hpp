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

#include "nullwave/fields.hpp"

namespace nullwave::solver {

/// Solves d_t v + c d_x v = f, v(x,0) = phi on the grid nodes by
///
///   v(x, t_n) = phi(x - c t_n) + int_0^{t_n} f(x - c (t_n - s), s) ds,
///
/// with phi evaluated exactly at the foot point and the integral taken by the
/// composite trapezoid rule in s (step dt) on the bilinear interpolant of f.
/// Sources are read as zero outside the grid; a source that is nonzero on the
/// edge column its characteristics exit through is a coverage error.
fields::GridField transport_solve(double c, const fields::InitialDatum& datum, const fields::Grid& grid);
fields::GridField transport_solve(double c, const fields::InitialDatum& datum, const fields::GridField& source,
                                  const fields::Grid& grid);

/// True when c dt / dx is an integer, so characteristics connect grid nodes.
bool courant_is_integral(double c, const fields::Grid& grid) noexcept;

}  // namespace nullwave::solver
