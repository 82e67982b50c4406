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

/// Closed-form solution of the scalar resonant equation u_t + c u_x = lambda u^2:
///
///   u(x,t) = phi(x - ct) / (1 - lambda t phi(x - ct)).
///
/// Throws ErrorCode::blowup_point when the denominator is within 1e-12 of zero.
double riccati_oracle(const fields::InitialDatum& datum, double c, double lambda, double x, double t);

}  // namespace nullwave::solver
