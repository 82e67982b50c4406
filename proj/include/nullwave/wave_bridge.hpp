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

#include <utility>

#include "nullwave/fields.hpp"

namespace nullwave::wave {

/// The 2x2 system  d_t u1 + c1 d_x u1 = alpha u1 u2,  d_t u2 + c2 d_x u2 = beta u1 u2
/// and whether it is a wave equation for w with u_k = d_t w - c_k d_x w.
struct WaveReduction {
  double c1 = 0.0;
  double c2 = 0.0;
  double alpha = 0.0;
  double beta = 0.0;
  bool compatible = false;  // c1^2 == c2^2 and alpha == beta
  bool normalized = false;  // compatible and c1 == -c2
  double speed_defect = 0.0;     // |c1^2 - c2^2|
  double coupling_defect = 0.0;  // |alpha - beta|
};

/// Throws ErrorCode::degenerate when c1 == c2.
WaveReduction check_compatibility(double c1, double c2, double alpha, double beta);

/// Inverts u_k = wt - c_k wx pointwise: wx = (u1 - u2) / (c2 - c1), wt = u1 + c1 wx.
struct WaveGradient {
  fields::GridField wt;
  fields::GridField wx;
};

WaveGradient reconstruct_w_gradient(const fields::GridField& u1, const fields::GridField& u2, double c1, double c2);

struct WaveResidual {
  double l1_residual = 0.0;    // || d_t wt - c^2 d_x wx - (wt^2 - c^2 wx^2) ||_{L1}
  double compat_defect = 0.0;  // || d_t wx - d_x wt ||_{L1}
};

/// Centred differences on interior nodes (one-cell margin), L1 by the
/// node-sum rule dx dt sum |.|. Throws ErrorCode::structural when the grid
/// has fewer than two cells in either direction.
WaveResidual wave_residual(const fields::GridField& wt, const fields::GridField& wx, double c_squared = 1.0);

}  // namespace nullwave::wave
