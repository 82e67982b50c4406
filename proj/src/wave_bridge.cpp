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

#include "nullwave/wave_bridge.hpp"

#include <cmath>

#include "nullwave/error.hpp"

namespace nullwave::wave {

using fields::GridField;

WaveReduction check_compatibility(double c1, double c2, double alpha, double beta) {
  if (c1 == c2) throw Error(ErrorCode::degenerate, "equal speeds: u1, u2 do not determine the gradient of w");
  WaveReduction r{c1, c2, alpha, beta};
  r.speed_defect = std::abs(c1 * c1 - c2 * c2);
  r.coupling_defect = std::abs(alpha - beta);
  r.compatible = c1 * c1 == c2 * c2 && alpha == beta;
  r.normalized = r.compatible && c1 == -c2;
  return r;
}

WaveGradient reconstruct_w_gradient(const GridField& u1, const GridField& u2, double c1, double c2) {
  if (c1 == c2) throw Error(ErrorCode::degenerate, "singular reconstruction: c1 == c2");
  if (!(u1.grid() == u2.grid())) throw Error(ErrorCode::structural, "u1 and u2 live on different grids");
  WaveGradient out{GridField(u1.grid()), GridField(u1.grid())};
  const auto a = u1.samples();
  const auto b = u2.samples();
  auto wt = out.wt.samples();
  auto wx = out.wx.samples();
  const double inv = 1.0 / (c2 - c1);
  for (std::size_t n = 0; n < a.size(); ++n) {
    wx[n] = (a[n] - b[n]) * inv;
    wt[n] = a[n] + c1 * wx[n];
  }
  return out;
}

WaveResidual wave_residual(const GridField& wt, const GridField& wx, double c_squared) {
  if (!(wt.grid() == wx.grid())) throw Error(ErrorCode::structural, "wt and wx live on different grids");
  const auto& g = wt.grid();
  if (g.nx < 2 || g.nt < 2) throw Error(ErrorCode::structural, "grid too small for centred differences");
  const double hx = 0.5 / g.dx;
  const double ht = 0.5 / g.dt;
  WaveResidual out;
  for (int n = 1; n < g.nt; ++n) {
    for (int j = 1; j < g.nx; ++j) {
      const double dt_wt = (wt.at(j, n + 1) - wt.at(j, n - 1)) * ht;
      const double dx_wx = (wx.at(j + 1, n) - wx.at(j - 1, n)) * hx;
      const double dt_wx = (wx.at(j, n + 1) - wx.at(j, n - 1)) * ht;
      const double dx_wt = (wt.at(j + 1, n) - wt.at(j - 1, n)) * hx;
      const double a = wt.at(j, n);
      const double b = wx.at(j, n);
      out.l1_residual += std::abs(dt_wt - c_squared * dx_wx - (a * a - c_squared * b * b));
      out.compat_defect += std::abs(dt_wx - dx_wt);
    }
  }
  out.l1_residual *= g.dx * g.dt;
  out.compat_defect *= g.dx * g.dt;
  return out;
}

}  // namespace nullwave::wave
