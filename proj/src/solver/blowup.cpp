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

#include "nullwave/solver/blowup.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "nullwave/error.hpp"

namespace nullwave::solver {

using fields::Grid;
using fields::InitialDatum;

namespace {

// Linear interpolation of row at x - shift; zero off the grid.
void shifted_copy(const std::vector<double>& row, const Grid& g, double shift_cells, std::vector<double>& out) {
  const double base = std::floor(-shift_cells);
  const int j_shift = static_cast<int>(base);
  const double w = -shift_cells - base;
  const int nx = g.nx;
  for (int j = 0; j <= nx; ++j) {
    const int l = j + j_shift;
    double value = 0.0;
    if (l >= 0 && l <= nx) value += (1.0 - w) * row[static_cast<std::size_t>(l)];
    if (w > 0.0 && l + 1 >= 0 && l + 1 <= nx) value += w * row[static_cast<std::size_t>(l + 1)];
    out[static_cast<std::size_t>(j)] = value;
  }
}

}  // namespace

BlowupResult blowup_probe(const core::SystemSpec& spec, std::span<const InitialDatum> data, double horizon,
                          const GridSpacing& spacing, const BlowupOptions& options) {
  const int p = spec.p();
  const auto pu = static_cast<std::size_t>(p);
  if (data.size() != pu) throw Error(ErrorCode::structural, "one datum per component required");
  if (!(horizon > 0.0)) throw Error(ErrorCode::domain, "blow-up probe needs a positive horizon");
  if (options.record_stride < 1) throw Error(ErrorCode::domain, "record stride must be positive");

  std::optional<geometry::Interval> hull;
  for (const auto& d : data) {
    if (const auto s = d.support()) {
      hull = hull ? geometry::Interval{std::min(hull->lo, s->lo), std::max(hull->hi, s->hi)} : *s;
    }
  }
  BlowupResult result;
  result.grid = cone_grid(hull.value_or(geometry::Interval{0.0, 1.0}), spec.speeds(), horizon, spacing);
  const Grid& g = result.grid;
  const std::size_t cols = g.columns();

  std::vector<std::vector<double>> u(pu, std::vector<double>(cols));
  for (std::size_t i = 0; i < pu; ++i) {
    for (int j = 0; j <= g.nx; ++j) u[i][static_cast<std::size_t>(j)] = data[i](g.x(j));
  }

  struct Term {
    int j, k;
    double a;
  };
  std::vector<std::vector<Term>> terms(pu);
  for (int i = 0; i < p; ++i) {
    for (int j = 0; j < p; ++j) {
      for (int k = 0; k < p; ++k) {
        if (const double a = spec.coupling(i, j, k); a != 0.0) terms[static_cast<std::size_t>(i)].push_back({j, k, a});
      }
    }
  }
  auto source = [&](std::size_t i, const std::vector<std::vector<double>>& state, std::size_t node) {
    double f = 0.0;
    for (const auto& term : terms[i]) {
      f -= term.a * state[static_cast<std::size_t>(term.j)][node] * state[static_cast<std::size_t>(term.k)][node];
    }
    return f;
  };
  auto max_abs = [&](const std::vector<std::vector<double>>& state) {
    double m = 0.0;
    for (const auto& row : state) {
      for (double v : row) {
        if (!std::isfinite(v)) return std::numeric_limits<double>::infinity();
        m = std::max(m, std::abs(v));
      }
    }
    return m;
  };

  result.growth_curve.emplace_back(0.0, max_abs(u));
  // feet[i][j] holds every component at the foot of characteristic i.
  std::vector<std::vector<std::vector<double>>> feet(pu, std::vector<std::vector<double>>(pu, std::vector<double>(cols)));
  std::vector<std::vector<double>> predicted(pu, std::vector<double>(cols));
  std::vector<std::vector<double>> foot_source(pu, std::vector<double>(cols));
  for (int n = 0; n < g.nt; ++n) {
    for (std::size_t i = 0; i < pu; ++i) {
      const double shift = spec.speed(static_cast<int>(i)) * g.dt / g.dx;
      for (std::size_t j = 0; j < pu; ++j) shifted_copy(u[j], g, shift, feet[i][j]);
      for (std::size_t node = 0; node < cols; ++node) {
        foot_source[i][node] = source(i, feet[i], node);
        predicted[i][node] = feet[i][i][node] + g.dt * foot_source[i][node];
      }
    }
    for (std::size_t i = 0; i < pu; ++i) {
      for (std::size_t node = 0; node < cols; ++node) {
        u[i][node] = feet[i][i][node] + 0.5 * g.dt * (foot_source[i][node] + source(i, predicted, node));
      }
    }
    const double t = g.t(n + 1);
    const double peak = max_abs(u);
    const bool blew = !(peak <= options.threshold);
    if (blew || (n + 1) % options.record_stride == 0 || n + 1 == g.nt) result.growth_curve.emplace_back(t, peak);
    if (blew) {
      result.blew_up = true;
      result.t_detect = t;
      break;
    }
  }
  return result;
}

}  // namespace nullwave::solver
