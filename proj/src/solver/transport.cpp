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

#include "nullwave/solver/transport.hpp"

#include <cmath>
#include <sstream>

#include "nullwave/error.hpp"

namespace nullwave::solver {

using fields::Grid;
using fields::GridField;
using fields::InitialDatum;

namespace {

void check_data_coverage(const InitialDatum& datum, const Grid& grid) {
  const auto support = datum.support();
  if (!support || datum.is_zero()) return;
  const double slack = 1e-9 * std::max(1.0, std::abs(grid.x0) + std::abs(grid.x_end()));
  if (support->lo < grid.x0 - slack || support->hi > grid.x_end() + slack) {
    std::ostringstream os;
    os << "datum support [" << support->lo << ", " << support->hi << "] not inside grid [" << grid.x0 << ", "
       << grid.x_end() << "]";
    throw Error(ErrorCode::coverage, os.str());
  }
}

void check_source_coverage(double c, const GridField& source) {
  if (c == 0.0) return;
  const Grid& g = source.grid();
  const int edge = c > 0.0 ? 0 : g.nx;
  for (int n = 0; n <= g.nt; ++n) {
    if (source.at(edge, n) != 0.0) {
      std::ostringstream os;
      os << "source is nonzero on the " << (c > 0.0 ? "left" : "right") << " grid edge at t = " << g.t(n)
         << "; characteristics of speed " << c << " leave the grid there";
      throw Error(ErrorCode::coverage, os.str());
    }
  }
}

void add_free_transport(double c, const InitialDatum& datum, GridField& v) {
  const Grid& g = v.grid();
  for (int n = 0; n <= g.nt; ++n) {
    const double shift = c * g.t(n);
    auto row = v.level(n);
    for (int j = 0; j <= g.nx; ++j) row[static_cast<std::size_t>(j)] += datum(g.x(j) - shift);
  }
}

// Characteristics hit nodes: I(j, n) = I(j - k, n - 1) + dt/2 (f(j - k, n - 1) + f(j, n)),
// which is the composite trapezoid rule along the characteristic term by term.
void accumulate_on_nodes(int shift, const GridField& f, GridField& integral) {
  const Grid& g = f.grid();
  const double half = 0.5 * g.dt;
  for (int n = 1; n <= g.nt; ++n) {
    const auto f_prev = f.level(n - 1);
    const auto f_now = f.level(n);
    const auto i_prev = std::span<const double>(integral.level(n - 1));
    auto i_now = integral.level(n);
    for (int j = 0; j <= g.nx; ++j) {
      const int from = j - shift;
      const bool inside = from >= 0 && from <= g.nx;
      const auto uj = static_cast<std::size_t>(j);
      const double carried = inside ? i_prev[static_cast<std::size_t>(from)] : 0.0;
      const double f_from = inside ? f_prev[static_cast<std::size_t>(from)] : 0.0;
      i_now[uj] = carried + half * (f_from + f_now[uj]);
    }
  }
}

// General Courant number: sum the trapezoid weights lag by lag. For lag k the
// foot offset c k dt / dx is the same for every j, so the interpolation
// weights are hoisted out of the inner loop.
void accumulate_interpolated(double c, const GridField& f, GridField& integral) {
  const Grid& g = f.grid();
  const double courant = c * g.dt / g.dx;
  for (int n = 1; n <= g.nt; ++n) {
    auto out = integral.level(n);
    for (int k = 0; k <= n; ++k) {
      const double weight = (k == 0 || k == n) ? 0.5 * g.dt : g.dt;
      const auto src = f.level(n - k);
      const double offset = -courant * k;
      const double base = std::floor(offset);
      const int j_shift = static_cast<int>(base);
      const double w = offset - base;
      for (int j = 0; j <= g.nx; ++j) {
        const int l = j + j_shift;
        double value = 0.0;
        if (l >= 0 && l <= g.nx) value += (1.0 - w) * src[static_cast<std::size_t>(l)];
        if (w > 0.0 && l + 1 >= 0 && l + 1 <= g.nx) value += w * src[static_cast<std::size_t>(l + 1)];
        out[static_cast<std::size_t>(j)] += weight * value;
      }
    }
  }
}

}  // namespace

bool courant_is_integral(double c, const Grid& grid) noexcept {
  const double s = c * grid.dt / grid.dx;
  return std::abs(s - std::round(s)) <= 1e-12 * std::max(1.0, std::abs(s));
}

GridField transport_solve(double c, const InitialDatum& datum, const Grid& grid) {
  if (!std::isfinite(c)) throw Error(ErrorCode::domain, "transport speed must be finite");
  check_data_coverage(datum, grid);
  GridField v(grid);
  add_free_transport(c, datum, v);
  v.check_finite();
  return v;
}

GridField transport_solve(double c, const InitialDatum& datum, const GridField& source, const Grid& grid) {
  if (!std::isfinite(c)) throw Error(ErrorCode::domain, "transport speed must be finite");
  if (!(source.grid() == grid)) throw Error(ErrorCode::structural, "source field lives on a different grid");
  check_data_coverage(datum, grid);
  check_source_coverage(c, source);
  GridField v(grid);
  if (courant_is_integral(c, grid)) {
    accumulate_on_nodes(static_cast<int>(std::lround(c * grid.dt / grid.dx)), source, v);
  } else {
    accumulate_interpolated(c, source, v);
  }
  add_free_transport(c, datum, v);
  v.check_finite();
  return v;
}

}  // namespace nullwave::solver
