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

#include "nullwave/solver/glue.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <sstream>

#include "nullwave/error.hpp"

namespace nullwave::solver {

using fields::Grid;
using fields::GridField;
using fields::InitialDatum;
using geometry::Interval;

fields::Grid cone_grid(Interval support, std::span<const double> speeds, double horizon, const GridSpacing& spacing) {
  if (!(spacing.padding >= 0.0)) throw Error(ErrorCode::domain, "padding must be non-negative");
  const auto window = geometry::cone_window(support, speeds, horizon).padded(spacing.padding);
  return Grid::covering(window, horizon, spacing.dx, spacing.dt);
}

namespace {

void check_partition_covers(std::span<const Interval> partition, std::span<const InitialDatum> data) {
  std::vector<Interval> parts(partition.begin(), partition.end());
  for (const auto& part : parts) {
    if (!(part.hi > part.lo)) throw Error(ErrorCode::precondition, "partition intervals must be non-degenerate");
  }
  std::sort(parts.begin(), parts.end(), [](const Interval& l, const Interval& r) { return l.lo < r.lo; });
  for (const auto& d : data) {
    const auto s = d.support();
    if (!s || d.is_zero()) continue;
    double reached = s->lo;
    for (const auto& part : parts) {
      if (part.lo <= reached && part.hi > reached) reached = part.hi;
    }
    bool covered = reached >= s->hi;
    if (!covered) {
      // Closed intervals starting exactly at the support start.
      covered = std::any_of(parts.begin(), parts.end(), [&](const Interval& part) {
        return part.lo <= s->lo && part.hi >= s->hi;
      });
    }
    if (!covered) {
      std::ostringstream os;
      os << "partition does not cover the datum support [" << s->lo << ", " << s->hi << "]";
      throw Error(ErrorCode::precondition, os.str());
    }
  }
}

bool within(double lo, double x, double hi) {
  const double eps = 1e-9 * std::max({1.0, std::abs(lo), std::abs(hi)});
  return lo - eps <= x && x <= hi + eps;
}

}  // namespace

GlueResult glue_solve(const core::SystemSpec& spec, std::span<const Interval> partition,
                      std::span<const InitialDatum> data, double horizon, const GridSpacing& spacing,
                      const GlueOptions& options) {
  const int p = spec.p();
  if (static_cast<int>(data.size()) != p) throw Error(ErrorCode::structural, "one datum per component required");
  if (partition.empty()) throw Error(ErrorCode::precondition, "partition is empty");
  check_partition_covers(partition, data);

  Interval hull = partition.front();
  for (const auto& part : partition) hull = {std::min(hull.lo, part.lo), std::max(hull.hi, part.hi)};
  const auto speeds = spec.speeds();
  GlueResult result;
  result.grid = cone_grid(hull, speeds, horizon, spacing);
  const Grid& g = result.grid;

  auto mono = picard_solve(spec, data, std::nullopt, g, options.picard);
  result.monolithic = std::move(mono.fields);

  struct Piece {
    Interval part;
    Grid grid;
    int offset = 0;
    std::vector<GridField> fields;
    std::optional<geometry::TriangleDomain> triangle;
  };
  std::vector<Piece> pieces;
  for (const auto& part : partition) {
    std::vector<InitialDatum> local;
    bool any = false;
    for (const auto& d : data) {
      local.push_back(d.restricted(part));
      any = any || !local.back().is_zero();
    }
    Piece piece;
    piece.part = part;
    const auto window = geometry::cone_window(part, speeds, horizon).padded(spacing.padding);
    piece.grid = Grid::covering_aligned(window, horizon, spacing.dx, spacing.dt, g.x0);
    piece.grid.nt = g.nt;
    piece.offset = static_cast<int>(std::lround((piece.grid.x0 - g.x0) / g.dx));
    auto sub = picard_solve(spec, local, std::nullopt, piece.grid, options.picard);
    result.subproblems.push_back(
        {part, piece.grid, sub.report.verdict, static_cast<int>(sub.report.iterations.size())});
    if (!any) continue;
    piece.fields = std::move(sub.fields);
    if (spec.has_distinct_speeds()) piece.triangle = geometry::triangle(part, speeds);
    pieces.push_back(std::move(piece));
  }

  const double c_min = spec.min_speed();
  const double c_max = spec.max_speed();
  result.glued.assign(static_cast<std::size_t>(p), GridField(g));
  std::vector<char> determined(g.node_count(), 0);
  std::size_t determined_count = 0;
  std::vector<const Piece*> in_cone;
  for (int n = 0; n <= g.nt; ++n) {
    const double t = g.t(n);
    for (int j = 0; j <= g.nx; ++j) {
      const double x = g.x(j);
      in_cone.clear();
      for (const auto& piece : pieces) {
        if (within(piece.part.lo + c_min * t, x, piece.part.hi + c_max * t)) in_cone.push_back(&piece);
      }
      auto value = [&](const Piece& piece, int i) {
        const int local = j - piece.offset;
        if (local < 0 || local > piece.grid.nx) return 0.0;
        return piece.fields[static_cast<std::size_t>(i)].at(local, n);
      };
      const std::size_t node = static_cast<std::size_t>(n) * g.columns() + static_cast<std::size_t>(j);
      if (in_cone.size() <= 1) {
        for (int i = 0; i < p; ++i) {
          double sum = 0.0;
          for (const auto& piece : pieces) sum += value(piece, i);
          result.glued[static_cast<std::size_t>(i)].at(j, n) = sum;
        }
        determined[node] = 1;
        ++determined_count;
        continue;
      }
      const Piece* chosen = nullptr;
      for (const Piece* piece : in_cone) {
        if (!piece->triangle) continue;
        const auto& tri = *piece->triangle;
        const auto slice = tri.slice(t);
        if (!within(0.0, t, tri.t_star) || !within(slice.lo, x, slice.hi)) continue;
        if (!chosen) {
          chosen = piece;
          continue;
        }
        for (int i = 0; i < p; ++i) {
          const double u = value(*chosen, i);
          const double w = value(*piece, i);
          if (std::abs(u - w) > options.consistency_tolerance * std::max(1.0, std::abs(u))) {
            std::ostringstream os;
            os << "sub-solutions on [" << chosen->part.lo << ", " << chosen->part.hi << "] and [" << piece->part.lo
               << ", " << piece->part.hi << "] disagree at (x, t) = (" << x << ", " << t << ") in component "
               << i + 1 << ": " << u << " vs " << w;
            throw Error(ErrorCode::gluing, os.str());
          }
        }
      }
      if (!chosen) continue;
      for (int i = 0; i < p; ++i) result.glued[static_cast<std::size_t>(i)].at(j, n) = value(*chosen, i);
      determined[node] = 1;
      ++determined_count;
    }
  }
  result.determined_fraction = static_cast<double>(determined_count) / static_cast<double>(g.node_count());

  for (int n = 0; n <= g.nt; ++n) {
    double level = 0.0;
    for (int i = 0; i < p; ++i) {
      const auto& glued = result.glued[static_cast<std::size_t>(i)];
      const auto& direct = result.monolithic[static_cast<std::size_t>(i)];
      for (int j = 0; j <= g.nx; ++j) {
        if (determined[static_cast<std::size_t>(n) * g.columns() + static_cast<std::size_t>(j)]) {
          level += std::abs(glued.at(j, n) - direct.at(j, n));
        }
      }
    }
    result.mismatch = std::max(result.mismatch, level * g.dx);
  }
  return result;
}

}  // namespace nullwave::solver
