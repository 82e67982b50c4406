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

#include "nullwave/solver/estimates.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "nullwave/error.hpp"
#include "nullwave/solver/transport.hpp"

namespace nullwave::solver {

using fields::Grid;
using fields::GridField;
using fields::InitialDatum;
using geometry::TriangleDomain;

namespace {

GridField solve(const TransportPiece& piece, double c, const Grid& grid) {
  return piece.source ? transport_solve(c, piece.datum, *piece.source, grid) : transport_solve(c, piece.datum, grid);
}

fields::TripleNorm norm_of(const TransportPiece& piece, const TriangleDomain& domain) {
  return piece.source ? fields::triple_norm(*piece.source, piece.datum, domain) : fields::triple_norm(piece.datum);
}

}  // namespace

EstimateCheck verify_lemma1(const TransportPiece& piece, double c, const TriangleDomain& domain, const Grid& grid,
                            double tolerance) {
  const auto v = solve(piece, c, grid);
  EstimateCheck check;
  check.lhs = fields::l1_over_triangle(v, domain);
  check.rhs = domain.t_star * norm_of(piece, domain).total;
  check.holds = check.lhs <= check.rhs * (1.0 + tolerance);
  return check;
}

EstimateCheck verify_bilinear(const TransportPiece& vj, const TransportPiece& vk, double cj, double ck,
                              const TriangleDomain& domain, const Grid& grid, double tolerance) {
  if (cj == ck) throw Error(ErrorCode::precondition, "bilinear estimate needs distinct speeds");
  const auto fj = solve(vj, cj, grid);
  const auto fk = solve(vk, ck, grid);
  EstimateCheck check;
  check.lhs = fields::product_l1_over_triangle(fj, fk, domain);
  check.rhs = norm_of(vj, domain).total * norm_of(vk, domain).total / std::abs(ck - cj);
  check.holds = check.lhs <= check.rhs * (1.0 + tolerance);
  return check;
}

NormEquivalence verify_norm_equivalence(const TransportPiece& piece, double c, const TriangleDomain& domain,
                                        const Grid& grid, double identity_tolerance) {
  // The solve itself only enforces the coverage preconditions here.
  (void)solve(piece, c, grid);
  const auto triple = norm_of(piece, domain);
  NormEquivalence out;
  out.residual_l1 = triple.source_part;
  out.triple = triple.total;
  out.eps = fields::datum_l1(piece.datum);
  out.identity_defect = std::abs(out.residual_l1 - (out.triple - out.eps));
  const double scale = std::max(1.0, out.triple);
  out.holds = out.identity_defect <= identity_tolerance * scale && out.residual_l1 <= out.triple &&
              out.triple - out.eps <= out.residual_l1 + identity_tolerance * scale;
  return out;
}

double SampleGenerator::uniform(double lo, double hi) {
  const double unit = static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  return lo + (hi - lo) * unit;
}

InitialDatum SampleGenerator::datum(fields::Interval support, int max_breaks, double amplitude) {
  const double len = support.length();
  const double width = uniform(0.2, 1.0) * len;
  const double lo = support.lo + uniform(0.0, len - width);
  const double hi = lo + width;
  const int breaks = 1 + static_cast<int>(uniform(0.0, static_cast<double>(std::max(1, max_breaks))));
  const bool signed_values = uniform(0.0, 1.0) < 0.5;
  std::vector<double> xs;
  for (int b = 0; b < breaks; ++b) xs.push_back(uniform(lo, hi));
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
  std::vector<fields::Breakpoint> pts{{lo, 0.0}};
  for (double x : xs) {
    if (x <= pts.back().x || x >= hi) continue;
    pts.push_back({x, signed_values ? uniform(-amplitude, amplitude) : uniform(0.0, amplitude)});
  }
  pts.push_back({hi, 0.0});
  return InitialDatum::from_breakpoints(std::move(pts));
}

GridField SampleGenerator::source(const Grid& grid, const TriangleDomain& domain, int bumps, double amplitude) {
  struct Bump {
    double xc, tc, rx, rt, amp;
  };
  const int count = 1 + static_cast<int>(uniform(0.0, static_cast<double>(std::max(1, bumps))));
  const double margin = 2.0 * grid.dx;
  std::vector<Bump> list;
  for (int b = 0; b < count; ++b) {
    Bump bump{};
    bump.tc = uniform(0.0, domain.t_star);
    const auto slice = domain.slice(bump.tc);
    bump.xc = uniform(slice.lo, std::max(slice.lo, slice.hi));
    const double room = std::min(bump.xc - grid.x0, grid.x_end() - bump.xc) - margin;
    bump.rx = std::min(uniform(0.05, 0.4) * (domain.b - domain.a), room);
    bump.rt = uniform(0.05, 0.5) * domain.t_star;
    bump.amp = uniform(-amplitude, amplitude);
    if (bump.rx > 0.0) list.push_back(bump);
  }
  auto profile = [](double s) {
    const double q = 1.0 - s * s;
    return q > 0.0 ? q * q : 0.0;
  };
  return GridField::from_function(grid, [&](double x, double t) {
    double value = 0.0;
    for (const auto& b : list) value += b.amp * profile((x - b.xc) / b.rx) * profile((t - b.tc) / b.rt);
    return value;
  });
}

}  // namespace nullwave::solver
