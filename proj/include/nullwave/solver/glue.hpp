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

#include <span>
#include <vector>

#include "nullwave/solver/picard.hpp"

namespace nullwave::solver {

/// Grid spacing and the extra margin added around propagation cones.
struct GridSpacing {
  double dx = 1e-3;
  double dt = 1e-3;
  double padding = 0.05;
};

/// Grid covering the propagation cone of `support` up to `horizon`, plus padding.
fields::Grid cone_grid(geometry::Interval support, std::span<const double> speeds, double horizon,
                       const GridSpacing& spacing);

struct GlueOptions {
  PicardOptions picard;
  double consistency_tolerance = 1e-8;  // relative disagreement allowed on overlaps
};

struct SubproblemSummary {
  geometry::Interval part;
  fields::Grid grid;
  Verdict verdict = Verdict::converged;
  int iterations = 0;
};

struct GlueResult {
  fields::Grid grid;
  std::vector<fields::GridField> glued;
  std::vector<fields::GridField> monolithic;
  std::vector<SubproblemSummary> subproblems;
  double mismatch = 0.0;            // max over levels of the L1 gap on determined nodes
  double determined_fraction = 0.0; // share of nodes the partition determines
};

/// Solves one sub-problem per partition interval (data restricted to it) on
/// its own cone window and assembles them on the global grid:
///  - nodes inside at most one sub-cone take the sum of the sub-solutions;
///  - nodes inside several sub-cones take the value of any sub-problem whose
///    interaction triangle contains them, after checking all such candidates
///    agree (ErrorCode::gluing otherwise);
///  - remaining nodes are left undetermined.
/// The mismatch compares the determined nodes with a direct solve of the full
/// problem on the global grid.
GlueResult glue_solve(const core::SystemSpec& spec, std::span<const geometry::Interval> partition,
                      std::span<const fields::InitialDatum> data, double horizon, const GridSpacing& spacing,
                      const GlueOptions& options = {});

}  // namespace nullwave::solver
