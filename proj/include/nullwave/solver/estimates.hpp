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

#include <cstdint>
#include <random>

#include "nullwave/fields.hpp"

namespace nullwave::solver {

/// Source and datum of one transported field v = T(phi, f). A null source
/// means free transport.
struct TransportPiece {
  const fields::GridField* source = nullptr;
  fields::InitialDatum datum;
};

struct EstimateCheck {
  double lhs = 0.0;
  double rhs = 0.0;
  bool holds = false;
};

/// ||v||_{L1(D)} <= T* |||v|||, with holds = lhs <= rhs (1 + tolerance).
EstimateCheck verify_lemma1(const TransportPiece& piece, double c, const geometry::TriangleDomain& domain,
                            const fields::Grid& grid, double tolerance = 1e-3);

/// ||v_j v_k||_{L1(D)} <= |||v_j||| |||v_k||| / |c_k - c_j|. Throws
/// ErrorCode::precondition when c_j == c_k.
EstimateCheck verify_bilinear(const TransportPiece& vj, const TransportPiece& vk, double cj, double ck,
                              const geometry::TriangleDomain& domain, const fields::Grid& grid,
                              double tolerance = 1e-3);

/// |||v||| - eps <= ||d_t v + c d_x v||_{L1(D)} <= |||v|||. The transport
/// residual is f by construction, so the left inequality is the identity
/// residual_l1 == triple - eps, which is checked to `identity_tolerance`.
struct NormEquivalence {
  double residual_l1 = 0.0;
  double triple = 0.0;
  double eps = 0.0;
  double identity_defect = 0.0;  // |residual_l1 - (triple - eps)|
  bool holds = false;
};

NormEquivalence verify_norm_equivalence(const TransportPiece& piece, double c,
                                        const geometry::TriangleDomain& domain, const fields::Grid& grid,
                                        double identity_tolerance = 1e-12);

/// Seeded generator of random data and sources for the estimate sweeps.
/// Draws come straight from the 64-bit Mersenne twister so sequences are
/// reproducible across standard libraries.
class SampleGenerator {
 public:
  explicit SampleGenerator(std::uint64_t seed) : engine_(seed) {}

  double uniform(double lo, double hi);

  /// Continuous piecewise-linear datum supported in a random subinterval of
  /// `support`, with 1..max_breaks interior breakpoints and values in
  /// [-amplitude, amplitude] (nonnegative for roughly half of the draws).
  fields::InitialDatum datum(fields::Interval support, int max_breaks = 6, double amplitude = 1.0);

  /// Sum of up to `bumps` smooth compactly supported bumps centred in D and
  /// kept two cells away from the grid edges.
  fields::GridField source(const fields::Grid& grid, const geometry::TriangleDomain& domain, int bumps = 3,
                           double amplitude = 1.0);

 private:
  std::mt19937_64 engine_;
};

}  // namespace nullwave::solver
