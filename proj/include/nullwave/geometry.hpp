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

namespace nullwave::geometry {

/// Closed interval [lo, hi].
struct Interval {
  double lo = 0.0;
  double hi = 0.0;

  double length() const noexcept { return hi - lo; }
  bool contains(double x) const noexcept { return lo <= x && x <= hi; }
  Interval shifted(double delta) const noexcept { return {lo + delta, hi + delta}; }
  Interval padded(double pad) const noexcept { return {lo - pad, hi + pad}; }

  friend bool operator==(const Interval&, const Interval&) = default;
};

/// The interaction triangle
///
///   D = { (x,t) : 0 <= t <= t_star,  a + c_max t <= x <= b + c_min t },
///
/// i.e. the closed set where every backward characteristic x - c_i t lands
/// in J = [a, b].
struct TriangleDomain {
  double a = 0.0;
  double b = 0.0;
  double c_min = 0.0;
  double c_max = 0.0;
  double t_star = 0.0;

  Interval base() const noexcept { return {a, b}; }
  /// {x : (x,t) in D}; empty (lo > hi) for t > t_star.
  Interval slice(double t) const noexcept { return {a + c_max * t, b + c_min * t}; }
  double area() const noexcept { return 0.5 * (b - a) * t_star; }
  double apex_x() const noexcept { return a + c_max * t_star; }
};

TriangleDomain triangle(Interval support, std::span<const double> speeds);

bool contains(const TriangleDomain& domain, double x, double t) noexcept;

/// K_{y^i} = [0, tau_max]: the times tau for which (y + c_i tau, tau) stays in D.
struct CharacteristicWindow {
  double tau_max = 0.0;
  double y = 0.0;
  int component = 0;
};

CharacteristicWindow k_window(double y, int component, const TriangleDomain& domain, std::span<const double> speeds);

/// tau_max for a characteristic of speed c from foot y. Requires c in [c_min, c_max].
double characteristic_exit_time(double y, double c, const TriangleDomain& domain);

/// Finite speed of propagation: supports at time t lie in [a + c_min t, b + c_max t].
Interval cone_slice(Interval support, std::span<const double> speeds, double t);

/// Union of cone_slice over t in [0, horizon].
Interval cone_window(Interval support, std::span<const double> speeds, double horizon);

}  // namespace nullwave::geometry
