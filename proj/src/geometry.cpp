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

#include "nullwave/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "nullwave/error.hpp"

namespace nullwave::geometry {

namespace {

std::pair<double, double> extremes(std::span<const double> speeds) {
  if (speeds.empty()) throw Error(ErrorCode::structural, "speed list is empty");
  const auto [lo, hi] = std::minmax_element(speeds.begin(), speeds.end());
  return {*lo, *hi};
}

}  // namespace

TriangleDomain triangle(Interval support, std::span<const double> speeds) {
  if (!(support.hi > support.lo)) throw Error(ErrorCode::domain, "support interval needs b > a");
  const auto [c_min, c_max] = extremes(speeds);
  if (!(c_max > c_min)) {
    throw Error(ErrorCode::degenerate, "all speeds are equal: the interaction triangle is undefined");
  }
  TriangleDomain d;
  d.a = support.lo;
  d.b = support.hi;
  d.c_min = c_min;
  d.c_max = c_max;
  d.t_star = (d.b - d.a) / (c_max - c_min);
  return d;
}

bool contains(const TriangleDomain& domain, double x, double t) noexcept {
  if (!(t >= 0.0) || t > domain.t_star) return false;
  return domain.a + domain.c_max * t <= x && x <= domain.b + domain.c_min * t;
}

double characteristic_exit_time(double y, double c, const TriangleDomain& domain) {
  if (y < domain.a || y > domain.b) {
    std::ostringstream os;
    os << "foot point " << y << " outside [" << domain.a << ", " << domain.b << "]";
    throw Error(ErrorCode::domain, os.str());
  }
  if (c < domain.c_min || c > domain.c_max) throw Error(ErrorCode::domain, "speed outside [c_min, c_max]");
  constexpr double inf = std::numeric_limits<double>::infinity();
  const double left = c == domain.c_max ? inf : (y - domain.a) / (domain.c_max - c);
  const double right = c == domain.c_min ? inf : (domain.b - y) / (c - domain.c_min);
  return std::min(left, right);
}

CharacteristicWindow k_window(double y, int component, const TriangleDomain& domain,
                              std::span<const double> speeds) {
  if (component < 0 || static_cast<std::size_t>(component) >= speeds.size()) {
    throw Error(ErrorCode::structural, "component index out of range");
  }
  const double c = speeds[static_cast<std::size_t>(component)];
  return {characteristic_exit_time(y, c, domain), y, component};
}

Interval cone_slice(Interval support, std::span<const double> speeds, double t) {
  if (!(t >= 0.0)) throw Error(ErrorCode::domain, "cone slice needs t >= 0");
  const auto [c_min, c_max] = extremes(speeds);
  return {support.lo + c_min * t, support.hi + c_max * t};
}

Interval cone_window(Interval support, std::span<const double> speeds, double horizon) {
  const auto end = cone_slice(support, speeds, horizon);
  return {std::min(support.lo, end.lo), std::max(support.hi, end.hi)};
}

}  // namespace nullwave::geometry
