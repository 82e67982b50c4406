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

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "nullwave/geometry.hpp"

namespace nullwave::fields {

using geometry::Interval;
using geometry::TriangleDomain;

struct Breakpoint {
  double x = 0.0;
  double value = 0.0;
};

/// Continuous piecewise-linear function with compact support, the initial
/// datum of one component. The default-constructed datum is identically zero.
///
/// Data produced by restricted() may carry a jump to zero at their end
/// points; every other datum is continuous with zero end values.
class InitialDatum {
 public:
  InitialDatum() = default;

  /// Strictly increasing x, finite values, first and last value exactly 0.
  static InitialDatum from_breakpoints(std::vector<Breakpoint> points);
  static InitialDatum hat(double lo, double hi, double height);
  /// Plateau of the given height on [lo + ramp, hi - ramp] with linear ramps:
  /// the piecewise-linear stand-in for an indicator of [lo, hi].
  static InitialDatum plateau(double lo, double hi, double height, double ramp);

  double operator()(double x) const noexcept;

  std::span<const Breakpoint> breakpoints() const noexcept { return points_; }
  std::optional<Interval> support() const noexcept;
  bool is_zero() const noexcept;
  bool clipped() const noexcept { return clipped_; }

  /// phi * 1_J, with breakpoints split at the ends of J.
  InitialDatum restricted(Interval part) const;
  InitialDatum scaled(double factor) const;

 private:
  std::vector<Breakpoint> points_;
  bool clipped_ = false;
};

double eval_datum(const InitialDatum& d, double x) noexcept;

/// Exact L1 mass: trapezoids of |phi| with segments split at sign changes.
double datum_l1(const InitialDatum& d) noexcept;

/// phi - psi on the merged breakpoints. Neither argument may be clipped.
InitialDatum datum_difference(const InitialDatum& phi, const InitialDatum& psi);

/// Uniform space-time grid: nodes (x0 + j dx, n dt), j = 0..nx, n = 0..nt.
struct Grid {
  double x0 = 0.0;
  double dx = 1.0;
  int nx = 1;
  double dt = 1.0;
  int nt = 1;

  double x(int j) const noexcept { return x0 + dx * j; }
  double t(int n) const noexcept { return dt * n; }
  double x_end() const noexcept { return x(nx); }
  double t_end() const noexcept { return t(nt); }
  std::size_t columns() const noexcept { return static_cast<std::size_t>(nx) + 1; }
  std::size_t rows() const noexcept { return static_cast<std::size_t>(nt) + 1; }
  std::size_t node_count() const noexcept { return columns() * rows(); }

  /// Smallest grid starting at window.lo that covers window x [0, horizon].
  static Grid covering(Interval window, double horizon, double dx, double dt);
  /// As covering(), but with nodes on the lattice anchor + k dx.
  static Grid covering_aligned(Interval window, double horizon, double dx, double dt, double anchor);

  friend bool operator==(const Grid&, const Grid&) = default;
};

/// Node samples of a space-time scalar field; samples are read as the
/// bilinear interpolant on each cell.
class GridField {
 public:
  explicit GridField(const Grid& grid);
  GridField(const Grid& grid, std::vector<double> samples);

  template <class F>
  static GridField from_function(const Grid& grid, F&& f) {
    GridField field(grid);
    for (int n = 0; n <= grid.nt; ++n) {
      for (int j = 0; j <= grid.nx; ++j) field.at(j, n) = f(grid.x(j), grid.t(n));
    }
    return field;
  }

  const Grid& grid() const noexcept { return grid_; }
  double at(int j, int n) const noexcept { return samples_[offset(j, n)]; }
  double& at(int j, int n) noexcept { return samples_[offset(j, n)]; }
  std::span<const double> level(int n) const noexcept { return {samples_.data() + offset(0, n), grid_.columns()}; }
  std::span<double> level(int n) noexcept { return {samples_.data() + offset(0, n), grid_.columns()}; }
  std::span<const double> samples() const noexcept { return samples_; }
  std::span<double> samples() noexcept { return samples_; }

  /// Linear interpolation in x on time level n; zero outside [x0, x_end].
  double level_value(int n, double x) const noexcept;
  /// Bilinear interpolation; zero outside the grid rectangle.
  double bilinear(double x, double t) const noexcept;

  bool diverged() const noexcept { return first_bad_level_.has_value(); }
  std::optional<int> first_bad_level() const noexcept { return first_bad_level_; }
  /// Scans for non-finite samples and records the first bad time level.
  void check_finite() noexcept;

 private:
  std::size_t offset(int j, int n) const noexcept {
    return static_cast<std::size_t>(n) * grid_.columns() + static_cast<std::size_t>(j);
  }

  Grid grid_;
  std::vector<double> samples_;
  std::optional<int> first_bad_level_;
};

GridField difference(const GridField& u, const GridField& v);

/// ||v||_{L1(D)}: trapezoid rule on cells inside D, cells cut by the two
/// boundary lines clipped exactly and integrated by a centroid rule on a fan
/// triangulation of the clipped polygon.
double l1_over_triangle(const GridField& v, const TriangleDomain& domain);

/// ||v w||_{L1(D)} with the same rule. Throws ErrorCode::structural on grid mismatch.
double product_l1_over_triangle(const GridField& v, const GridField& w, const TriangleDomain& domain);

/// Trapezoid rule for ||v||_{L1} over the whole grid rectangle.
double l1_over_window(const GridField& v);

/// Spatial trapezoid rule for ||v(., t_n)||_{L1(window)} with t snapped to
/// the nearest grid level.
double l1_time_slice(const GridField& v, double t, Interval window);
double l1_level(const GridField& v, int n);

/// The same L1(D) norm computed in characteristic coordinates (y, s) with
/// x = y + c s: midpoint rule over y in J and s in [0, tau_max(y)].
/// `refine` midpoints per grid cell in each direction.
double l1_along_characteristics(const GridField& f, const TriangleDomain& domain, double c, int refine = 2);

/// ||f||_{L1(D)} + ||phi||_{L1(J)}.
struct TripleNorm {
  double source_part = 0.0;
  double data_part = 0.0;
  double total = 0.0;
};

TripleNorm triple_norm(const GridField& f, const InitialDatum& d, const TriangleDomain& domain);
/// Free-transport case: no source.
TripleNorm triple_norm(const InitialDatum& d);

/// Fixed 17-significant-digit rendering used by every table writer.
std::string format_number(double value);

/// CSV with header "x,t,<name>", one row per sampled node.
void write_field_csv(std::ostream& out, const GridField& field, std::string_view name, int stride_x = 1,
                     int stride_t = 1);

}  // namespace nullwave::fields
