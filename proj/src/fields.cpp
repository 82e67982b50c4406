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

#include "nullwave/fields.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <sstream>

#include "nullwave/error.hpp"

namespace nullwave::fields {

namespace {

// Clipped data jump at their ends; points within this relative distance of a
// clipped end count as inside so that characteristic foot points computed on
// shifted but matching grids land on the same side of the jump.
constexpr double kEndSnap = 1e-12;

// Slack for "grid covers region" comparisons.
bool covers_upto(double have, double need) { return have >= need - 1e-9 * std::max(1.0, std::abs(need)); }

double segment_abs_integral(const Breakpoint& p, const Breakpoint& q) {
  const double h = q.x - p.x;
  const double u = p.value;
  const double v = q.value;
  if ((u >= 0.0 && v >= 0.0) || (u <= 0.0 && v <= 0.0)) return 0.5 * h * (std::abs(u) + std::abs(v));
  // Sign change inside the segment: two triangles meeting at the zero.
  return 0.5 * h * (u * u + v * v) / (std::abs(u) + std::abs(v));
}

}  // namespace

InitialDatum InitialDatum::from_breakpoints(std::vector<Breakpoint> points) {
  for (const auto& bp : points) {
    if (!std::isfinite(bp.x) || !std::isfinite(bp.value)) {
      throw Error(ErrorCode::domain, "datum breakpoints must be finite");
    }
  }
  for (std::size_t i = 1; i < points.size(); ++i) {
    if (!(points[i].x > points[i - 1].x)) {
      throw Error(ErrorCode::domain, "datum breakpoints must have strictly increasing x");
    }
  }
  if (!points.empty() && (points.front().value != 0.0 || points.back().value != 0.0)) {
    throw Error(ErrorCode::domain, "datum must vanish at its first and last breakpoint");
  }
  InitialDatum d;
  if (points.size() >= 2) d.points_ = std::move(points);
  return d;
}

InitialDatum InitialDatum::hat(double lo, double hi, double height) {
  return from_breakpoints({{lo, 0.0}, {0.5 * (lo + hi), height}, {hi, 0.0}});
}

InitialDatum InitialDatum::plateau(double lo, double hi, double height, double ramp) {
  if (!(ramp > 0.0) || !(2.0 * ramp < hi - lo)) throw Error(ErrorCode::domain, "plateau ramp must fit in the interval");
  return from_breakpoints({{lo, 0.0}, {lo + ramp, height}, {hi - ramp, height}, {hi, 0.0}});
}

double InitialDatum::operator()(double x) const noexcept {
  if (points_.empty()) return 0.0;
  const double first = points_.front().x;
  const double last = points_.back().x;
  if (clipped_) {
    if (x < first && first - x <= kEndSnap * std::max(1.0, std::abs(first))) x = first;
    if (x > last && x - last <= kEndSnap * std::max(1.0, std::abs(last))) x = last;
  }
  if (x < first || x > last) return 0.0;
  auto it = std::upper_bound(points_.begin(), points_.end(), x,
                             [](double value, const Breakpoint& bp) { return value < bp.x; });
  if (it == points_.end()) return points_.back().value;
  const auto& q = *it;
  const auto& p = *(it - 1);
  const double w = (x - p.x) / (q.x - p.x);
  return p.value + w * (q.value - p.value);
}

std::optional<Interval> InitialDatum::support() const noexcept {
  if (points_.empty()) return std::nullopt;
  return Interval{points_.front().x, points_.back().x};
}

bool InitialDatum::is_zero() const noexcept {
  return std::all_of(points_.begin(), points_.end(), [](const Breakpoint& bp) { return bp.value == 0.0; });
}

InitialDatum InitialDatum::restricted(Interval part) const {
  InitialDatum out;
  if (points_.empty() || !(part.hi > part.lo)) return out;
  const double lo = std::max(part.lo, points_.front().x);
  const double hi = std::min(part.hi, points_.back().x);
  if (!(hi > lo)) return out;
  out.points_.push_back({lo, (*this)(lo)});
  for (const auto& bp : points_) {
    if (bp.x > lo && bp.x < hi) out.points_.push_back(bp);
  }
  out.points_.push_back({hi, (*this)(hi)});
  out.clipped_ = out.points_.front().value != 0.0 || out.points_.back().value != 0.0;
  return out;
}

InitialDatum InitialDatum::scaled(double factor) const {
  InitialDatum out = *this;
  for (auto& bp : out.points_) bp.value *= factor;
  return out;
}

double eval_datum(const InitialDatum& d, double x) noexcept { return d(x); }

double datum_l1(const InitialDatum& d) noexcept {
  const auto pts = d.breakpoints();
  double mass = 0.0;
  for (std::size_t i = 1; i < pts.size(); ++i) mass += segment_abs_integral(pts[i - 1], pts[i]);
  return mass;
}

InitialDatum datum_difference(const InitialDatum& phi, const InitialDatum& psi) {
  if (phi.clipped() || psi.clipped()) {
    throw Error(ErrorCode::domain, "datum difference is only defined for continuous data");
  }
  std::vector<double> xs;
  for (const auto& bp : phi.breakpoints()) xs.push_back(bp.x);
  for (const auto& bp : psi.breakpoints()) xs.push_back(bp.x);
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
  if (xs.size() < 2) return {};
  std::vector<Breakpoint> pts;
  pts.reserve(xs.size());
  for (double x : xs) pts.push_back({x, phi(x) - psi(x)});
  return InitialDatum::from_breakpoints(std::move(pts));
}

Grid Grid::covering(Interval window, double horizon, double dx, double dt) {
  return covering_aligned(window, horizon, dx, dt, window.lo);
}

Grid Grid::covering_aligned(Interval window, double horizon, double dx, double dt, double anchor) {
  if (!(dx > 0.0) || !(dt > 0.0) || !std::isfinite(dx) || !std::isfinite(dt)) {
    throw Error(ErrorCode::domain, "grid spacings dx, dt must be positive");
  }
  if (!(window.hi > window.lo) || !(horizon >= 0.0)) {
    throw Error(ErrorCode::domain, "grid window must be non-empty and the horizon non-negative");
  }
  Grid g;
  g.dx = dx;
  g.dt = dt;
  const double start = std::floor((window.lo - anchor) / dx + 1e-9);
  g.x0 = anchor + start * dx;
  g.nx = std::max(1, static_cast<int>(std::ceil((window.hi - g.x0) / dx - 1e-9)));
  g.nt = std::max(1, static_cast<int>(std::ceil(horizon / dt - 1e-9)));
  return g;
}

GridField::GridField(const Grid& grid) : grid_(grid), samples_(grid.node_count(), 0.0) {
  if (grid.nx < 1 || grid.nt < 1 || !(grid.dx > 0.0) || !(grid.dt > 0.0)) {
    throw Error(ErrorCode::structural, "grid needs at least one cell in x and t");
  }
}

GridField::GridField(const Grid& grid, std::vector<double> samples) : GridField(grid) {
  if (samples.size() != grid.node_count()) throw Error(ErrorCode::structural, "sample count does not match grid");
  samples_ = std::move(samples);
  check_finite();
}

double GridField::level_value(int n, double x) const noexcept {
  const double q = (x - grid_.x0) / grid_.dx;
  if (!(q >= 0.0) || q > grid_.nx) return 0.0;
  int j = static_cast<int>(q);
  if (j >= grid_.nx) j = grid_.nx - 1;
  const double w = q - j;
  return (1.0 - w) * at(j, n) + w * at(j + 1, n);
}

double GridField::bilinear(double x, double t) const noexcept {
  const double r = t / grid_.dt;
  if (!(r >= 0.0) || r > grid_.nt) return 0.0;
  int n = static_cast<int>(r);
  if (n >= grid_.nt) n = grid_.nt - 1;
  const double w = r - n;
  return (1.0 - w) * level_value(n, x) + w * level_value(n + 1, x);
}

void GridField::check_finite() noexcept {
  first_bad_level_.reset();
  for (int n = 0; n <= grid_.nt; ++n) {
    for (double v : level(n)) {
      if (!std::isfinite(v)) {
        first_bad_level_ = n;
        return;
      }
    }
  }
}

GridField difference(const GridField& u, const GridField& v) {
  if (!(u.grid() == v.grid())) throw Error(ErrorCode::structural, "field difference needs matching grids");
  std::vector<double> out(u.samples().begin(), u.samples().end());
  const auto vs = v.samples();
  for (std::size_t i = 0; i < out.size(); ++i) out[i] -= vs[i];
  return GridField(u.grid(), std::move(out));
}

namespace {

struct Point {
  double x;
  double t;
};

// Keeps the part of a convex polygon where nx * x + nt * t <= c.
std::vector<Point> clip(const std::vector<Point>& poly, double nx, double nt, double c) {
  std::vector<Point> out;
  out.reserve(poly.size() + 1);
  const std::size_t m = poly.size();
  for (std::size_t i = 0; i < m; ++i) {
    const Point& p = poly[i];
    const Point& q = poly[(i + 1) % m];
    const double fp = nx * p.x + nt * p.t - c;
    const double fq = nx * q.x + nt * q.t - c;
    if (fp <= 0.0) out.push_back(p);
    if ((fp < 0.0 && fq > 0.0) || (fp > 0.0 && fq < 0.0)) {
      const double s = fp / (fp - fq);
      out.push_back({p.x + s * (q.x - p.x), p.t + s * (q.t - p.t)});
    }
  }
  return out;
}

template <class NodeFn, class PointFn>
double integrate_over_triangle(const Grid& g, const TriangleDomain& d, NodeFn&& node, PointFn&& point) {
  if (!covers_upto(d.a, g.x0) || !covers_upto(g.x_end(), d.b) || !covers_upto(g.t_end(), d.t_star)) {
    std::ostringstream os;
    os << "grid [" << g.x0 << ", " << g.x_end() << "] x [0, " << g.t_end() << "] does not cover the triangle over ["
       << d.a << ", " << d.b << "] with apex time " << d.t_star;
    throw Error(ErrorCode::coverage, os.str());
  }
  const auto left = [&](double t) { return d.a + d.c_max * t; };
  const auto right = [&](double t) { return d.b + d.c_min * t; };
  const int rows = std::min(g.nt, static_cast<int>(std::ceil(d.t_star / g.dt)));
  const double cell = g.dx * g.dt;
  double total = 0.0;
  for (int n = 0; n < rows; ++n) {
    const double t_lo = g.t(n);
    const double t_hi = g.t(n + 1);
    const double t_top = std::min(t_hi, d.t_star);
    const double l_max = std::max(left(t_lo), left(t_top));
    const double r_min = std::min(right(t_lo), right(t_top));
    const double x_from = std::min(left(t_lo), left(t_top));
    const double x_to = std::max(right(t_lo), right(t_top));
    const int j_begin = std::max(0, static_cast<int>(std::floor((x_from - g.x0) / g.dx)));
    const int j_end = std::min(g.nx, static_cast<int>(std::ceil((x_to - g.x0) / g.dx)));
    for (int j = j_begin; j < j_end; ++j) {
      const double x_lo = g.x(j);
      const double x_hi = g.x(j + 1);
      if (x_lo >= l_max && x_hi <= r_min && t_hi <= d.t_star) {
        total += 0.25 * cell * (node(j, n) + node(j + 1, n) + node(j, n + 1) + node(j + 1, n + 1));
        continue;
      }
      std::vector<Point> poly{{x_lo, t_lo}, {x_hi, t_lo}, {x_hi, t_hi}, {x_lo, t_hi}};
      poly = clip(poly, -1.0, d.c_max, -d.a);  // x >= a + c_max t
      if (poly.size() < 3) continue;
      poly = clip(poly, 1.0, -d.c_min, d.b);  // x <= b + c_min t
      if (poly.size() < 3) continue;
      for (std::size_t k = 1; k + 1 < poly.size(); ++k) {
        const Point& p0 = poly[0];
        const Point& p1 = poly[k];
        const Point& p2 = poly[k + 1];
        const double area = 0.5 * std::abs((p1.x - p0.x) * (p2.t - p0.t) - (p2.x - p0.x) * (p1.t - p0.t));
        if (area == 0.0) continue;
        total += area * point((p0.x + p1.x + p2.x) / 3.0, (p0.t + p1.t + p2.t) / 3.0);
      }
    }
  }
  return total;
}

}  // namespace

double l1_over_triangle(const GridField& v, const TriangleDomain& domain) {
  return integrate_over_triangle(
      v.grid(), domain, [&](int j, int n) { return std::abs(v.at(j, n)); },
      [&](double x, double t) { return std::abs(v.bilinear(x, t)); });
}

double product_l1_over_triangle(const GridField& v, const GridField& w, const TriangleDomain& domain) {
  if (!(v.grid() == w.grid())) throw Error(ErrorCode::structural, "product quadrature needs matching grids");
  return integrate_over_triangle(
      v.grid(), domain, [&](int j, int n) { return std::abs(v.at(j, n) * w.at(j, n)); },
      [&](double x, double t) { return std::abs(v.bilinear(x, t) * w.bilinear(x, t)); });
}

double l1_level(const GridField& v, int n) {
  const auto row = v.level(n);
  double sum = 0.5 * (std::abs(row.front()) + std::abs(row.back()));
  for (std::size_t j = 1; j + 1 < row.size(); ++j) sum += std::abs(row[j]);
  return sum * v.grid().dx;
}

double l1_over_window(const GridField& v) {
  const int nt = v.grid().nt;
  double sum = 0.5 * (l1_level(v, 0) + l1_level(v, nt));
  for (int n = 1; n < nt; ++n) sum += l1_level(v, n);
  return sum * v.grid().dt;
}

double l1_time_slice(const GridField& v, double t, Interval window) {
  const Grid& g = v.grid();
  const double r = t / g.dt;
  if (!(r >= -0.5) || r > g.nt + 0.5) {
    std::ostringstream os;
    os << "time " << t << " outside the grid range [0, " << g.t_end() << "]";
    throw Error(ErrorCode::domain, os.str());
  }
  const int n = std::clamp(static_cast<int>(std::lround(r)), 0, g.nt);
  const double lo = std::max(window.lo, g.x0);
  const double hi = std::min(window.hi, g.x_end());
  if (!(hi > lo)) return 0.0;
  const int j_begin = std::max(0, static_cast<int>(std::floor((lo - g.x0) / g.dx)));
  const int j_end = std::min(g.nx, static_cast<int>(std::ceil((hi - g.x0) / g.dx)));
  double sum = 0.0;
  for (int j = j_begin; j < j_end; ++j) {
    const double a = std::max(lo, g.x(j));
    const double b = std::min(hi, g.x(j + 1));
    if (!(b > a)) continue;
    if (a == g.x(j) && b == g.x(j + 1)) {
      sum += 0.5 * (b - a) * (std::abs(v.at(j, n)) + std::abs(v.at(j + 1, n)));
    } else {
      sum += 0.5 * (b - a) * (std::abs(v.level_value(n, a)) + std::abs(v.level_value(n, b)));
    }
  }
  return sum;
}

double l1_along_characteristics(const GridField& f, const TriangleDomain& domain, double c, int refine) {
  if (refine < 1) throw Error(ErrorCode::domain, "refine must be positive");
  const Grid& g = f.grid();
  const int ny = refine * std::max(1, static_cast<int>(std::ceil((domain.b - domain.a) / g.dx)));
  const double hy = (domain.b - domain.a) / ny;
  double total = 0.0;
  for (int iy = 0; iy < ny; ++iy) {
    const double y = domain.a + (iy + 0.5) * hy;
    const double tau = geometry::characteristic_exit_time(y, c, domain);
    if (!(tau > 0.0)) continue;
    const int ns = refine * std::max(1, static_cast<int>(std::ceil(tau / g.dt)));
    const double hs = tau / ns;
    double line = 0.0;
    for (int is = 0; is < ns; ++is) {
      const double s = (is + 0.5) * hs;
      line += std::abs(f.bilinear(y + c * s, s));
    }
    total += line * hs;
  }
  return total * hy;
}

TripleNorm triple_norm(const GridField& f, const InitialDatum& d, const TriangleDomain& domain) {
  TripleNorm norm;
  norm.source_part = l1_over_triangle(f, domain);
  norm.data_part = datum_l1(d);
  norm.total = norm.source_part + norm.data_part;
  return norm;
}

TripleNorm triple_norm(const InitialDatum& d) {
  TripleNorm norm;
  norm.data_part = datum_l1(d);
  norm.total = norm.data_part;
  return norm;
}

std::string format_number(double value) {
  std::array<char, 40> buf{};
  std::snprintf(buf.data(), buf.size(), "%.17g", value);
  return buf.data();
}

void write_field_csv(std::ostream& out, const GridField& field, std::string_view name, int stride_x, int stride_t) {
  if (stride_x < 1 || stride_t < 1) throw Error(ErrorCode::domain, "CSV strides must be positive");
  const Grid& g = field.grid();
  out << "x,t," << name << '\n';
  for (int n = 0; n <= g.nt; n += stride_t) {
    for (int j = 0; j <= g.nx; j += stride_x) {
      out << format_number(g.x(j)) << ',' << format_number(g.t(n)) << ',' << format_number(field.at(j, n)) << '\n';
    }
  }
}

}  // namespace nullwave::fields
