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

#include <cmath>

#include "doctest.h"
#include "helpers.hpp"
#include "nullwave/error.hpp"
#include "nullwave/solver/glue.hpp"
#include "nullwave/wave_bridge.hpp"

using namespace nullwave;
using fields::Grid;
using fields::GridField;

TEST_SUITE("wave_bridge") {
  TEST_CASE("compatibility") {
    const auto a = wave::check_compatibility(1.0, -1.0, 1.0, 1.0);
    CHECK(a.compatible);
    CHECK(a.normalized);
    CHECK_FALSE(wave::check_compatibility(1.0, -2.0, 1.0, 1.0).compatible);
    const auto b = wave::check_compatibility(1.0, -1.0, 1.0, 2.0);
    CHECK_FALSE(b.compatible);
    CHECK(b.coupling_defect == 1.0);
    CHECK(nwtest::code_of([] { (void)wave::check_compatibility(1.0, 1.0, 1.0, 1.0); }) == ErrorCode::degenerate);
  }

  TEST_CASE("reconstruction cases") {
    const auto grid = Grid::covering({0.0, 1.0}, 1.0, 0.1, 0.1);
    const auto g = GridField::from_function(grid, [](double x, double t) { return std::sin(x + 2.0 * t); });
    const auto same = wave::reconstruct_w_gradient(g, g, 1.0, -1.0);
    for (std::size_t n = 0; n < g.samples().size(); ++n) {
      CHECK(same.wx.samples()[n] == 0.0);
      CHECK(same.wt.samples()[n] == g.samples()[n]);
    }
    auto neg = g;
    for (auto& v : neg.samples()) v = -v;
    const auto flip = wave::reconstruct_w_gradient(g, neg, 1.0, -1.0);
    for (std::size_t n = 0; n < g.samples().size(); ++n) {
      CHECK(flip.wx.samples()[n] == doctest::Approx(-g.samples()[n]));
      CHECK(flip.wt.samples()[n] == doctest::Approx(0.0));
    }
    const auto zero = wave::reconstruct_w_gradient(GridField(grid), GridField(grid), 1.0, -1.0);
    for (std::size_t n = 0; n < g.samples().size(); ++n) CHECK(zero.wt.samples()[n] == 0.0);
    CHECK(nwtest::code_of([&] { (void)wave::reconstruct_w_gradient(g, g, 1.0, 1.0); }) == ErrorCode::degenerate);
    const auto other = Grid::covering({0.0, 1.0}, 1.0, 0.05, 0.1);
    CHECK(nwtest::code_of([&] { (void)wave::reconstruct_w_gradient(g, GridField(other), 1.0, -1.0); }) ==
          ErrorCode::structural);
  }

  TEST_CASE("round trip to machine precision") {
    const auto grid = Grid::covering({-1.0, 1.0}, 1.0, 0.01, 0.01);
    const auto wt = GridField::from_function(grid, [](double x, double t) { return std::cos(3.0 * x - t); });
    const auto wx = GridField::from_function(grid, [](double x, double t) { return x * x - std::sin(t); });
    for (const auto& [c1, c2] : {std::pair{1.0, -1.0}, std::pair{0.3, 2.5}, std::pair{-4.0, 1.5}}) {
      GridField u1(grid);
      GridField u2(grid);
      for (std::size_t n = 0; n < u1.samples().size(); ++n) {
        u1.samples()[n] = wt.samples()[n] - c1 * wx.samples()[n];
        u2.samples()[n] = wt.samples()[n] - c2 * wx.samples()[n];
      }
      const auto back = wave::reconstruct_w_gradient(u1, u2, c1, c2);
      for (std::size_t n = 0; n < u1.samples().size(); ++n) {
        CHECK(std::abs(back.wt.samples()[n] - wt.samples()[n]) <= 1e-12);
        CHECK(std::abs(back.wx.samples()[n] - wx.samples()[n]) <= 1e-12);
      }
    }
  }

  TEST_CASE("residual of zero fields and too-small grids") {
    const auto grid = Grid::covering({0.0, 1.0}, 1.0, 0.1, 0.1);
    const auto r = wave::wave_residual(GridField(grid), GridField(grid));
    CHECK(r.l1_residual == 0.0);
    CHECK(r.compat_defect == 0.0);
    const auto tiny = Grid::covering({0.0, 1.0}, 1.0, 1.0, 0.1);
    CHECK(nwtest::code_of([&] { (void)wave::wave_residual(GridField(tiny), GridField(tiny)); }) ==
          ErrorCode::structural);
  }

  TEST_CASE("exact gradient of a wave solution has small residual") {
    // w = log(1 / (1 - (phi(x+t) + psi(x-t)))) solves w_tt - w_xx = w_t^2 - w_x^2.
    const auto grid = Grid::covering({-1.0, 1.0}, 0.5, 2.5e-3, 2.5e-3);
    const auto s = [](double z) { return 0.1 * std::sin(z); };
    const auto ds = [](double z) { return 0.1 * std::cos(z); };
    const auto wt = GridField::from_function(grid, [&](double x, double t) {
      return (ds(x + t) - ds(x - t)) / (1.0 - s(x + t) - s(x - t));
    });
    const auto wx = GridField::from_function(grid, [&](double x, double t) {
      return (ds(x + t) + ds(x - t)) / (1.0 - s(x + t) - s(x - t));
    });
    const auto r = wave::wave_residual(wt, wx, 1.0);
    CHECK(r.l1_residual <= 1e-5);
    CHECK(r.compat_defect <= 1e-5);
  }

  TEST_CASE("residual identity on a null-system solve") {
    // With c = (1, -1) the residual equals ((alpha + beta)/2 - 1) u1 u2 and
    // the mixed-partials defect (beta - alpha)/2 u1 u2 in the continuum.
    const auto data = nwtest::hats(2, 0.25);
    const auto spec = nwtest::two_by_two(1.0, -1.0, 1.0, 2.0);
    const auto g = solver::cone_grid({0.0, 1.0}, spec.speeds(), 0.5, {5e-3, 4e-3, 0.05});
    const auto run = solver::picard_solve(spec, data, std::nullopt, g);
    REQUIRE(run.report.verdict == solver::Verdict::converged);
    const auto w = wave::reconstruct_w_gradient(run.fields[0], run.fields[1], 1.0, -1.0);
    const auto r = wave::wave_residual(w.wt, w.wx, 1.0);
    double product = 0.0;
    for (int n = 1; n < g.nt; ++n)
      for (int j = 1; j < g.nx; ++j) product += std::abs(run.fields[0].at(j, n) * run.fields[1].at(j, n));
    product *= g.dx * g.dt;
    CHECK(r.l1_residual == doctest::Approx(0.5 * product).epsilon(0.2));
    CHECK(r.compat_defect == doctest::Approx(0.5 * product).epsilon(0.2));
  }
}
