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

#include <random>

#include "doctest.h"
#include "helpers.hpp"
#include "nullwave/error.hpp"
#include "nullwave/fields.hpp"
#include "nullwave/geometry.hpp"

using namespace nullwave;
using geometry::Interval;

TEST_SUITE("geometry") {
  const std::vector<double> opposite{1.0, -1.0};

  TEST_CASE("triangle over [0,1] with opposite speeds") {
    const auto d = geometry::triangle({0.0, 1.0}, opposite);
    CHECK(d.t_star == 0.5);
    CHECK(d.slice(0.2) == Interval{0.2, 0.8});
    CHECK(d.slice(0.0) == Interval{0.0, 1.0});
    CHECK(d.area() == 0.25);
  }

  TEST_CASE("triangle with same-sign speeds") {
    const std::vector<double> c{1.0, 2.0};
    const auto d = geometry::triangle({0.0, 1.0}, c);
    CHECK(d.t_star == 1.0);
    CHECK(d.apex_x() == 2.0);
  }

  TEST_CASE("triangle errors") {
    const std::vector<double> same{1.0, 1.0};
    CHECK(nwtest::code_of([&] { (void)geometry::triangle({0.0, 1.0}, same); }) == ErrorCode::degenerate);
    CHECK(nwtest::code_of([&] { (void)geometry::triangle({1.0, 1.0}, opposite); }) == ErrorCode::domain);
  }

  TEST_CASE("membership") {
    const auto d = geometry::triangle({0.0, 1.0}, opposite);
    CHECK(geometry::contains(d, 0.5, 0.25));
    CHECK(geometry::contains(d, 0.0, 0.0));
    CHECK(geometry::contains(d, 0.5, 0.5));
    CHECK_FALSE(geometry::contains(d, 0.1, 0.4));
    CHECK_FALSE(geometry::contains(d, 0.5, -0.01));
    CHECK_FALSE(geometry::contains(d, 0.5, 0.51));
  }

  TEST_CASE("characteristic windows") {
    const auto d = geometry::triangle({0.0, 1.0}, opposite);
    CHECK(geometry::k_window(0.5, 0, d, opposite).tau_max == 0.25);
    CHECK(geometry::k_window(0.0, 1, d, opposite).tau_max == 0.0);
    const std::vector<double> c{1.0, 2.0};
    const auto d2 = geometry::triangle({0.0, 1.0}, c);
    CHECK(geometry::k_window(0.5, 0, d2, c).tau_max == 0.5);
    CHECK(nwtest::code_of([&] { (void)geometry::k_window(1.5, 0, d, opposite); }) == ErrorCode::domain);
  }

  TEST_CASE("window agrees with membership along random characteristics") {
    const std::vector<double> c{-0.7, 0.2, 1.3};
    const auto d = geometry::triangle({-0.4, 1.1}, c);
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> uy(d.a, d.b);
    std::uniform_real_distribution<double> ut(0.0, 1.2 * d.t_star);
    int disagreements = 0;
    for (int n = 0; n < 10000; ++n) {
      const int i = n % 3;
      const double y = uy(rng);
      const double tau = ut(rng);
      const double tmax = geometry::k_window(y, i, d, c).tau_max;
      const bool inside = geometry::contains(d, y + c[static_cast<std::size_t>(i)] * tau, tau);
      if (inside != (tau <= tmax) && std::abs(tau - tmax) > 1e-12) ++disagreements;
    }
    CHECK(disagreements == 0);
  }

  TEST_CASE("D is the intersection of the strips of every speed") {
    const std::vector<double> c{-0.7, 0.2, 1.3};
    const auto d = geometry::triangle({-0.4, 1.1}, c);
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> ux(-2.0, 3.0);
    std::uniform_real_distribution<double> ut(0.0, d.t_star);
    for (int n = 0; n < 5000; ++n) {
      const double x = ux(rng);
      const double t = ut(rng);
      bool all = true;
      for (double ci : c) all &= d.a <= x - ci * t && x - ci * t <= d.b;
      CHECK(all == geometry::contains(d, x, t));
    }
  }

  TEST_CASE("translation invariance") {
    const std::vector<double> c{-0.7, 0.2, 1.3};
    const auto d = geometry::triangle({-0.4, 1.1}, c);
    const auto e = geometry::triangle({-0.4 + 2.5, 1.1 + 2.5}, c);
    CHECK(d.t_star == doctest::Approx(e.t_star).epsilon(1e-14));
    for (double y : {-0.3, 0.1, 0.9})
      for (int i = 0; i < 3; ++i)
        CHECK(geometry::k_window(y, i, d, c).tau_max ==
              doctest::Approx(geometry::k_window(y + 2.5, i, e, c).tau_max).epsilon(1e-12));
  }

  TEST_CASE("cone slices") {
    CHECK(geometry::cone_slice({0.0, 1.0}, opposite, 2.0) == Interval{-2.0, 3.0});
    CHECK(geometry::cone_slice({0.0, 1.0}, opposite, 0.0) == Interval{0.0, 1.0});
    const std::vector<double> single{0.5};
    CHECK(geometry::cone_slice({0.0, 1.0}, single, 2.0) == Interval{1.0, 2.0});
    const std::vector<double> c{1.0, 2.0};
    CHECK(geometry::cone_window({0.0, 1.0}, c, 1.0) == Interval{0.0, 3.0});
  }

  TEST_CASE("unit Jacobian of the characteristic coordinates") {
    const std::vector<double> c{-1.0, 0.5};
    const auto d = geometry::triangle({0.0, 1.0}, c);
    const auto grid = fields::Grid::covering({-0.1, 1.1}, d.t_star, 2e-3, 2e-3);
    const auto f = fields::GridField::from_function(grid, [](double x, double t) {
      return std::sin(3.0 * x) + x * t - 0.3;
    });
    const double direct = fields::l1_over_triangle(f, d);
    for (double ci : c) {
      const double along = fields::l1_along_characteristics(f, d, ci);
      CHECK(along == doctest::Approx(direct).epsilon(5e-3));
    }
  }
}
