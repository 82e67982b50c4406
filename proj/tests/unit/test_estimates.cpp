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
#include "nullwave/solver/estimates.hpp"

using namespace nullwave;
using fields::Grid;
using fields::GridField;
using fields::InitialDatum;
using solver::TransportPiece;

namespace {

const std::vector<double> kOpposite{1.0, -1.0};

struct Setup {
  geometry::TriangleDomain domain = geometry::triangle({0.0, 1.0}, kOpposite);
  Grid grid = Grid::covering({-0.05, 1.05}, 0.5, 1e-3, 1e-3);
};

}  // namespace

TEST_SUITE("estimates") {
  TEST_CASE("transport bound for a free hat") {
    const Setup s;
    const auto c = solver::verify_lemma1({nullptr, InitialDatum::hat(0.0, 1.0, 1.0)}, 1.0, s.domain, s.grid);
    CHECK(c.rhs == doctest::Approx(0.25).epsilon(1e-15));
    CHECK(c.lhs <= 0.25);
    CHECK(c.holds);
    const auto z = solver::verify_lemma1({nullptr, InitialDatum{}}, 1.0, s.domain, s.grid);
    CHECK(z.lhs == 0.0);
    CHECK(z.rhs == 0.0);
    CHECK(z.holds);
  }

  TEST_CASE("crossing plateaus overlap on a quarter") {
    const Setup s;
    const double ramp = s.grid.dx;
    const auto ind = InitialDatum::plateau(0.0, 1.0, 1.0, ramp);
    const auto c = solver::verify_bilinear({nullptr, ind}, {nullptr, ind}, 1.0, -1.0, s.domain, s.grid);
    CHECK(std::abs(c.lhs - 0.25) <= 0.01);
    CHECK(std::abs(c.rhs - 0.5) <= 0.01);
    CHECK(c.holds);
    const auto z = solver::verify_bilinear({nullptr, ind}, {nullptr, InitialDatum{}}, 1.0, -1.0, s.domain, s.grid);
    CHECK(z.lhs == 0.0);
    CHECK(nwtest::code_of([&] { (void)solver::verify_bilinear({nullptr, ind}, {nullptr, ind}, 1.0, 1.0, s.domain, s.grid); }) ==
          ErrorCode::precondition);
  }

  TEST_CASE("norm identity for free transport and unit source") {
    const Setup s;
    const auto hat = InitialDatum::hat(0.0, 1.0, 1.0);
    const auto free = solver::verify_norm_equivalence({nullptr, hat}, 1.0, s.domain, s.grid);
    CHECK(free.residual_l1 == 0.0);
    CHECK(free.triple == free.eps);
    CHECK(free.holds);
    const auto one = GridField::from_function(s.grid, [](double x, double) { return x > -0.04 ? 1.0 : 0.0; });
    const auto unit = solver::verify_norm_equivalence({&one, hat}, 1.0, s.domain, s.grid);
    CHECK(unit.residual_l1 == doctest::Approx(0.25).epsilon(1e-5));
    CHECK(unit.triple == doctest::Approx(0.75).epsilon(1e-5));
    CHECK(unit.identity_defect <= 1e-12);
  }

  TEST_CASE("random samples satisfy every estimate") {
    const Setup s;
    solver::SampleGenerator gen(42);
    for (int n = 0; n < 20; ++n) {
      const auto fj = gen.source(s.grid, s.domain);
      const auto fk = gen.source(s.grid, s.domain);
      const TransportPiece vj{&fj, gen.datum({0.0, 1.0})};
      const TransportPiece vk{&fk, gen.datum({0.0, 1.0})};
      CHECK(solver::verify_bilinear(vj, vk, 1.0, -1.0, s.domain, s.grid).holds);
      CHECK(solver::verify_lemma1(vj, 1.0, s.domain, s.grid).holds);
      CHECK(solver::verify_lemma1(vk, -1.0, s.domain, s.grid).holds);
      CHECK(solver::verify_norm_equivalence(vj, 1.0, s.domain, s.grid).identity_defect <= 1e-12);
    }
  }

  TEST_CASE("sample generator is reproducible") {
    solver::SampleGenerator a(9);
    solver::SampleGenerator b(9);
    for (int n = 0; n < 10; ++n) {
      const auto da = a.datum({0.0, 1.0});
      const auto db = b.datum({0.0, 1.0});
      REQUIRE(da.breakpoints().size() == db.breakpoints().size());
      for (std::size_t k = 0; k < da.breakpoints().size(); ++k) {
        CHECK(da.breakpoints()[k].x == db.breakpoints()[k].x);
        CHECK(da.breakpoints()[k].value == db.breakpoints()[k].value);
      }
      const auto sa = da.support();
      REQUIRE(sa);
      CHECK(sa->lo >= 0.0);
      CHECK(sa->hi <= 1.0);
    }
  }
}
