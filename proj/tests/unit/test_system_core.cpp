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
#include <random>

#include "doctest.h"
#include "helpers.hpp"
#include "nullwave/error.hpp"
#include "nullwave/system_core.hpp"

using namespace nullwave;
using core::SystemSpec;

TEST_SUITE("system_core") {
  TEST_CASE("product coupling with opposite speeds satisfies the null condition") {
    const auto spec = nwtest::tartar();
    const auto r = core::validate(spec);
    CHECK(r.symmetric);
    CHECK(r.null_condition_holds);
    CHECK(r.resonant_triples.empty());
    CHECK(r.speed_multiplicities.size() == 2);
    CHECK(core::gamma(spec) == doctest::Approx(0.5).epsilon(1e-15));
  }

  TEST_CASE("scalar Riccati coupling is resonant") {
    const std::vector<core::CouplingEntry> e{{0, 0, 0, -1.0}};
    const auto spec = SystemSpec::from_triplets({1.0}, e);
    const auto r = core::validate(spec);
    CHECK_FALSE(r.null_condition_holds);
    REQUIRE(r.resonant_triples.size() == 1);
    CHECK(r.resonant_triples[0] == core::ResonantTriple{0, 0, 0});
    CHECK(nwtest::code_of([&] { (void)core::gamma(spec); }) == ErrorCode::precondition);
  }

  TEST_CASE("equal speeds with cross coupling are resonant") {
    const auto spec = nwtest::two_by_two(1.0, 1.0, 0.3, 0.0);
    const auto r = core::validate(spec);
    CHECK_FALSE(r.null_condition_holds);
    CHECK(r.resonant_triples.size() == 2);
    REQUIRE(r.speed_multiplicities.size() == 1);
    CHECK(r.speed_multiplicities[0].components == std::vector<int>{0, 1});
  }

  TEST_CASE("speed tolerance merges nearby speeds") {
    const auto spec = nwtest::two_by_two(1.0, 1.0 + 1e-9);
    CHECK(core::validate(spec).null_condition_holds);
    CHECK_FALSE(core::validate(spec, 1e-6).null_condition_holds);
  }

  TEST_CASE("structural errors") {
    CHECK(nwtest::code_of([] { SystemSpec({1.0, 2.0}, std::vector<double>(7, 0.0)); }) == ErrorCode::structural);
    const std::vector<core::CouplingEntry> lopsided{{0, 0, 1, -0.5}};
    CHECK(nwtest::code_of([&] { SystemSpec::from_triplets({1.0, -1.0}, lopsided); }) == ErrorCode::structural);
    const std::vector<core::CouplingEntry> out_of_range{{0, 0, 2, 1.0}};
    CHECK(nwtest::code_of([&] { SystemSpec::from_triplets({1.0, -1.0}, out_of_range); }) == ErrorCode::structural);
    const std::vector<core::CouplingEntry> twice{{0, 0, 0, 1.0}, {0, 0, 0, 1.0}};
    CHECK(nwtest::code_of([&] { SystemSpec::from_triplets({1.0}, twice); }) == ErrorCode::structural);
  }

  TEST_CASE("gamma of the zero tensor, linearity and shift invariance") {
    CHECK(core::gamma(SystemSpec::uncoupled({1.0, -1.0, 0.0})) == 0.0);
    const auto spec = nwtest::tartar();
    CHECK(core::gamma(spec.with_scaled_coupling(2.0)) == doctest::Approx(1.0));
    for (double sigma : {-3.0, 0.25, 7.0}) CHECK(core::gamma(spec.with_shifted_speeds(sigma)) == doctest::Approx(0.5));
  }

  TEST_CASE("gamma matches a brute-force loop on a 3x3 system") {
    const std::vector<double> c{0.0, 1.0, 3.0};
    std::vector<double> a(27, 0.0);
    auto set = [&](int i, int j, int k, double v) {
      a[static_cast<std::size_t>((i * 3 + j) * 3 + k)] = v;
      a[static_cast<std::size_t>((i * 3 + k) * 3 + j)] = v;
    };
    set(0, 1, 2, 0.4);
    set(1, 0, 2, -0.9);
    set(2, 0, 1, 0.2);
    set(2, 1, 2, 0.6);
    const SystemSpec spec(c, a);
    double brute = 0.0;
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k) {
        if (c[static_cast<std::size_t>(j)] == c[static_cast<std::size_t>(k)]) continue;
        double s = 0.0;
        for (int i = 0; i < 3; ++i) s += std::abs(spec.coupling(i, j, k));
        brute = std::max(brute, s / std::abs(c[static_cast<std::size_t>(j)] - c[static_cast<std::size_t>(k)]));
      }
    CHECK(core::gamma(spec) == doctest::Approx(brute).epsilon(1e-15));
  }

  TEST_CASE("contraction budget of the reference system") {
    const auto b = core::contraction_budget(0.5, 0.25);
    CHECK(b.admissible);
    REQUIRE(b.r_star);
    CHECK(*b.r_star == doctest::Approx(0.75 - std::sqrt(0.5)).epsilon(1e-14));
    CHECK(b.lipschitz == doctest::Approx(0.5));
    REQUIRE(b.r_max);
    CHECK(*b.r_star <= 0.25);
    CHECK(0.25 <= *b.r_max);
    // Fixed point of the budget map, reached by iteration.
    double r = 0.0;
    for (int n = 0; n < 400; ++n) r = 0.5 * (0.25 + r) * (0.25 + r);
    CHECK(r == doctest::Approx(*b.r_star).epsilon(1e-12));
  }

  TEST_CASE("budget edge cases") {
    const auto zero = core::contraction_budget(0.0, 3.0);
    CHECK(zero.admissible);
    CHECK(zero.r_star.value_or(-1.0) == 0.0);
    CHECK_FALSE(zero.r_max);
    const auto big = core::contraction_budget(0.5, 0.6);
    CHECK_FALSE(big.admissible);
    CHECK(big.lipschitz == doctest::Approx(1.2));
    CHECK_FALSE(big.r_max);
  }

  TEST_CASE("budget sequence") {
    const auto s = core::budget_sequence(0.5, 0.25, 2);
    REQUIRE(s.size() == 3);
    CHECK(s[0] == 0.0);
    CHECK(s[1] == 0.03125);
    CHECK(s[2] == doctest::Approx(0.0395507812).epsilon(1e-9));
    CHECK(core::budget_sequence(0.0, 1.0, 3) == std::vector<double>{0.0, 0.0, 0.0, 0.0});
    const auto longer = core::budget_sequence(0.5, 0.25, 200);
    CHECK(longer.back() == doctest::Approx(0.75 - std::sqrt(0.5)).epsilon(1e-12));
  }

  TEST_CASE("random admissible budgets: monotone, bounded by r_star, Vieta") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int n = 0; n < 100; ++n) {
      const double g = 0.01 + 4.0 * u(rng);
      const double e0 = 0.999 * u(rng) / (4.0 * g);
      const auto b = core::contraction_budget(g, e0);
      REQUIRE(b.admissible);
      CHECK(b.lipschitz < 1.0);
      const auto seq = core::budget_sequence(g, e0, 60);
      for (std::size_t m = 1; m < seq.size(); ++m) {
        CHECK(seq[m] >= seq[m - 1]);
        CHECK(seq[m] <= *b.r_star * (1.0 + 1e-12));
      }
      const double rs = *b.r_star;
      CHECK(g * (e0 + rs) * (e0 + rs) == doctest::Approx(rs).epsilon(1e-12));
      CHECK(rs * *b.r_max == doctest::Approx(e0 * e0).epsilon(1e-12));
      CHECK(rs <= e0);
      CHECK(e0 <= *b.r_max);
    }
  }
}
