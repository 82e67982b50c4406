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
#include <sstream>

#include "doctest.h"
#include "helpers.hpp"
#include "nullwave/cli/report.hpp"
#include "nullwave/error.hpp"
#include "nullwave/solver/glue.hpp"
#include "nullwave/solver/picard.hpp"
#include "nullwave/solver/riccati.hpp"
#include "nullwave/solver/stability.hpp"

using namespace nullwave;
using fields::Grid;
using fields::GridField;
using fields::InitialDatum;

namespace {

struct Run {
  Grid grid;
  std::optional<geometry::TriangleDomain> domain;
  solver::PicardResult result;
};

Run tartar_on_triangle(double h, double height = 0.25) {
  const auto spec = nwtest::tartar();
  const auto data = nwtest::hats(2, height);
  const auto d = geometry::triangle({0.0, 1.0}, spec.speeds());
  const auto g = solver::cone_grid({0.0, 1.0}, spec.speeds(), d.t_star, {h, h, 0.05});
  return {g, d, solver::picard_solve(spec, data, d, g)};
}

}  // namespace

TEST_SUITE("picard") {
  TEST_CASE("linear system converges in one step") {
    const auto spec = core::SystemSpec::uncoupled({1.0, -1.0});
    const auto data = nwtest::hats(2, 1.0);
    const auto g = solver::cone_grid({0.0, 1.0}, spec.speeds(), 0.5, {1e-2, 1e-2, 0.05});
    const auto r = solver::picard_solve(spec, data, geometry::triangle({0.0, 1.0}, spec.speeds()), g);
    CHECK(r.report.verdict == solver::Verdict::converged);
    REQUIRE(r.report.iterations.size() == 1);
    CHECK(r.report.iterations[0].alpha == std::vector<double>{0.0, 0.0});
    CHECK(r.report.final_r() == 0.0);
    std::ostringstream os;
    cli::emit_convergence_table(os, r.report);
    CHECK(os.str() == "m,r_measured,r_budget,diff_triple,ratio\n1,0,0,0,\n");
  }

  TEST_CASE("admissible null system stays inside its budget") {
    const auto run = tartar_on_triangle(2e-3);
    const auto& rep = run.result.report;
    CHECK(rep.verdict == solver::Verdict::converged);
    CHECK(rep.norms_on_triangle);
    REQUIRE(rep.gamma);
    CHECK(*rep.gamma == 0.5);
    CHECK(rep.e0 == doctest::Approx(0.25).epsilon(1e-15));
    const auto seq = core::budget_sequence(0.5, 0.25, static_cast<int>(rep.iterations.size()));
    CHECK(rep.budget == seq);
    const auto checks = solver::evaluate_checks(rep);
    CHECK(checks.applicable);
    CHECK(checks.all_hold());
    CHECK(checks.max_ratio <= 0.55);
    CHECK(rep.final_r() <= 0.75 - std::sqrt(0.5) + 1e-3);
    CHECK(rep.k1_observed == doctest::Approx(rep.final_r() / 0.25));
  }

  TEST_CASE("scalar resonant equation matches the closed form") {
    const std::vector<core::CouplingEntry> e{{0, 0, 0, -1.0}};
    const auto spec = core::SystemSpec::from_triplets({1.0}, e);
    const std::vector<InitialDatum> data{InitialDatum::hat(0.0, 1.0, 0.5)};
    const auto g = solver::cone_grid({0.0, 1.0}, spec.speeds(), 1.0, {1e-3, 1e-3, 0.05});
    const auto r = solver::picard_solve(spec, data, std::nullopt, g);
    REQUIRE(r.report.verdict == solver::Verdict::converged);
    double err = 0.0;
    for (int j = 0; j <= g.nx; ++j)
      err = std::max(err, std::abs(r.fields[0].at(j, g.nt) - solver::riccati_oracle(data[0], 1.0, 1.0, g.x(j), 1.0)));
    CHECK(err <= 1e-2);
  }

  TEST_CASE("resonant blow-up makes the iteration diverge") {
    const std::vector<core::CouplingEntry> e{{0, 0, 0, -1.0}};
    const auto spec = core::SystemSpec::from_triplets({1.0}, e);
    const std::vector<InitialDatum> data{InitialDatum::hat(0.0, 1.0, 2.0)};
    const auto g = solver::cone_grid({0.0, 1.0}, spec.speeds(), 1.0, {1e-2, 1e-2, 0.05});
    const auto r = solver::picard_solve(spec, data, std::nullopt, g);
    CHECK(r.report.verdict == solver::Verdict::diverged);
    std::ostringstream os;
    cli::emit_convergence_table(os, r.report);
    CHECK(os.str().find("verdict,diverged,,,\n") != std::string::npos);
  }

  TEST_CASE("riccati oracle") {
    const auto flat = InitialDatum::plateau(-10.0, 10.0, 0.5, 1.0);
    CHECK(solver::riccati_oracle(flat, 1.0, 1.0, 1.0, 1.0) == doctest::Approx(1.0));
    const auto hat = InitialDatum::hat(0.0, 1.0, 1.0);
    CHECK(solver::riccati_oracle(hat, 2.0, 3.0, 0.3, 0.0) == hat(0.3));
    const auto two = InitialDatum::plateau(-10.0, 10.0, 2.0, 1.0);
    CHECK(nwtest::code_of([&] { (void)solver::riccati_oracle(two, 1.0, 1.0, 0.5, 0.5); }) == ErrorCode::blowup_point);
  }

  TEST_CASE("both starting guesses reach the same solution") {
    const auto spec = nwtest::tartar();
    const auto data = nwtest::hats(2, 0.25);
    const auto d = geometry::triangle({0.0, 1.0}, spec.speeds());
    const auto g = solver::cone_grid({0.0, 1.0}, spec.speeds(), d.t_star, {5e-3, 5e-3, 0.05});
    const auto u = solver::uniqueness_check(spec, data, d, g);
    CHECK(u.from_free_transport.verdict == solver::Verdict::converged);
    CHECK(u.from_zero.verdict == solver::Verdict::converged);
    CHECK(u.gap <= 1e-9);
  }

  TEST_CASE("Galilean shift of the speeds") {
    const double sigma = 0.5;
    const double h = 5e-3;
    const auto spec = nwtest::tartar();
    const auto shifted = spec.with_shifted_speeds(sigma);
    const auto data = nwtest::hats(2, 0.25);
    const auto g = solver::cone_grid({0.0, 1.0}, spec.speeds(), 0.5, {h, h, 0.05});
    const auto gs = solver::cone_grid({0.0, 1.0}, shifted.speeds(), 0.5, {h, h, 0.05});
    const auto a = solver::picard_solve(spec, data, std::nullopt, g);
    const auto b = solver::picard_solve(shifted, data, std::nullopt, gs);
    REQUIRE(a.report.verdict == solver::Verdict::converged);
    REQUIRE(b.report.verdict == solver::Verdict::converged);
    double worst = 0.0;
    for (int n = 0; n <= g.nt; ++n) {
      const double t = g.t(n);
      const int m = static_cast<int>(std::lround(t / gs.dt));
      for (int i = 0; i < 2; ++i) {
        double l1 = 0.0;
        for (int j = 0; j <= g.nx; ++j)
          l1 += std::abs(b.fields[static_cast<std::size_t>(i)].level_value(m, g.x(j) + sigma * t) -
                         a.fields[static_cast<std::size_t>(i)].at(j, n));
        worst = std::max(worst, l1 * g.dx);
      }
    }
    CHECK(worst <= 5.0 * h);
  }

  TEST_CASE("scaling covariance") {
    const double lambda = 2.0;
    const auto spec = nwtest::tartar();
    const auto scaled = spec.with_scaled_coupling(1.0 / lambda);
    const auto d = geometry::triangle({0.0, 1.0}, spec.speeds());
    const auto g = solver::cone_grid({0.0, 1.0}, spec.speeds(), d.t_star, {5e-3, 5e-3, 0.05});
    const auto a = solver::picard_solve(spec, nwtest::hats(2, 0.25), d, g);
    const auto b = solver::picard_solve(scaled, nwtest::hats(2, 0.25 * lambda), d, g);
    for (std::size_t i = 0; i < 2; ++i) {
      double worst = 0.0;
      for (std::size_t n = 0; n < a.fields[i].samples().size(); ++n)
        worst = std::max(worst, std::abs(b.fields[i].samples()[n] - lambda * a.fields[i].samples()[n]));
      CHECK(worst <= 1e-3);
    }
  }

  TEST_CASE("iterates vanish outside the propagation cone") {
    const auto spec = nwtest::tartar();
    const auto g = solver::cone_grid({0.0, 1.0}, spec.speeds(), 0.8, {1e-2, 1e-2, 0.1});
    const auto r = solver::picard_solve(spec, nwtest::hats(2, 0.25), std::nullopt, g);
    for (const auto& v : r.fields) {
      for (int n = 0; n <= g.nt; ++n) {
        const auto slice = geometry::cone_slice({0.0, 1.0}, spec.speeds(), g.t(n));
        for (int j = 0; j <= g.nx; ++j)
          if (g.x(j) < slice.lo - 1e-12 || g.x(j) > slice.hi + 1e-12) CHECK(v.at(j, n) == 0.0);
      }
    }
  }
}

TEST_SUITE("stability") {
  TEST_CASE("identical data") {
    const auto spec = nwtest::tartar();
    const auto data = nwtest::hats(2, 0.25);
    const auto d = geometry::triangle({0.0, 1.0}, spec.speeds());
    const auto g = solver::cone_grid({0.0, 1.0}, spec.speeds(), d.t_star, {1e-2, 1e-2, 0.05});
    const auto s = solver::stability_experiment(spec, data, data, d, g);
    CHECK(s.data_distance == 0.0);
    CHECK(s.sup_solution_distance == 0.0);
    CHECK(s.k2_observed == 1.0);
  }

  TEST_CASE("small perturbation obeys the predicted constant") {
    const auto spec = nwtest::tartar();
    const auto data = nwtest::hats(2, 0.25);
    auto bar = data;
    bar[0] = data[0].scaled(1.0 - 1e-3 / 0.125);
    const auto d = geometry::triangle({0.0, 1.0}, spec.speeds());
    const auto g = solver::cone_grid({0.0, 1.0}, spec.speeds(), d.t_star, {2e-3, 2e-3, 0.05});
    const auto s = solver::stability_experiment(spec, data, bar, d, g);
    REQUIRE(s.k2_predicted);
    CHECK(*s.k2_predicted == doctest::Approx(2.0));
    CHECK(s.data_distance == doctest::Approx(1e-3).epsilon(1e-12));
    CHECK(s.k2_observed >= 1.0 - 1e-3);
    CHECK(s.k2_observed <= 2.0 * 1.1);
  }

  TEST_CASE("linear transport is an isometry") {
    const auto spec = core::SystemSpec::uncoupled({1.0, -1.0});
    const auto data = nwtest::hats(2, 0.25);
    auto bar = data;
    bar[1] = data[1].scaled(0.9);
    const auto d = geometry::triangle({0.0, 1.0}, spec.speeds());
    const auto g = solver::cone_grid({0.0, 1.0}, spec.speeds(), d.t_star, {1e-3, 1e-3, 0.05});
    const auto s = solver::stability_experiment(spec, data, bar, d, g);
    CHECK(s.k2_observed == doctest::Approx(1.0).epsilon(1e-3));
  }
}
