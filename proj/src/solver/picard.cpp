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

#include "nullwave/solver/picard.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "nullwave/error.hpp"
#include "nullwave/solver/parallel.hpp"
#include "nullwave/solver/transport.hpp"

namespace nullwave::solver {

using fields::GridField;

std::string_view to_string(Verdict verdict) noexcept {
  switch (verdict) {
    case Verdict::converged: return "converged";
    case Verdict::max_iter: return "max_iter";
    case Verdict::diverged: return "diverged";
  }
  return "unknown";
}

std::vector<GridField> quadratic_sources(const core::SystemSpec& spec, std::span<const GridField> v) {
  const int p = spec.p();
  if (static_cast<int>(v.size()) != p) throw Error(ErrorCode::structural, "one field per component required");
  std::vector<GridField> f;
  f.reserve(v.size());
  for (int i = 0; i < p; ++i) {
    GridField fi(v[0].grid());
    auto out = fi.samples();
    for (int j = 0; j < p; ++j) {
      for (int k = 0; k < p; ++k) {
        const double a = spec.coupling(i, j, k);
        if (a == 0.0) continue;
        const auto vj = v[static_cast<std::size_t>(j)].samples();
        const auto vk = v[static_cast<std::size_t>(k)].samples();
        for (std::size_t n = 0; n < out.size(); ++n) out[n] -= a * vj[n] * vk[n];
      }
    }
    fi.check_finite();
    f.push_back(std::move(fi));
  }
  return f;
}

PicardResult picard_solve(const core::SystemSpec& spec, std::span<const fields::InitialDatum> data,
                          const std::optional<geometry::TriangleDomain>& domain, const fields::Grid& grid,
                          const PicardOptions& options) {
  const int p = spec.p();
  if (static_cast<int>(data.size()) != p) throw Error(ErrorCode::structural, "one datum per component required");
  if (!(options.tol >= 0.0) || options.max_iter < 1) {
    throw Error(ErrorCode::domain, "Picard needs tol >= 0 and max_iter >= 1");
  }
  const auto pu = static_cast<std::size_t>(p);
  const int threads = options.threads > 0 ? options.threads : default_thread_count();

  PicardResult result;
  PicardReport& report = result.report;
  report.norms_on_triangle = domain.has_value();
  for (const auto& d : data) {
    report.eps.push_back(fields::datum_l1(d));
    report.e0 += report.eps.back();
  }
  if (core::validate(spec).null_condition_holds && spec.has_distinct_speeds()) {
    report.gamma = core::gamma(spec);
    report.contraction = core::contraction_budget(*report.gamma, report.e0);
  }

  auto region_norm = [&](const GridField& g) {
    return domain ? fields::l1_over_triangle(g, *domain) : fields::l1_over_window(g);
  };

  std::vector<GridField> v;
  v.reserve(pu);
  for (int i = 0; i < p; ++i) {
    if (options.initial_guess == InitialGuess::free_transport) {
      v.push_back(transport_solve(spec.speed(i), data[static_cast<std::size_t>(i)], grid));
    } else {
      v.emplace_back(grid);
    }
  }
  std::vector<GridField> f_prev(pu, GridField(grid));
  bool data_differs = options.initial_guess == InitialGuess::zero;
  std::optional<double> last_diff;
  report.verdict = Verdict::max_iter;

  for (int m = 1; m <= options.max_iter; ++m) {
    auto f = quadratic_sources(spec, v);
    IterationRecord rec;
    rec.m = m;

    std::optional<int> bad;
    for (const auto& fi : f) {
      if (fi.diverged()) bad = bad ? std::min(*bad, *fi.first_bad_level()) : *fi.first_bad_level();
    }
    if (bad) {
      rec.alpha.assign(pu, std::numeric_limits<double>::infinity());
      rec.r_measured = rec.diff_triple = std::numeric_limits<double>::infinity();
      report.iterations.push_back(rec);
      report.verdict = Verdict::diverged;
      report.first_bad_level = bad;
      break;
    }

    std::vector<GridField> next(pu, GridField(grid));
    parallel_for(pu, threads, [&](std::size_t i) {
      next[i] = transport_solve(spec.speed(static_cast<int>(i)), data[i], f[i], grid);
    });

    double diff_region = 0.0;
    double diff_window = 0.0;
    rec.alpha.resize(pu);
    for (std::size_t i = 0; i < pu; ++i) {
      rec.alpha[i] = region_norm(f[i]);
      rec.r_measured += rec.alpha[i];
      const auto delta = fields::difference(f[i], f_prev[i]);
      const double in_region = region_norm(delta);
      diff_region += in_region;
      diff_window += domain ? fields::l1_over_window(delta) : in_region;
    }
    if (data_differs) {
      diff_region += report.e0;
      diff_window += report.e0;
      data_differs = false;
    }
    rec.diff_triple = diff_region;
    if (last_diff && *last_diff > 0.0) rec.ratio = diff_region / *last_diff;
    last_diff = diff_region;
    report.iterations.push_back(rec);

    for (const auto& vi : next) {
      if (vi.diverged()) bad = bad ? std::min(*bad, *vi.first_bad_level()) : *vi.first_bad_level();
    }
    v = std::move(next);
    f_prev = std::move(f);
    if (bad || (report.e0 > 0.0 && rec.r_measured > options.divergence_factor * report.e0)) {
      report.verdict = Verdict::diverged;
      report.first_bad_level = bad;
      break;
    }
    if (diff_window <= options.tol * report.e0) {
      report.verdict = Verdict::converged;
      break;
    }
  }

  if (report.gamma) {
    report.budget = core::budget_sequence(*report.gamma, report.e0, static_cast<int>(report.iterations.size()));
  }
  report.k1_observed = report.e0 > 0.0 ? report.final_r() / report.e0 : 0.0;
  result.fields = std::move(v);
  result.sources = std::move(f_prev);
  return result;
}

PicardChecks evaluate_checks(const PicardReport& report, double quadrature_tolerance, double ratio_slack) {
  PicardChecks checks;
  checks.applicable = report.contraction.has_value() && report.contraction->admissible;
  if (!checks.applicable) return checks;
  const auto& budget = *report.contraction;
  checks.worst_budget_excess = -std::numeric_limits<double>::infinity();
  for (const auto& rec : report.iterations) {
    const double bound = report.budget.at(static_cast<std::size_t>(rec.m));
    checks.worst_budget_excess = std::max(checks.worst_budget_excess, rec.r_measured - bound);
    if (!(rec.r_measured <= bound + quadrature_tolerance)) checks.budget_dominated = false;
    if (rec.m >= 2 && rec.ratio) {
      checks.max_ratio = std::max(checks.max_ratio, *rec.ratio);
      if (!(*rec.ratio <= budget.lipschitz + ratio_slack)) checks.contraction_bounded = false;
    }
  }
  checks.k1_bound = budget.lipschitz * report.e0;
  checks.k1_bounded = report.final_r() <= checks.k1_bound + quadrature_tolerance;
  checks.below_r_star = report.final_r() <= budget.r_star.value_or(0.0) + quadrature_tolerance;
  if (report.verdict == Verdict::diverged) {
    checks.budget_dominated = false;
  }
  return checks;
}

}  // namespace nullwave::solver
