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

#include "nullwave/solver/stability.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "nullwave/error.hpp"

namespace nullwave::solver {

using fields::GridField;

StabilityReport stability_experiment(const core::SystemSpec& spec, std::span<const fields::InitialDatum> data,
                                     std::span<const fields::InitialDatum> data_bar,
                                     const std::optional<geometry::TriangleDomain>& domain,
                                     const fields::Grid& grid, const PicardOptions& options) {
  if (data.size() != data_bar.size()) throw Error(ErrorCode::structural, "both data sets need one datum per component");
  StabilityReport report;
  for (std::size_t i = 0; i < data.size(); ++i) {
    report.data_distance += fields::datum_l1(fields::datum_difference(data[i], data_bar[i]));
  }
  auto run = picard_solve(spec, data, domain, grid, options);
  auto run_bar = picard_solve(spec, data_bar, domain, grid, options);
  report.run = run.report;
  report.run_bar = run_bar.report;
  if (run.report.contraction) {
    const double e0 = std::max(run.report.e0, run_bar.report.e0);
    const double lipschitz = 4.0 * *run.report.gamma * e0;
    if (lipschitz < 1.0) report.k2_predicted = 1.0 / (1.0 - lipschitz);
  }
  for (const auto v : {run.report.verdict, run_bar.report.verdict}) {
    if (v == Verdict::diverged || (v == Verdict::max_iter && report.verdict == Verdict::converged)) report.verdict = v;
  }
  if (report.verdict != Verdict::converged) {
    report.sup_solution_distance = std::numeric_limits<double>::quiet_NaN();
    report.k2_observed = std::numeric_limits<double>::quiet_NaN();
    return report;
  }

  std::vector<GridField> diffs;
  for (std::size_t i = 0; i < data.size(); ++i) diffs.push_back(fields::difference(run.fields[i], run_bar.fields[i]));
  for (int n = 0; n <= grid.nt; ++n) {
    double total = 0.0;
    for (const auto& d : diffs) total += fields::l1_level(d, n);
    if (total > report.sup_solution_distance) {
      report.sup_solution_distance = total;
      report.sup_time = grid.t(n);
    }
  }
  report.k2_observed = report.data_distance > 0.0 ? report.sup_solution_distance / report.data_distance : 1.0;
  return report;
}

UniquenessReport uniqueness_check(const core::SystemSpec& spec, std::span<const fields::InitialDatum> data,
                                  const std::optional<geometry::TriangleDomain>& domain, const fields::Grid& grid,
                                  const PicardOptions& options) {
  auto from_free = options;
  from_free.initial_guess = InitialGuess::free_transport;
  auto from_zero = options;
  from_zero.initial_guess = InitialGuess::zero;
  auto a = picard_solve(spec, data, domain, grid, from_free);
  auto b = picard_solve(spec, data, domain, grid, from_zero);
  UniquenessReport report;
  for (std::size_t i = 0; i < a.sources.size(); ++i) {
    const auto delta = fields::difference(a.sources[i], b.sources[i]);
    report.gap += domain ? fields::l1_over_triangle(delta, *domain) : fields::l1_over_window(delta);
  }
  report.from_free_transport = std::move(a.report);
  report.from_zero = std::move(b.report);
  return report;
}

}  // namespace nullwave::solver
