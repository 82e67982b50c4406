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

#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "nullwave/fields.hpp"
#include "nullwave/system_core.hpp"

namespace nullwave::solver {

enum class Verdict { converged, max_iter, diverged };
std::string_view to_string(Verdict verdict) noexcept;

enum class InitialGuess {
  free_transport,  // v^0_i = phi_i(x - c_i t), source-free
  zero,            // v^0_i = 0
};

struct PicardOptions {
  double tol = 1e-10;  // relative to sum_i eps_i
  int max_iter = 60;
  InitialGuess initial_guess = InitialGuess::free_transport;
  double divergence_factor = 1e6;  // diverged once sum_i alpha_i > factor * E0
  int threads = 0;                 // 0: default_thread_count()
};

struct IterationRecord {
  int m = 0;
  std::vector<double> alpha;  // ||f_i^m||, one per component
  double r_measured = 0.0;    // sum_i alpha_i^m
  double diff_triple = 0.0;   // sum_i |||v_i^m - v_i^{m-1}|||
  std::optional<double> ratio;
};

struct PicardReport {
  std::vector<IterationRecord> iterations;
  std::vector<double> budget;  // r_0 .. r_M; empty when gamma is undefined
  Verdict verdict = Verdict::max_iter;
  double k1_observed = 0.0;
  std::optional<int> first_bad_level;
  double e0 = 0.0;
  std::vector<double> eps;  // ||phi_i||
  std::optional<double> gamma;
  std::optional<core::ContractionBudget> contraction;
  bool norms_on_triangle = false;

  double final_r() const noexcept { return iterations.empty() ? 0.0 : iterations.back().r_measured; }
};

struct PicardResult {
  std::vector<fields::GridField> fields;   // v_i at the last iterate
  std::vector<fields::GridField> sources;  // f_i at the last iterate
  PicardReport report;
};

/// Fixed-point iteration v_i^m = T_i(phi_i, f_i^m), f_i^m = -sum_jk A_ijk v_j^{m-1} v_k^{m-1}.
///
/// Norms (alpha, triple-norm differences) are taken over `domain` when given,
/// otherwise over the whole grid rectangle. The stopping test always uses the
/// whole rectangle, so a window larger than the triangle is converged
/// everywhere. Divergence is reported in the verdict, never thrown.
PicardResult picard_solve(const core::SystemSpec& spec, std::span<const fields::InitialDatum> data,
                          const std::optional<geometry::TriangleDomain>& domain, const fields::Grid& grid,
                          const PicardOptions& options = {});

/// Pointwise f_i = -sum_jk A_ijk v_j v_k.
std::vector<fields::GridField> quadratic_sources(const core::SystemSpec& spec,
                                                 std::span<const fields::GridField> v);

/// Inequalities the contraction argument predicts for an admissible run.
struct PicardChecks {
  bool applicable = false;  // null condition holds and 4 gamma E0 < 1
  bool budget_dominated = true;
  bool contraction_bounded = true;
  bool k1_bounded = true;
  bool below_r_star = true;
  double max_ratio = 0.0;
  double worst_budget_excess = 0.0;  // max_m (r_measured - r_m)
  double k1_bound = 0.0;             // 4 gamma E0 * E0

  bool all_hold() const noexcept {
    return !applicable || (budget_dominated && contraction_bounded && k1_bounded && below_r_star);
  }
};

PicardChecks evaluate_checks(const PicardReport& report, double quadrature_tolerance = 1e-3,
                             double ratio_slack = 0.05);

}  // namespace nullwave::solver
