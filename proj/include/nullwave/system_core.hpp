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
#include <utility>
#include <vector>

namespace nullwave::core {

/// One sparse coupling coefficient A_ijk, zero-based indices.
struct CouplingEntry {
  int i = 0;
  int j = 0;
  int k = 0;
  double value = 0.0;
};

/// Speeds c_i and the dense quadratic coupling tensor A_ijk of
///
///   d_t u_i + c_i d_x u_i + sum_jk A_ijk u_j u_k = 0,   i = 0..p-1.
///
/// The tensor is stored row-major in (i, j, k). Symmetry in (j, k) is not
/// enforced by the constructor; validate() reports it, and from_triplets()
/// rejects asymmetric sparse input.
class SystemSpec {
 public:
  SystemSpec(std::vector<double> speeds, std::vector<double> coupling);

  /// Builds the dense tensor from sparse entries. Both (i,j,k) and (i,k,j)
  /// must be listed (with equal values within 1e-14) for off-diagonal pairs.
  static SystemSpec from_triplets(std::vector<double> speeds, std::span<const CouplingEntry> entries);

  static SystemSpec uncoupled(std::vector<double> speeds);

  int p() const noexcept { return static_cast<int>(speeds_.size()); }
  std::span<const double> speeds() const noexcept { return speeds_; }
  double speed(int i) const { return speeds_.at(static_cast<std::size_t>(i)); }
  double coupling(int i, int j, int k) const noexcept { return coupling_[index(i, j, k)]; }
  std::span<const double> coupling_tensor() const noexcept { return coupling_; }

  double min_speed() const noexcept;
  double max_speed() const noexcept;
  bool has_distinct_speeds() const noexcept { return min_speed() < max_speed(); }

  SystemSpec with_shifted_speeds(double sigma) const;
  SystemSpec with_scaled_coupling(double factor) const;

 private:
  std::size_t index(int i, int j, int k) const noexcept {
    const auto n = static_cast<std::size_t>(p());
    return (static_cast<std::size_t>(i) * n + static_cast<std::size_t>(j)) * n + static_cast<std::size_t>(k);
  }

  std::vector<double> speeds_;
  std::vector<double> coupling_;
};

struct ResonantTriple {
  int i = 0;
  int j = 0;
  int k = 0;

  friend bool operator==(const ResonantTriple&, const ResonantTriple&) = default;
};

struct SpeedGroup {
  double speed = 0.0;
  std::vector<int> components;
};

struct ValidationReport {
  bool symmetric = true;
  bool null_condition_holds = true;
  std::vector<ResonantTriple> resonant_triples;  // zero-based
  std::vector<SpeedGroup> speed_multiplicities;  // sorted by speed
};

/// Classifies the coupling against the null condition: a triple (i,j,k) is
/// resonant when A_ijk != 0 and |c_j - c_k| <= speed_equality_tolerance.
ValidationReport validate(const SystemSpec& spec, double speed_equality_tolerance = 0.0);

/// gamma = max over (j,k) with c_j != c_k of sum_i |A_ijk| / |c_j - c_k|.
/// Throws ErrorCode::precondition if a resonant triple is present.
double gamma(const SystemSpec& spec);

struct ContractionBudget {
  double gamma = 0.0;
  double e0 = 0.0;
  bool admissible = false;            // 4 gamma E0 < 1
  std::optional<double> r_star;       // smaller fixed point of r = gamma (E0 + r)^2
  std::optional<double> r_max;        // larger root; absent when gamma = 0 or inadmissible
  double lipschitz = 0.0;             // 4 gamma E0, the r = E0 choice
  std::optional<double> lipschitz_at_r_star;  // 2 gamma (E0 + r_star)
};

ContractionBudget contraction_budget(double gamma, double e0);

/// [r_0, ..., r_m] with r_0 = 0 and r_k = gamma (E0 + r_{k-1})^2.
std::vector<double> budget_sequence(double gamma, double e0, int m);

}  // namespace nullwave::core
