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

#include "nullwave/system_core.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <sstream>

#include "nullwave/error.hpp"

namespace nullwave::core {

namespace {

constexpr double kSymmetryTolerance = 1e-14;

std::string triple_name(int i, int j, int k) {
  std::ostringstream os;
  os << '(' << i + 1 << ',' << j + 1 << ',' << k + 1 << ')';
  return os.str();
}

}  // namespace

SystemSpec::SystemSpec(std::vector<double> speeds, std::vector<double> coupling)
    : speeds_(std::move(speeds)), coupling_(std::move(coupling)) {
  if (speeds_.empty()) throw Error(ErrorCode::structural, "system needs at least one component");
  const auto n = speeds_.size();
  if (coupling_.size() != n * n * n) {
    std::ostringstream os;
    os << "coupling tensor has " << coupling_.size() << " entries, expected p^3 = " << n * n * n;
    throw Error(ErrorCode::structural, os.str());
  }
  for (double c : speeds_) {
    if (!std::isfinite(c)) throw Error(ErrorCode::domain, "speeds must be finite");
  }
  for (double a : coupling_) {
    if (!std::isfinite(a)) throw Error(ErrorCode::domain, "coupling coefficients must be finite");
  }
}

SystemSpec SystemSpec::from_triplets(std::vector<double> speeds, std::span<const CouplingEntry> entries) {
  const int p = static_cast<int>(speeds.size());
  if (p < 1) throw Error(ErrorCode::structural, "system needs at least one component");
  const auto n = static_cast<std::size_t>(p);
  std::vector<double> dense(n * n * n, 0.0);
  std::vector<bool> seen(dense.size(), false);
  auto at = [n](int i, int j, int k) {
    return (static_cast<std::size_t>(i) * n + static_cast<std::size_t>(j)) * n + static_cast<std::size_t>(k);
  };
  for (const auto& e : entries) {
    if (e.i < 0 || e.j < 0 || e.k < 0 || e.i >= p || e.j >= p || e.k >= p) {
      throw Error(ErrorCode::structural, "coupling entry " + triple_name(e.i, e.j, e.k) + " out of range");
    }
    const auto idx = at(e.i, e.j, e.k);
    if (seen[idx]) throw Error(ErrorCode::structural, "duplicate coupling entry " + triple_name(e.i, e.j, e.k));
    seen[idx] = true;
    dense[idx] = e.value;
  }
  for (int i = 0; i < p; ++i) {
    for (int j = 0; j < p; ++j) {
      for (int k = j + 1; k < p; ++k) {
        const double x = dense[at(i, j, k)];
        const double y = dense[at(i, k, j)];
        const double scale = std::max({1.0, std::abs(x), std::abs(y)});
        if (std::abs(x - y) > kSymmetryTolerance * scale) {
          throw Error(ErrorCode::structural, "coupling not symmetric in the last two indices at " +
                                                 triple_name(i, j, k) + " vs " + triple_name(i, k, j));
        }
        const double mean = 0.5 * (x + y);
        dense[at(i, j, k)] = mean;
        dense[at(i, k, j)] = mean;
      }
    }
  }
  return SystemSpec(std::move(speeds), std::move(dense));
}

SystemSpec SystemSpec::uncoupled(std::vector<double> speeds) {
  const auto n = speeds.size();
  return SystemSpec(std::move(speeds), std::vector<double>(n * n * n, 0.0));
}

double SystemSpec::min_speed() const noexcept { return *std::min_element(speeds_.begin(), speeds_.end()); }

double SystemSpec::max_speed() const noexcept { return *std::max_element(speeds_.begin(), speeds_.end()); }

SystemSpec SystemSpec::with_shifted_speeds(double sigma) const {
  auto shifted = speeds_;
  for (double& c : shifted) c += sigma;
  return SystemSpec(std::move(shifted), coupling_);
}

SystemSpec SystemSpec::with_scaled_coupling(double factor) const {
  auto scaled = coupling_;
  for (double& a : scaled) a *= factor;
  return SystemSpec(speeds_, std::move(scaled));
}

ValidationReport validate(const SystemSpec& spec, double speed_equality_tolerance) {
  if (!(speed_equality_tolerance >= 0.0)) {
    throw Error(ErrorCode::domain, "speed equality tolerance must be non-negative");
  }
  const int p = spec.p();
  ValidationReport report;
  for (int i = 0; i < p; ++i) {
    for (int j = 0; j < p; ++j) {
      for (int k = 0; k < p; ++k) {
        const double a = spec.coupling(i, j, k);
        if (a != spec.coupling(i, k, j)) report.symmetric = false;
        if (a != 0.0 && std::abs(spec.speed(j) - spec.speed(k)) <= speed_equality_tolerance) {
          report.resonant_triples.push_back({i, j, k});
        }
      }
    }
  }
  report.null_condition_holds = report.resonant_triples.empty();

  std::vector<int> order(static_cast<std::size_t>(p));
  for (int i = 0; i < p; ++i) order[static_cast<std::size_t>(i)] = i;
  std::stable_sort(order.begin(), order.end(), [&](int l, int r) { return spec.speed(l) < spec.speed(r); });
  for (int i : order) {
    const double c = spec.speed(i);
    if (!report.speed_multiplicities.empty() &&
        c - report.speed_multiplicities.back().speed <= speed_equality_tolerance) {
      report.speed_multiplicities.back().components.push_back(i);
    } else {
      report.speed_multiplicities.push_back({c, {i}});
    }
  }
  return report;
}

double gamma(const SystemSpec& spec) {
  const auto report = validate(spec);
  if (!report.null_condition_holds) {
    const auto& t = report.resonant_triples.front();
    throw Error(ErrorCode::precondition,
                "gamma is undefined: resonant coupling at " + triple_name(t.i, t.j, t.k));
  }
  const int p = spec.p();
  double result = 0.0;
  for (int j = 0; j < p; ++j) {
    for (int k = 0; k < p; ++k) {
      const double gap = std::abs(spec.speed(j) - spec.speed(k));
      if (gap == 0.0) continue;
      double sum = 0.0;
      for (int i = 0; i < p; ++i) sum += std::abs(spec.coupling(i, j, k));
      result = std::max(result, sum / gap);
    }
  }
  return result;
}

ContractionBudget contraction_budget(double gamma, double e0) {
  if (!(gamma >= 0.0) || !(e0 >= 0.0) || !std::isfinite(gamma) || !std::isfinite(e0)) {
    throw Error(ErrorCode::domain, "contraction budget needs finite gamma >= 0 and E0 >= 0");
  }
  ContractionBudget budget;
  budget.gamma = gamma;
  budget.e0 = e0;
  budget.lipschitz = 4.0 * gamma * e0;
  budget.admissible = budget.lipschitz < 1.0;

  // Roots of gamma r^2 + (2 gamma E0 - 1) r + gamma E0^2 = 0. The smaller one
  // is written as E0^2 / r_max to avoid cancellation when gamma E0 is small.
  const double disc = 1.0 - budget.lipschitz;
  if (disc >= 0.0) {
    const double big = 1.0 - 2.0 * gamma * e0 + std::sqrt(disc);
    budget.r_star = 2.0 * gamma * e0 * e0 / big;
    budget.lipschitz_at_r_star = 2.0 * gamma * (e0 + *budget.r_star);
    if (gamma > 0.0 && budget.admissible) budget.r_max = big / (2.0 * gamma);
  }
  return budget;
}

std::vector<double> budget_sequence(double gamma, double e0, int m) {
  if (m < 0) throw Error(ErrorCode::domain, "budget sequence length must be non-negative");
  std::vector<double> r(static_cast<std::size_t>(m) + 1, 0.0);
  for (std::size_t k = 1; k < r.size(); ++k) {
    const double s = e0 + r[k - 1];
    r[k] = gamma * s * s;
  }
  return r;
}

}  // namespace nullwave::core
