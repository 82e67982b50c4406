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

#include "nullwave/cli/report.hpp"

#include <ostream>

#include "nullwave/fields.hpp"

namespace nullwave::cli {

using fields::format_number;

void emit_convergence_table(std::ostream& out, const solver::PicardReport& report) {
  out << "m,r_measured,r_budget,diff_triple,ratio\n";
  for (const auto& rec : report.iterations) {
    out << rec.m << ',' << format_number(rec.r_measured) << ',';
    if (static_cast<std::size_t>(rec.m) < report.budget.size()) out << format_number(report.budget[static_cast<std::size_t>(rec.m)]);
    out << ',' << format_number(rec.diff_triple) << ',';
    if (rec.ratio) out << format_number(*rec.ratio);
    out << '\n';
  }
  if (report.verdict != solver::Verdict::converged) out << "verdict," << solver::to_string(report.verdict) << ",,,\n";
}

void emit_growth_table(std::ostream& out, std::span<const std::pair<double, double>> curve) {
  out << "t,max_abs_u\n";
  for (const auto& [t, m] : curve) out << format_number(t) << ',' << format_number(m) << '\n';
}

}  // namespace nullwave::cli
