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

#include "nullwave/solver/riccati.hpp"

#include <cmath>
#include <sstream>

#include "nullwave/error.hpp"

namespace nullwave::solver {

double riccati_oracle(const fields::InitialDatum& datum, double c, double lambda, double x, double t) {
  const double foot = datum(x - c * t);
  const double denom = 1.0 - lambda * t * foot;
  if (std::abs(denom) <= 1e-12) {
    std::ostringstream os;
    os << "Riccati solution blows up at (x, t) = (" << x << ", " << t << ")";
    throw Error(ErrorCode::blowup_point, os.str());
  }
  return foot / denom;
}

}  // namespace nullwave::solver
