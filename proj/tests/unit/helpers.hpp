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

#include <vector>

#include "nullwave/error.hpp"
#include "nullwave/fields.hpp"
#include "nullwave/system_core.hpp"

namespace nwtest {

// u1_t + c1 u1_x = alpha u1 u2, u2_t + c2 u2_x = beta u1 u2.
inline nullwave::core::SystemSpec two_by_two(double c1, double c2, double alpha = 1.0, double beta = 1.0) {
  const std::vector<nullwave::core::CouplingEntry> e{
      {0, 0, 1, -0.5 * alpha}, {0, 1, 0, -0.5 * alpha}, {1, 0, 1, -0.5 * beta}, {1, 1, 0, -0.5 * beta}};
  return nullwave::core::SystemSpec::from_triplets({c1, c2}, e);
}

inline nullwave::core::SystemSpec tartar() { return two_by_two(1.0, -1.0); }

inline std::vector<nullwave::fields::InitialDatum> hats(int p, double height, double lo = 0.0, double hi = 1.0) {
  return std::vector<nullwave::fields::InitialDatum>(static_cast<std::size_t>(p),
                                                     nullwave::fields::InitialDatum::hat(lo, hi, height));
}

template <class F>
nullwave::ErrorCode code_of(F&& f) {
  try {
    f();
  } catch (const nullwave::Error& e) {
    return e.code();
  }
  return static_cast<nullwave::ErrorCode>(-1);
}

}  // namespace nwtest
