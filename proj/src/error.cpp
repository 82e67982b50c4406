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

#include "nullwave/error.hpp"

namespace nullwave {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::structural: return "structural";
    case ErrorCode::precondition: return "precondition";
    case ErrorCode::domain: return "domain";
    case ErrorCode::coverage: return "coverage";
    case ErrorCode::degenerate: return "degenerate";
    case ErrorCode::blowup_point: return "blowup_point";
    case ErrorCode::gluing: return "gluing";
    case ErrorCode::config: return "config";
    case ErrorCode::io: return "io";
  }
  return "unknown";
}

}  // namespace nullwave
