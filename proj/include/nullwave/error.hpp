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

#include <stdexcept>
#include <string>
#include <string_view>

namespace nullwave {

// Failure categories. Each maps one-to-one onto a status code of the C API.
enum class ErrorCode {
  structural,    // dimension or layout mismatch
  precondition,  // documented precondition violated (e.g. resonant triple for gamma)
  domain,        // argument outside the admissible set
  coverage,      // grid does not cover the region an operation needs
  degenerate,    // geometric or algebraic degeneracy (equal speeds, singular 2x2 solve)
  blowup_point,  // closed-form solution evaluated at its singularity
  gluing,        // sub-solutions disagree on an overlap
  config,        // malformed experiment configuration
  io,            // filesystem failure while writing reports
};

std::string_view to_string(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace nullwave
