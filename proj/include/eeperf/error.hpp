// Copyright 2026 The eeperf Authors
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

namespace eeperf {

enum class ErrorCode {
  invalid_argument,
  config,
  capacity,
  unsupported_size,
  dimension_mismatch,
  numerical_consistency,
  degenerate_interval,
  trivial_dynamics,
  zero_resource,
  layer_conflict,
  ambiguous_generator,
  singular_fit,
  calibration_failure,
  missing_calibration,
  insufficient_data,
  budget,
  io,
};

std::string_view to_string(ErrorCode code) noexcept;

/// Every failure raised by the toolkit carries a category so the CLI can map
/// it onto an exit status.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message);

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] void fail(ErrorCode code, const std::string& message);

inline void require(bool condition, ErrorCode code, const std::string& message) {
  if (!condition) fail(code, message);
}

}  // namespace eeperf
