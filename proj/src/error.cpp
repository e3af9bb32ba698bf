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

#include "eeperf/error.hpp"

namespace eeperf {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::invalid_argument: return "invalid-argument";
    case ErrorCode::config: return "config";
    case ErrorCode::capacity: return "capacity";
    case ErrorCode::unsupported_size: return "unsupported-size";
    case ErrorCode::dimension_mismatch: return "dimension-mismatch";
    case ErrorCode::numerical_consistency: return "numerical-consistency";
    case ErrorCode::degenerate_interval: return "degenerate-interval";
    case ErrorCode::trivial_dynamics: return "trivial-dynamics";
    case ErrorCode::zero_resource: return "zero-resource";
    case ErrorCode::layer_conflict: return "layer-conflict";
    case ErrorCode::ambiguous_generator: return "ambiguous-generator";
    case ErrorCode::singular_fit: return "singular-fit";
    case ErrorCode::calibration_failure: return "calibration-failure";
    case ErrorCode::missing_calibration: return "missing-calibration";
    case ErrorCode::insufficient_data: return "insufficient-data";
    case ErrorCode::budget: return "budget";
    case ErrorCode::io: return "io";
  }
  return "unknown";
}

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

void fail(ErrorCode code, const std::string& message) { throw Error(code, message); }

}  // namespace eeperf
