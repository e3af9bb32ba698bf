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

#include "eeperf/quantity.hpp"

#include <cmath>

#include "eeperf/error.hpp"

namespace eeperf {

namespace {

void check_same(Dimension a, Dimension b, const char* op) {
  if (!(a == b)) {
    fail(ErrorCode::dimension_mismatch,
         std::string(op) + " of " + to_string(a) + " and " + to_string(b));
  }
}

}  // namespace

std::string to_string(Dimension d) {
  return "E^" + std::to_string(d.energy) + " T^" + std::to_string(d.time);
}

double Quantity::in(Dimension expected) const {
  check_same(dim_, expected, "conversion");
  return value_;
}

Quantity& Quantity::operator+=(const Quantity& rhs) {
  check_same(dim_, rhs.dim_, "addition");
  value_ += rhs.value_;
  return *this;
}

Quantity& Quantity::operator-=(const Quantity& rhs) {
  check_same(dim_, rhs.dim_, "subtraction");
  value_ -= rhs.value_;
  return *this;
}

bool operator<(const Quantity& a, const Quantity& b) {
  check_same(a.dim_, b.dim_, "comparison");
  return a.value_ < b.value_;
}

bool operator<=(const Quantity& a, const Quantity& b) {
  check_same(a.dim_, b.dim_, "comparison");
  return a.value_ <= b.value_;
}

Quantity sqrt(const Quantity& q) {
  const Dimension d = q.dimension();
  require(d.energy % 2 == 0 && d.time % 2 == 0, ErrorCode::dimension_mismatch,
          "square root of " + to_string(d));
  return {std::sqrt(q.value()), {d.energy / 2, d.time / 2}};
}

}  // namespace eeperf
