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

#include <string>

namespace eeperf {

/// Integer exponents of (energy, time). Everything else in the toolkit is a
/// pure number: entropies are bits, complexities are step counts.
struct Dimension {
  int energy = 0;
  int time = 0;

  constexpr bool dimensionless() const { return energy == 0 && time == 0; }
  friend constexpr bool operator==(Dimension, Dimension) = default;
  friend constexpr Dimension operator+(Dimension a, Dimension b) {
    return {a.energy + b.energy, a.time + b.time};
  }
  friend constexpr Dimension operator-(Dimension a, Dimension b) {
    return {a.energy - b.energy, a.time - b.time};
  }
};

namespace dims {
inline constexpr Dimension none{0, 0};
inline constexpr Dimension energy{1, 0};
inline constexpr Dimension energy_squared{2, 0};
inline constexpr Dimension time{0, 1};
inline constexpr Dimension action{1, 1};
inline constexpr Dimension frequency{0, -1};
}  // namespace dims

std::string to_string(Dimension d);

/// A real value tagged with its dimension. Addition and comparison of
/// incompatible dimensions throw `ErrorCode::dimension_mismatch`.
class Quantity {
 public:
  constexpr Quantity() = default;
  constexpr Quantity(double value, Dimension dim) : value_(value), dim_(dim) {}

  constexpr double value() const { return value_; }
  constexpr Dimension dimension() const { return dim_; }

  /// Value of a quantity that must carry `expected`; throws otherwise.
  double in(Dimension expected) const;

  Quantity& operator+=(const Quantity& rhs);
  Quantity& operator-=(const Quantity& rhs);

  friend Quantity operator+(Quantity a, const Quantity& b) { return a += b; }
  friend Quantity operator-(Quantity a, const Quantity& b) { return a -= b; }
  friend constexpr Quantity operator*(const Quantity& a, const Quantity& b) {
    return {a.value_ * b.value_, a.dim_ + b.dim_};
  }
  friend constexpr Quantity operator/(const Quantity& a, const Quantity& b) {
    return {a.value_ / b.value_, a.dim_ - b.dim_};
  }
  friend constexpr Quantity operator*(double s, const Quantity& q) { return {s * q.value_, q.dim_}; }
  friend constexpr Quantity operator*(const Quantity& q, double s) { return {s * q.value_, q.dim_}; }
  friend constexpr Quantity operator/(const Quantity& q, double s) { return {q.value_ / s, q.dim_}; }

  friend bool operator<(const Quantity& a, const Quantity& b);
  friend bool operator<=(const Quantity& a, const Quantity& b);

 private:
  double value_ = 0.0;
  Dimension dim_{};
};

Quantity sqrt(const Quantity& q);

inline constexpr Quantity energy(double v) { return {v, dims::energy}; }
inline constexpr Quantity duration(double v) { return {v, dims::time}; }
inline constexpr Quantity action(double v) { return {v, dims::action}; }
inline constexpr Quantity pure(double v) { return {v, dims::none}; }

}  // namespace eeperf
