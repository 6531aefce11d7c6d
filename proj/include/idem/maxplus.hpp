// Copyright 2026 The idem Authors.
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

// Scalars of the max-plus semiring R u {-inf}.
//
//   a (+) b = max(a, b)     neutral element: -inf
//   a (.) b = a + b         neutral element: 0, absorbing element: -inf
//
// The bottom element is a tagged state, never a large negative double, so
// sums involving it stay exact.

#include <compare>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <string>

namespace idem {

class MaxPlus {
 public:
  /// Default-constructed values are the bottom element.
  constexpr MaxPlus() noexcept = default;

  /// Wraps a real number. `-inf` maps to bottom; NaN and `+inf` throw.
  explicit MaxPlus(double v);

  static constexpr MaxPlus bottom() noexcept { return MaxPlus{}; }
  static constexpr MaxPlus zero() noexcept { return MaxPlus{0.0, Finite{}}; }

  constexpr bool is_bottom() const noexcept { return !finite_; }
  constexpr bool is_finite() const noexcept { return finite_; }

  /// Finite payload. Precondition: is_finite().
  double value() const;

  /// Finite payload, or -infinity for bottom. For printing and plotting only.
  double to_double() const noexcept;

  friend constexpr bool operator==(MaxPlus a, MaxPlus b) noexcept {
    if (a.finite_ != b.finite_) return false;
    return !a.finite_ || a.v_ == b.v_;
  }

  /// Total order with bottom below every finite value.
  friend constexpr std::partial_ordering operator<=>(MaxPlus a, MaxPlus b) noexcept {
    if (!a.finite_ || !b.finite_) return a.finite_ <=> b.finite_;
    return a.v_ <=> b.v_;
  }

 private:
  struct Finite {};
  constexpr MaxPlus(double v, Finite) noexcept : v_(v), finite_(true) {}

  friend constexpr MaxPlus oplus(MaxPlus a, MaxPlus b) noexcept;
  friend constexpr MaxPlus odot(MaxPlus a, MaxPlus b) noexcept;

  double v_ = 0.0;
  bool finite_ = false;
};

constexpr MaxPlus oplus(MaxPlus a, MaxPlus b) noexcept {
  if (!a.finite_) return b;
  if (!b.finite_) return a;
  return a.v_ >= b.v_ ? a : b;
}

constexpr MaxPlus odot(MaxPlus a, MaxPlus b) noexcept {
  if (!a.finite_ || !b.finite_) return MaxPlus{};
  return MaxPlus{a.v_ + b.v_, MaxPlus::Finite{}};
}

/// Max of a finite sequence; bottom for the empty sequence.
MaxPlus big_oplus(std::span<const MaxPlus> values) noexcept;
MaxPlus big_oplus(std::initializer_list<MaxPlus> values) noexcept;

/// `-inf` for bottom, otherwise the value with 17 significant digits.
std::string to_string(MaxPlus v);

/// Inverse of to_string; also accepts `-infinity`. Throws std::invalid_argument.
MaxPlus parse_maxplus(const std::string& token);

}  // namespace idem
