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

// Idempotent (Maslov) probability measures on finite spaces.
//
// A measure is stored by its density lambda: X -> [-inf, 0] with maximum
// exactly 0, and acts on functions by
//
//   mu(f) = max_x (lambda(x) + f(x)).

#include <span>
#include <vector>

#include "idem/maxplus.hpp"
#include "idem/metric_space.hpp"

namespace idem {

/// Real-valued function on a finite space, stored as a value table.
class TestFunction {
 public:
  TestFunction(FiniteMetricSpace space, std::vector<double> values);

  static TestFunction constant(FiniteMetricSpace space, double c) {
    const std::size_t n = space.size();
    return TestFunction(std::move(space), std::vector<double>(n, c));
  }

  const FiniteMetricSpace& space() const noexcept { return space_; }
  std::span<const double> values() const noexcept { return values_; }
  double operator[](Index i) const { return values_[i]; }
  std::size_t size() const noexcept { return values_.size(); }

  /// max over pairs i != j of |f(i) - f(j)| / dist(i, j); 0 on a singleton.
  double lipschitz_constant() const;

 private:
  FiniteMetricSpace space_;
  std::vector<double> values_;
};

class IdempotentMeasure {
 public:
  /// Shifts every finite entry by minus the maximum. Throws idem::Error when
  /// every entry is bottom or the table size does not match the space.
  static IdempotentMeasure normalize(FiniteMetricSpace space, std::vector<MaxPlus> raw);

  static IdempotentMeasure dirac(FiniteMetricSpace space, Index x);

  /// Density 0 everywhere.
  static IdempotentMeasure uniform(FiniteMetricSpace space);

  const FiniteMetricSpace& space() const noexcept { return space_; }
  std::span<const MaxPlus> density() const noexcept { return density_; }
  MaxPlus operator[](Index i) const { return density_[i]; }
  std::size_t size() const noexcept { return density_.size(); }

  /// Points with finite density, ascending.
  PointSet support() const;

  /// Same space and bitwise identical density.
  friend bool operator==(const IdempotentMeasure& a, const IdempotentMeasure& b);

 private:
  IdempotentMeasure(FiniteMetricSpace space, std::vector<MaxPlus> density)
      : space_(std::move(space)), density_(std::move(density)) {}

  FiniteMetricSpace space_;
  std::vector<MaxPlus> density_;
};

inline IdempotentMeasure normalize(FiniteMetricSpace space, std::vector<MaxPlus> raw) {
  return IdempotentMeasure::normalize(std::move(space), std::move(raw));
}

inline IdempotentMeasure dirac(FiniteMetricSpace space, Index x) {
  return IdempotentMeasure::dirac(std::move(space), x);
}

inline PointSet support(const IdempotentMeasure& mu) { return mu.support(); }

/// max_x (lambda(x) + f(x)) over points with finite density.
double integrate(const IdempotentMeasure& mu, const TestFunction& f);

/// Density of the image at y is the maximum of the density over the fiber
/// f^{-1}(y).
IdempotentMeasure pushforward(const IdempotentMeasure& mu, std::span<const Index> f,
                              const FiniteMetricSpace& target);

/// x -> max_j (weights[j] + density_j(x)). The weights must have maximum 0.
IdempotentMeasure weighted_oplus(std::span<const MaxPlus> weights,
                                 std::span<const IdempotentMeasure> measures);

/// The pointwise max x -> max(f(x), g(x)).
TestFunction pointwise_max(const TestFunction& f, const TestFunction& g);

/// Throws SpaceMismatch unless the spaces compare equal.
void require_same_space(const FiniteMetricSpace& a, const FiniteMetricSpace& b,
                        const char* what);

}  // namespace idem
