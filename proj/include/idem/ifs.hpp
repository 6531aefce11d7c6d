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

// Max-plus normalized iterated function systems on finite spaces and
// their idempotent Markov operator
//
//   M(mu) = (+)_j q_j (.) f_j#mu,   density  lambda'(s) = max { q_j + lambda(x) : f_j(x) = s }.

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "idem/maxplus.hpp"
#include "idem/measure.hpp"
#include "idem/metric_space.hpp"

namespace idem {

class MaxPlusIFS;

/// Witness phi for d(f(x), f(y)) <= phi(d(x, y)). Both kinds are
/// nondecreasing with phi(t) < t and phi^(n)(t) -> 0 for t > 0.
class ComparisonFunction {
 public:
  enum class Kind { Linear, Rational };

  /// t -> beta * t with beta in [0, 1).
  static ComparisonFunction linear(double beta);
  /// t -> t / (1 + c t) with c > 0.
  static ComparisonFunction rational(double c);

  Kind kind() const noexcept { return kind_; }
  double parameter() const noexcept { return param_; }

  double operator()(double t) const noexcept {
    return kind_ == Kind::Linear ? param_ * t : t / (1.0 + param_ * t);
  }

  std::string describe() const;

 private:
  ComparisonFunction(Kind k, double p) : kind_(k), param_(p) {}
  Kind kind_;
  double param_;
};

/// Self-map of a finite space with its measured discrete Lipschitz constant
/// and, when certified, a verified contraction witness.
class ContractionMap {
 public:
  /// Verifies dist(f(i), f(j)) <= witness(dist(i, j)) on every pair (with a
  /// relative slack of 1e-12) and, if given, discrete_lip <= declared_lip.
  /// Throws CertificateError naming the worst pair.
  static ContractionMap certified(FiniteMetricSpace space, PointMap target,
                                  ComparisonFunction witness,
                                  std::optional<double> declared_lip = std::nullopt);

  /// A total self-map without a contraction claim. Usable by the Markov
  /// operator, fixed-point iteration and the attractor, but rejected by
  /// anything that relies on the contraction theorems.
  static ContractionMap uncertified(FiniteMetricSpace space, PointMap target);

  const FiniteMetricSpace& space() const noexcept { return space_; }
  const PointMap& target() const noexcept { return target_; }
  Index operator()(Index i) const { return target_[i]; }
  std::size_t size() const noexcept { return target_.size(); }

  const std::optional<ComparisonFunction>& witness() const noexcept { return witness_; }
  std::optional<double> declared_lip() const noexcept { return declared_lip_; }
  bool is_certified() const noexcept { return witness_.has_value(); }

  /// max over pairs of dist(f(i), f(j)) / dist(i, j); 0 on a singleton.
  double discrete_lip() const noexcept { return discrete_lip_; }

 private:
  ContractionMap(FiniteMetricSpace space, PointMap target, std::optional<ComparisonFunction> w,
                 std::optional<double> declared, double lip)
      : space_(std::move(space)), target_(std::move(target)), witness_(w),
        declared_lip_(declared), discrete_lip_(lip) {}

  friend class MaxPlusIFS;
  friend MaxPlusIFS product_ifs(const MaxPlusIFS& s);

  FiniteMetricSpace space_;
  PointMap target_;
  std::optional<ComparisonFunction> witness_;
  std::optional<double> declared_lip_;
  double discrete_lip_ = 0.0;
};

/// Measured discrete Lipschitz constant of a point map, with the pair
/// attaining it.
struct LipschitzReport {
  double lip = 0.0;
  Index first = 0;
  Index second = 0;
};
LipschitzReport discrete_lipschitz(const FiniteMetricSpace& space, std::span<const Index> target);

/// Discretizes x -> A x + b on a grid space: each grid point goes to the
/// grid point nearest to its image (ties to the lowest index). `A` is
/// row-major d x d. With a witness the result is certified, otherwise not.
ContractionMap snap_affine(const FiniteMetricSpace& grid, std::span<const double> A,
                           std::span<const double> b,
                           std::optional<ComparisonFunction> witness = std::nullopt,
                           std::optional<double> declared_lip = std::nullopt);

class MaxPlusIFS {
 public:
  /// Requires at least one map, all on `space`, and finite weights with
  /// maximum exactly 0.
  MaxPlusIFS(FiniteMetricSpace space, std::vector<ContractionMap> maps,
             std::vector<MaxPlus> weights);

  const FiniteMetricSpace& space() const noexcept { return space_; }
  std::span<const ContractionMap> maps() const noexcept { return maps_; }
  std::span<const MaxPlus> weights() const noexcept { return weights_; }
  std::size_t size() const noexcept { return maps_.size(); }

  /// Every map carries a verified witness.
  bool is_certified() const noexcept;
  double discrete_lip_max() const noexcept;

  /// phi_S(t) = max_j phi_j(t). Throws unless is_certified().
  double witness_max(double t) const;

 private:
  FiniteMetricSpace space_;
  std::vector<ContractionMap> maps_;
  std::vector<MaxPlus> weights_;
};

IdempotentMeasure markov(const MaxPlusIFS& s, const IdempotentMeasure& mu);

/// f_S(x) = max_j (q_j + f(f_j(x))), so that markov(S, mu)(f) = mu(f_S).
TestFunction markov_dual(const MaxPlusIFS& s, const TestFunction& f);

enum class FixedPointMetric { D1, SupDensity };

struct FixedPointDiagnostics {
  std::vector<double> residuals;   ///< metric(mu_k, mu_{k+1}) per step
  std::size_t iterations = 0;
  bool converged = false;          ///< residual <= tol reached
  bool exact = false;              ///< an exact fixed point was found
  /// residual * alpha / (1 - alpha) bound on the distance to the fixed
  /// point, available for d1 when discrete_lip_max < 1.
  std::optional<double> apriori_bound;
  std::string stopping_rule;
};

struct FixedPointResult {
  IdempotentMeasure measure;
  FixedPointDiagnostics diagnostics;
};

/// Applies markov until the residual drops to tol or max_iter steps are
/// taken. Non-convergence is reported through diagnostics.converged.
FixedPointResult iterate_fixed_point(const MaxPlusIFS& s, const IdempotentMeasure& mu0,
                                     FixedPointMetric metric, double tol, std::size_t max_iter);

/// The IFS (f_j x f_j) on X x X with the same weights and witnesses.
MaxPlusIFS product_ifs(const MaxPlusIFS& s);

/// Fixed set of K -> union_j f_j(K) reached from `start`. Throws if the set
/// iteration enters a cycle of length > 1 (possible only without
/// contraction).
PointSet attractor(const MaxPlusIFS& s, PointSet start);

}  // namespace idem
