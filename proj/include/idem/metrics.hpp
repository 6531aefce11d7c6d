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

// Distances between idempotent measures on a finite metric space.
//
// - d1: coupling (bottleneck) metric. The infimum over couplings
//   xi of mu1, mu2 of the largest distance occurring in supp xi.
// - d_a: sup |mu(f) - nu(f)| over functions with Lipschitz constant <= a.
// - tilde_d_alpha_q: sum over n in Z of q^|n| / alpha^n * d_{alpha^n}.
// - tilde_d_brz: sum over n >= 1 of d_n / (n 2^n).
//
// Every closed-form evaluation has a brute-force counterpart (d1_oracle,
// d_a_oracle) used by the test suites.

#include <cstddef>
#include <functional>
#include <span>
#include <utility>
#include <vector>

#include "idem/measure.hpp"
#include "idem/rng.hpp"

namespace idem {

/// Candidate coupling density eta_t on X x X:
///   eta_t(x, y) = min(lambda1(x), lambda2(y)) if dist(x, y) <= t, else -inf.
/// Any coupling supported on pairs at distance <= t is pointwise below
/// eta_t, so a feasible coupling at threshold t exists iff eta_t has the
/// right marginals.
struct CouplingCandidate {
  ProductSpace space;
  std::vector<MaxPlus> density;
  double threshold = 0.0;

  /// Row maxima equal lambda1 and column maxima equal lambda2.
  bool satisfies_marginals(const IdempotentMeasure& left, const IdempotentMeasure& right) const;
};

CouplingCandidate maximal_coupling(const IdempotentMeasure& mu1, const IdempotentMeasure& mu2,
                                   double t);

/// Marginal check of eta_t computed by row and column scans, without
/// materializing the product density.
bool coupling_feasible(const IdempotentMeasure& mu1, const IdempotentMeasure& mu2, double t);

/// An idempotent measure on X x X together with the marginals it projects to.
class Coupling {
 public:
  /// Throws idem::Error when the projections do not reproduce the marginals.
  Coupling(IdempotentMeasure measure, IdempotentMeasure left, IdempotentMeasure right);

  const IdempotentMeasure& measure() const noexcept { return measure_; }
  const IdempotentMeasure& left() const noexcept { return left_; }
  const IdempotentMeasure& right() const noexcept { return right_; }

  /// Largest base-space distance over the support.
  double spread() const;

 private:
  IdempotentMeasure measure_;
  IdempotentMeasure left_;
  IdempotentMeasure right_;
};

double d1(const IdempotentMeasure& mu1, const IdempotentMeasure& mu2);

/// Optimal coupling attaining d1.
Coupling optimal_coupling(const IdempotentMeasure& mu1, const IdempotentMeasure& mu2);

/// Subset enumeration over supp mu1 x supp mu2 (at most 16 pairs).
double d1_oracle(const IdempotentMeasure& mu1, const IdempotentMeasure& mu2);

double d_a(const IdempotentMeasure& mu1, const IdempotentMeasure& mu2, double a);

/// The cone f(y) = -a * dist(center, y) attaining d_a.
struct ConeWitness {
  Index center = 0;
  bool reversed = false;  ///< true when the sup is mu2(f) - mu1(f)
  TestFunction cone;
  double value = 0.0;     ///< |mu1(cone) - mu2(cone)|
};

ConeWitness d_a_cone(const IdempotentMeasure& mu1, const IdempotentMeasure& mu2, double a);

struct DaCertificate {
  double lower = 0.0;           ///< best sampled |mu1(f) - mu2(f)| over Lip_a functions
  double closed_form = 0.0;
  double cone_value = 0.0;      ///< value attained by the exhibited cone
  double cone_lipschitz = 0.0;  ///< measured Lipschitz constant of the cone
  double sample_lipschitz = 0.0;  ///< largest Lipschitz constant among samples
  std::size_t samples = 0;
};

/// Greatest minorant of f with Lipschitz constant <= a:
///   f~(x) = min_y (f(y) + a * dist(x, y)).
TestFunction lipschitz_regularize(const TestFunction& f, double a);

/// Two-sided certificate for d_a. Spaces above 50 points are rejected.
DaCertificate d_a_oracle(const IdempotentMeasure& mu1, const IdempotentMeasure& mu2, double a,
                         Rng& rng, std::size_t samples = 10000);

struct SeriesParams {
  double alpha = 0.5;
  double q = 0.5;
  double tol = 1e-6;
};

/// Lower partial sum of a nonnegative series together with a certified
/// bound on the omitted tail: true value in [value, value + tail_bound].
struct SeriesValue {
  double value = 0.0;
  double tail_bound = 0.0;
  int truncation = 0;  ///< N: terms with |n| <= N (or 1 <= n <= N) are summed
};

SeriesValue tilde_d_alpha_q(const IdempotentMeasure& mu1, const IdempotentMeasure& mu2,
                            const SeriesParams& p);

SeriesValue tilde_d_brz(const IdempotentMeasure& mu1, const IdempotentMeasure& mu2, double tol);

/// max_x |lambda1(x) - lambda2(x)| with -inf - (-inf) = 0; infinite when
/// the supports differ.
double sup_density_distance(const IdempotentMeasure& mu1, const IdempotentMeasure& mu2);

using MeasureOperator = std::function<IdempotentMeasure(const IdempotentMeasure&)>;
using MeasureMetric = std::function<double(const IdempotentMeasure&, const IdempotentMeasure&)>;
using MeasurePair = std::pair<IdempotentMeasure, IdempotentMeasure>;

struct ContractionEstimate {
  double max_ratio = 0.0;
  std::size_t witness = 0;    ///< index of the maximizing pair
  std::size_t evaluated = 0;  ///< pairs with nonzero denominator
};

/// max over pairs of metric(Op mu1, Op mu2) / metric(mu1, mu2), skipping
/// pairs with zero denominator. Throws when every pair is degenerate.
ContractionEstimate empirical_contraction(const MeasureOperator& op, const MeasureMetric& metric,
                                          std::span<const MeasurePair> pairs);

}  // namespace idem
