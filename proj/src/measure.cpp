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

#include "idem/measure.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "idem/error.hpp"

namespace idem {

void require_same_space(const FiniteMetricSpace& a, const FiniteMetricSpace& b,
                        const char* what) {
  if (!(a == b)) throw SpaceMismatch(std::string(what) + ": operands live on different spaces");
}

TestFunction::TestFunction(FiniteMetricSpace space, std::vector<double> values)
    : space_(std::move(space)), values_(std::move(values)) {
  if (values_.size() != space_.size()) throw Error("test function size does not match space");
  for (double v : values_) {
    if (!std::isfinite(v)) throw Error("test function values must be finite");
  }
}

double TestFunction::lipschitz_constant() const {
  double lip = 0.0;
  for (Index i = 0; i < values_.size(); ++i) {
    for (Index j = i + 1; j < values_.size(); ++j) {
      lip = std::max(lip, std::abs(values_[i] - values_[j]) / space_.dist(i, j));
    }
  }
  return lip;
}

IdempotentMeasure IdempotentMeasure::normalize(FiniteMetricSpace space, std::vector<MaxPlus> raw) {
  if (raw.size() != space.size()) throw Error("density size does not match space");
  const MaxPlus top = big_oplus(raw);
  if (top.is_bottom()) throw Error("density is bottom everywhere; no idempotent measure exists");
  const double shift = top.value();
  if (shift != 0.0) {
    for (MaxPlus& v : raw) {
      if (v.is_finite()) v = MaxPlus(v.value() - shift);
    }
  }
  return IdempotentMeasure(std::move(space), std::move(raw));
}

IdempotentMeasure IdempotentMeasure::dirac(FiniteMetricSpace space, Index x) {
  if (x >= space.size()) throw Error("dirac point " + std::to_string(x) + " out of range");
  std::vector<MaxPlus> d(space.size());
  d[x] = MaxPlus::zero();
  return IdempotentMeasure(std::move(space), std::move(d));
}

IdempotentMeasure IdempotentMeasure::uniform(FiniteMetricSpace space) {
  std::vector<MaxPlus> d(space.size(), MaxPlus::zero());
  return IdempotentMeasure(std::move(space), std::move(d));
}

PointSet IdempotentMeasure::support() const {
  PointSet s;
  for (Index i = 0; i < density_.size(); ++i) {
    if (density_[i].is_finite()) s.push_back(i);
  }
  return s;
}

bool operator==(const IdempotentMeasure& a, const IdempotentMeasure& b) {
  return a.density_ == b.density_ && a.space_ == b.space_;
}

double integrate(const IdempotentMeasure& mu, const TestFunction& f) {
  require_same_space(mu.space(), f.space(), "integrate");
  MaxPlus acc;
  const auto d = mu.density();
  for (Index i = 0; i < d.size(); ++i) acc = oplus(acc, odot(d[i], MaxPlus(f[i])));
  return acc.value();
}

IdempotentMeasure pushforward(const IdempotentMeasure& mu, std::span<const Index> f,
                              const FiniteMetricSpace& target) {
  if (f.size() != mu.size()) throw Error("pushforward map is not total on the source space");
  std::vector<MaxPlus> out(target.size());
  const auto d = mu.density();
  for (Index x = 0; x < f.size(); ++x) {
    if (f[x] >= target.size()) throw Error("pushforward map leaves the target space");
    out[f[x]] = oplus(out[f[x]], d[x]);
  }
  return IdempotentMeasure::normalize(target, std::move(out));
}

IdempotentMeasure weighted_oplus(std::span<const MaxPlus> weights,
                                 std::span<const IdempotentMeasure> measures) {
  if (weights.empty() || weights.size() != measures.size()) {
    throw Error("weighted_oplus needs equally many weights and measures (at least one)");
  }
  if (!(big_oplus(weights) == MaxPlus::zero())) {
    throw Error("weighted_oplus weights must have maximum exactly 0");
  }
  const FiniteMetricSpace& space = measures.front().space();
  std::vector<MaxPlus> out(space.size());
  for (std::size_t j = 0; j < measures.size(); ++j) {
    require_same_space(space, measures[j].space(), "weighted_oplus");
    const auto d = measures[j].density();
    for (Index x = 0; x < out.size(); ++x) out[x] = oplus(out[x], odot(weights[j], d[x]));
  }
  return IdempotentMeasure::normalize(space, std::move(out));
}

TestFunction pointwise_max(const TestFunction& f, const TestFunction& g) {
  require_same_space(f.space(), g.space(), "pointwise_max");
  std::vector<double> v(f.size());
  for (Index i = 0; i < v.size(); ++i) v[i] = std::max(f[i], g[i]);
  return TestFunction(f.space(), std::move(v));
}

}  // namespace idem
