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

#include <vector>

#include "idem/measure.hpp"
#include "idem/rng.hpp"

namespace idem {

/// Random density: each point is bottom with probability `bottom_prob`,
/// otherwise uniform in [-depth, 0]; then normalized. At least one point
/// stays finite.
inline IdempotentMeasure random_measure(const FiniteMetricSpace& space, Rng& rng,
                                        double bottom_prob = 0.3, double depth = 3.0) {
  std::vector<MaxPlus> d(space.size());
  bool any = false;
  for (auto& v : d) {
    if (!rng.bernoulli(bottom_prob)) {
      v = MaxPlus(rng.uniform(-depth, 0.0));
      any = true;
    }
  }
  if (!any) d[rng.below(d.size())] = MaxPlus::zero();
  return IdempotentMeasure::normalize(space, std::move(d));
}

inline TestFunction random_function(const FiniteMetricSpace& space, Rng& rng, double scale = 1.0) {
  std::vector<double> v(space.size());
  for (auto& x : v) x = rng.uniform(-scale, scale);
  return TestFunction(space, std::move(v));
}

}  // namespace idem
