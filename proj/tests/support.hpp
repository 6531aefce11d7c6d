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

// Fixtures shared by the unit and acceptance suites.

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstddef>
#include <limits>
#include <vector>

#include "idem/ifs.hpp"
#include "idem/metric_space.hpp"
#include "idem/rng.hpp"

namespace idem::testing {

// Words of length k over {0, 2}, stored as k-bit integers with the first
// letter in the top bit, under d(u, v) = 3^-j for the first differing
// position j (1-based). Prepending a letter and dropping the last one is
// exactly 1/3-Lipschitz when k >= 2.
inline FiniteMetricSpace symbolic_cantor_space(int k) {
  const std::size_t n = std::size_t{1} << k;
  std::vector<double> m(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j) continue;
      const int top = std::bit_width(i ^ j) - 1;
      m[i * n + j] = std::pow(3.0, -(k - top));
    }
  }
  return FiniteMetricSpace::from_matrix(n, std::move(m));
}

inline PointMap symbolic_prepend(int k, std::size_t letter) {
  const std::size_t n = std::size_t{1} << k;
  PointMap t(n);
  for (std::size_t i = 0; i < n; ++i) t[i] = (letter << (k - 1)) | (i >> 1);
  return t;
}

inline MaxPlusIFS symbolic_cantor_ifs(int k) {
  const FiniteMetricSpace X = symbolic_cantor_space(k);
  std::vector<ContractionMap> maps;
  maps.push_back(ContractionMap::certified(X, symbolic_prepend(k, 0),
                                           ComparisonFunction::linear(1.0 / 3.0)));
  maps.push_back(ContractionMap::certified(X, symbolic_prepend(k, 1),
                                           ComparisonFunction::linear(1.0 / 3.0)));
  return MaxPlusIFS(X, std::move(maps), {MaxPlus::zero(), MaxPlus(-1.0)});
}

// X = {1/n : n = 1..10}. The shift 1/n -> 1/(n+1), fixed at 1/10, satisfies
// d(f x, f y) <= t / (1 + t); the second map is constant at 1.
inline FiniteMetricSpace harmonic_space() {
  std::vector<std::vector<double>> pts;
  for (int n = 1; n <= 10; ++n) pts.push_back({1.0 / n});
  return FiniteMetricSpace::from_coordinates(std::move(pts));
}

inline MaxPlusIFS harmonic_ifs() {
  const FiniteMetricSpace X = harmonic_space();
  PointMap shift(10), one(10, 0);
  for (Index i = 0; i < 10; ++i) shift[i] = std::min<Index>(i + 1, 9);
  std::vector<ContractionMap> maps;
  maps.push_back(ContractionMap::certified(X, shift, ComparisonFunction::rational(1.0)));
  maps.push_back(ContractionMap::certified(X, one, ComparisonFunction::rational(1.0)));
  return MaxPlusIFS(X, std::move(maps), {MaxPlus::zero(), MaxPlus(-1.0)});
}

// Snapped middle-thirds maps on a grid of [0, 1], without a witness.
inline MaxPlusIFS snapped_cantor_ifs(std::size_t cells) {
  const FiniteMetricSpace X = build_grid({0.0}, {1.0}, {cells});
  const double A[] = {1.0 / 3.0};
  const double b0[] = {0.0};
  const double b1[] = {2.0 / 3.0};
  std::vector<ContractionMap> maps;
  maps.push_back(snap_affine(X, A, b0));
  maps.push_back(snap_affine(X, A, b1));
  return MaxPlusIFS(X, std::move(maps), {MaxPlus::zero(), MaxPlus(-1.0)});
}

// Shortest-path closure of random positive edge weights.
inline FiniteMetricSpace random_metric_space(std::size_t n, Rng& rng, double lo = 0.1,
                                             double hi = 1.0) {
  std::vector<double> m(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) m[i * n + j] = m[j * n + i] = rng.uniform(lo, hi);
  }
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        m[i * n + j] = std::min(m[i * n + j], m[i * n + k] + m[k * n + j]);
      }
    }
  }
  return FiniteMetricSpace::from_matrix(n, std::move(m));
}

// Random self-map table.
inline PointMap random_table(std::size_t n, Rng& rng) {
  PointMap t(n);
  for (auto& v : t) v = rng.below(n);
  return t;
}

// Random IFS of uncertified maps with max-plus normalized weights.
inline MaxPlusIFS random_ifs(const FiniteMetricSpace& X, std::size_t maps, Rng& rng) {
  std::vector<ContractionMap> ms;
  std::vector<MaxPlus> w;
  const std::size_t top = rng.below(maps);
  for (std::size_t j = 0; j < maps; ++j) {
    ms.push_back(ContractionMap::uncertified(X, random_table(X.size(), rng)));
    w.push_back(j == top ? MaxPlus::zero() : MaxPlus(rng.uniform(-3.0, 0.0)));
  }
  return MaxPlusIFS(X, std::move(ms), std::move(w));
}

// All densities with values in `levels` and maximum 0 on n points.
inline std::vector<std::vector<MaxPlus>> enumerate_densities(std::size_t n,
                                                             const std::vector<MaxPlus>& levels) {
  std::vector<std::vector<MaxPlus>> out;
  std::vector<std::size_t> digit(n, 0);
  for (;;) {
    std::vector<MaxPlus> d;
    d.reserve(n);
    for (std::size_t i = 0; i < n; ++i) d.push_back(levels[digit[i]]);
    if (big_oplus(d) == MaxPlus::zero()) out.push_back(std::move(d));
    std::size_t i = 0;
    while (i < n && ++digit[i] == levels.size()) digit[i++] = 0;
    if (i == n) break;
  }
  return out;
}

// Every labeled metric on n points with off-diagonal distances in `values`.
inline std::vector<FiniteMetricSpace> enumerate_metrics(std::size_t n,
                                                        const std::vector<double>& values) {
  std::vector<std::pair<std::size_t, std::size_t>> edges;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) edges.emplace_back(i, j);
  }
  std::vector<FiniteMetricSpace> out;
  std::vector<std::size_t> digit(edges.size(), 0);
  for (;;) {
    std::vector<double> m(n * n, 0.0);
    for (std::size_t e = 0; e < edges.size(); ++e) {
      const auto [i, j] = edges[e];
      m[i * n + j] = m[j * n + i] = values[digit[e]];
    }
    bool ok = true;
    for (std::size_t i = 0; i < n && ok; ++i) {
      for (std::size_t j = 0; j < n && ok; ++j) {
        for (std::size_t k = 0; k < n && ok; ++k) {
          ok = m[i * n + j] <= m[i * n + k] + m[k * n + j];
        }
      }
    }
    if (ok) out.push_back(FiniteMetricSpace::from_matrix(n, std::move(m)));
    std::size_t e = 0;
    while (e < edges.size() && ++digit[e] == values.size()) digit[e++] = 0;
    if (e == edges.size()) break;
  }
  return out;
}

// Left endpoints of the 2^k closed intervals of length 3^-k making up the
// depth-k middle-thirds construction.
inline std::vector<double> cantor_interval_starts(int k) {
  std::vector<double> starts{0.0};
  double len = 1.0;
  for (int d = 0; d < k; ++d) {
    len /= 3.0;
    std::vector<double> next;
    for (double s : starts) {
      next.push_back(s);
      next.push_back(s + 2.0 * len);
    }
    starts = std::move(next);
  }
  return starts;
}

// Hausdorff distance on the line between a finite set and a finite union of
// closed intervals [s, s + len].
inline double hausdorff_points_intervals(std::vector<double> pts, const std::vector<double>& starts,
                                         double len) {
  std::sort(pts.begin(), pts.end());
  auto to_points = [&](double x) {
    const auto it = std::lower_bound(pts.begin(), pts.end(), x);
    double d = std::numeric_limits<double>::infinity();
    if (it != pts.end()) d = *it - x;
    if (it != pts.begin()) d = std::min(d, x - *(it - 1));
    return d;
  };
  double h = 0.0;
  for (double p : pts) {
    double d = std::numeric_limits<double>::infinity();
    for (double s : starts) d = std::min(d, p < s ? s - p : (p > s + len ? p - s - len : 0.0));
    h = std::max(h, d);
  }
  // Within an interval the distance to the point set peaks at an endpoint
  // or halfway between consecutive points.
  for (double s : starts) {
    const double e = s + len;
    h = std::max({h, to_points(s), to_points(e)});
    for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
      const double mid = 0.5 * (pts[i] + pts[i + 1]);
      if (mid > s && mid < e) h = std::max(h, to_points(mid));
    }
  }
  return h;
}

}  // namespace idem::testing
