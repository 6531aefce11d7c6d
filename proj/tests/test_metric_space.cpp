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

#include <cmath>
#include <vector>

#include "doctest.h"
#include "idem/error.hpp"
#include "idem/metric_space.hpp"
#include "idem/rng.hpp"
#include "support.hpp"

using idem::FiniteMetricSpace;
using idem::Index;

TEST_CASE("matrix spaces are validated") {
  CHECK_NOTHROW(FiniteMetricSpace::from_matrix(2, {0, 1, 1, 0}));
  CHECK_THROWS_AS(FiniteMetricSpace::from_matrix(2, {0, 1, 2, 0}), idem::Error);
  CHECK_THROWS_AS(FiniteMetricSpace::from_matrix(2, {1, 1, 1, 0}), idem::Error);
  CHECK_THROWS_AS(FiniteMetricSpace::from_matrix(2, {0, 0, 0, 0}), idem::Error);
  CHECK_THROWS_AS(FiniteMetricSpace::from_matrix(3, {0, 1, 5, 1, 0, 1, 5, 1, 0}), idem::Error);
  CHECK_THROWS_AS(FiniteMetricSpace::from_matrix(2, {0, 1, 1}), idem::Error);
  CHECK_THROWS_AS(FiniteMetricSpace::from_matrix(0, {}), idem::Error);
}

TEST_CASE("coordinate spaces") {
  const auto X = FiniteMetricSpace::from_coordinates({{0, 0}, {3, 4}, {0, 1}});
  CHECK(X.size() == 3);
  CHECK(X.dimension() == 2);
  CHECK(X.dist(0, 1) == doctest::Approx(5.0));
  CHECK(X.diameter() == doctest::Approx(5.0));
  CHECK_THROWS_AS(FiniteMetricSpace::from_coordinates({{0.0}, {0.0}}), idem::Error);
  CHECK_THROWS_AS(FiniteMetricSpace::from_coordinates({{0.0}, {1.0, 2.0}}), idem::Error);
}

TEST_CASE("grid layout and diameter") {
  const auto G = idem::build_grid({0.0, 0.0}, {1.0, 2.0}, {4, 2});
  CHECK(G.size() == 15);
  const auto* g = G.grid_info();
  REQUIRE(g != nullptr);
  CHECK(g->step(0) == doctest::Approx(0.25));
  // Axis 0 varies fastest; endpoints are exact.
  CHECK(G.coordinates(4)[0] == 1.0);
  CHECK(G.coordinates(5)[0] == 0.0);
  CHECK(G.coordinates(5)[1] == 1.0);
  CHECK(G.coordinates(14)[1] == 2.0);
  CHECK(G.diameter() == doctest::Approx(std::sqrt(5.0)));
  CHECK_THROWS_AS(idem::build_grid({0.0}, {0.0}, {3}), idem::Error);
  CHECK_THROWS_AS(idem::build_grid({0.0}, {1.0}, {0}), idem::Error);
}

TEST_CASE("product space uses the maximum metric") {
  const auto A = FiniteMetricSpace::from_matrix(2, {0, 1, 1, 0});
  const auto B = FiniteMetricSpace::from_matrix(3, {0, 2, 3, 2, 0, 1, 3, 1, 0});
  const auto P = idem::product(A, B);
  CHECK(P.size() == 6);
  CHECK(P.is_product());
  CHECK(P.pair_index(1, 2) == 5);
  CHECK(P.split(4) == std::pair<Index, Index>{1, 1});
  CHECK(P.dist(P.pair_index(0, 0), P.pair_index(1, 1)) == 2.0);
  CHECK(P.dist(P.pair_index(0, 1), P.pair_index(1, 1)) == 1.0);
  const auto l = idem::projection_left(P);
  const auto r = idem::projection_right(P);
  for (Index p = 0; p < P.size(); ++p) {
    CHECK(l[p] == P.split(p).first);
    CHECK(r[p] == P.split(p).second);
  }
  CHECK(P.left() == A);
  CHECK_THROWS_AS((void)A.left(), idem::Error);
}

TEST_CASE("hausdorff distance is a metric on nonempty subsets") {
  idem::Rng rng(5);
  const auto X = idem::testing::random_metric_space(12, rng);
  auto subset = [&] {
    idem::PointSet s;
    while (s.empty()) {
      for (Index i = 0; i < X.size(); ++i) {
        if (rng.bernoulli(0.4)) s.push_back(i);
      }
    }
    return s;
  };
  for (int t = 0; t < 100; ++t) {
    const auto a = subset(), b = subset(), c = subset();
    const double ab = idem::hausdorff(a, b, X);
    CHECK(idem::hausdorff(a, a, X) == 0.0);
    CHECK(ab == idem::hausdorff(b, a, X));
    CHECK(ab <= idem::hausdorff(a, c, X) + idem::hausdorff(c, b, X) + 1e-12);
    if (a != b) CHECK(ab > 0.0);
  }
  CHECK_THROWS_AS(idem::hausdorff(idem::PointSet{}, idem::PointSet{0}, X), idem::Error);
}

TEST_CASE("canonicalize sorts and deduplicates") {
  idem::PointSet s{3, 1, 3, 0, 1};
  idem::canonicalize(s);
  CHECK(s == idem::PointSet{0, 1, 3});
}

TEST_CASE("symbolic cantor space is an ultrametric") {
  const auto X = idem::testing::symbolic_cantor_space(4);
  CHECK(X.size() == 16);
  for (Index i = 0; i < 16; ++i) {
    for (Index j = 0; j < 16; ++j) {
      for (Index k = 0; k < 16; ++k) {
        CHECK(X.dist(i, j) <= std::max(X.dist(i, k), X.dist(k, j)) + 1e-15);
      }
    }
  }
}
