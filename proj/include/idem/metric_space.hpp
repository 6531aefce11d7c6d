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

// Finite metric spaces: explicit distance tables, Euclidean point
// clouds and uniform grids, plus products under the maximum metric.
//
// Points are identified by index. Coordinates, when present, are metadata
// used for Euclidean distances, snapping and rendering.

#include <cstddef>
#include <memory>
#include <span>
#include <utility>
#include <vector>

namespace idem {

using Index = std::size_t;
/// Sorted, duplicate-free list of point indices.
using PointSet = std::vector<Index>;
/// Total map between finite spaces, stored as an image table.
using PointMap = std::vector<Index>;

/// Axis-aligned uniform grid description. Axis 0 varies fastest in the
/// point numbering.
struct GridInfo {
  std::vector<double> lower;
  std::vector<double> upper;
  std::vector<std::size_t> cells;

  double step(std::size_t axis) const {
    return (upper[axis] - lower[axis]) / static_cast<double>(cells[axis]);
  }
};

class FiniteMetricSpace {
 public:
  enum class Kind { Matrix, Coordinates, Product };

  /// Explicit symmetric distance table in row-major order. Metric axioms
  /// are checked eagerly; `tolerance` is a relative slack for the triangle
  /// inequality only.
  static FiniteMetricSpace from_matrix(std::size_t n, std::vector<double> row_major,
                                       double tolerance = 1e-12);

  /// Euclidean distances between the given points (all of equal dimension,
  /// pairwise distinct).
  static FiniteMetricSpace from_coordinates(std::vector<std::vector<double>> points);

  /// Uniform grid including both endpoints on every axis.
  static FiniteMetricSpace grid(std::vector<double> lower, std::vector<double> upper,
                                std::vector<std::size_t> cells);

  /// Product space with the maximum metric. Point (i, j) has index i * |B| + j.
  static FiniteMetricSpace product(const FiniteMetricSpace& a, const FiniteMetricSpace& b);

  Kind kind() const noexcept;
  std::size_t size() const noexcept;
  double dist(Index i, Index j) const;

  /// Coordinate dimension; 0 when points carry no coordinates.
  std::size_t dimension() const noexcept;
  std::span<const double> coordinates(Index i) const;
  /// Non-null only for spaces built by grid().
  const GridInfo* grid_info() const noexcept;

  bool is_product() const noexcept { return kind() == Kind::Product; }
  const FiniteMetricSpace& left() const;
  const FiniteMetricSpace& right() const;
  Index pair_index(Index i, Index j) const;
  std::pair<Index, Index> split(Index p) const;

  /// Maximum pairwise distance (cached).
  double diameter() const;

  friend bool operator==(const FiniteMetricSpace& a, const FiniteMetricSpace& b);

 private:
  struct Impl;
  explicit FiniteMetricSpace(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}
  std::shared_ptr<const Impl> impl_;
};

using ProductSpace = FiniteMetricSpace;

inline FiniteMetricSpace build_grid(std::vector<double> lower, std::vector<double> upper,
                                    std::vector<std::size_t> cells) {
  return FiniteMetricSpace::grid(std::move(lower), std::move(upper), std::move(cells));
}

inline ProductSpace product(const FiniteMetricSpace& a, const FiniteMetricSpace& b) {
  return FiniteMetricSpace::product(a, b);
}

inline double diameter(const FiniteMetricSpace& s) { return s.diameter(); }

/// Projections of a product space onto its factors.
PointMap projection_left(const ProductSpace& p);
PointMap projection_right(const ProductSpace& p);

/// Hausdorff distance between two nonempty point sets of `space`.
double hausdorff(std::span<const Index> a, std::span<const Index> b,
                 const FiniteMetricSpace& space);

/// Sorts and deduplicates in place.
void canonicalize(PointSet& s);

}  // namespace idem
