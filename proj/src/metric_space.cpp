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

#include "idem/metric_space.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <mutex>
#include <optional>
#include <sstream>
#include <string>

#include "idem/error.hpp"

namespace idem {

struct FiniteMetricSpace::Impl {
  Kind kind = Kind::Matrix;
  std::size_t n = 0;
  // Matrix
  std::vector<double> matrix;
  // Coordinates
  std::size_t dim = 0;
  std::vector<double> coords;
  std::optional<GridInfo> grid;
  // Product
  std::optional<FiniteMetricSpace> left;
  std::optional<FiniteMetricSpace> right;

  mutable std::once_flag diameter_once;
  mutable double diameter = 0.0;

  double dist(Index i, Index j) const {
    switch (kind) {
      case Kind::Matrix:
        return matrix[i * n + j];
      case Kind::Coordinates: {
        const double* a = coords.data() + i * dim;
        const double* b = coords.data() + j * dim;
        if (dim == 1) return std::abs(a[0] - b[0]);
        double s = 0.0;
        for (std::size_t k = 0; k < dim; ++k) {
          const double d = a[k] - b[k];
          s += d * d;
        }
        return std::sqrt(s);
      }
      case Kind::Product: {
        const std::size_t m = right->size();
        return std::max(left->dist(i / m, j / m), right->dist(i % m, j % m));
      }
    }
    return 0.0;
  }
};

namespace {

std::string pair_text(Index i, Index j) {
  std::ostringstream os;
  os << "(" << i << ", " << j << ")";
  return os.str();
}

}  // namespace

FiniteMetricSpace FiniteMetricSpace::from_matrix(std::size_t n, std::vector<double> m,
                                                 double tolerance) {
  if (n == 0) throw Error("metric space needs at least one point");
  if (m.size() != n * n) throw Error("distance table must have n*n entries");
  double scale = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    if (m[i * n + i] != 0.0) throw Error("nonzero self-distance at point " + std::to_string(i));
    for (std::size_t j = 0; j < n; ++j) {
      const double d = m[i * n + j];
      if (!std::isfinite(d)) throw Error("non-finite distance at " + pair_text(i, j));
      if (d != m[j * n + i]) throw Error("asymmetric distance at " + pair_text(i, j));
      if (i != j && !(d > 0.0)) throw Error("non-positive distance at " + pair_text(i, j));
      scale = std::max(scale, d);
    }
  }
  const double slack = tolerance * scale;
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t i = 0; i < n; ++i) {
      const double dik = m[i * n + k];
      for (std::size_t j = i + 1; j < n; ++j) {
        if (m[i * n + j] > dik + m[k * n + j] + slack) {
          throw Error("triangle inequality violated: d" + pair_text(i, j) + " > d" +
                      pair_text(i, k) + " + d" + pair_text(k, j));
        }
      }
    }
  }
  auto impl = std::make_shared<Impl>();
  impl->kind = Kind::Matrix;
  impl->n = n;
  impl->matrix = std::move(m);
  return FiniteMetricSpace(std::move(impl));
}

FiniteMetricSpace FiniteMetricSpace::from_coordinates(std::vector<std::vector<double>> points) {
  if (points.empty()) throw Error("metric space needs at least one point");
  const std::size_t dim = points.front().size();
  if (dim == 0) throw Error("coordinate dimension must be positive");
  auto impl = std::make_shared<Impl>();
  impl->kind = Kind::Coordinates;
  impl->n = points.size();
  impl->dim = dim;
  impl->coords.reserve(points.size() * dim);
  for (const auto& p : points) {
    if (p.size() != dim) throw Error("points have inconsistent dimensions");
    for (double c : p) {
      if (!std::isfinite(c)) throw Error("non-finite coordinate");
      impl->coords.push_back(c);
    }
  }
  // Duplicate detection by lexicographic sort.
  std::vector<Index> order(points.size());
  for (Index i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](Index a, Index b) { return points[a] < points[b]; });
  for (std::size_t k = 1; k < order.size(); ++k) {
    if (points[order[k]] == points[order[k - 1]]) {
      throw Error("duplicate points " + pair_text(order[k - 1], order[k]));
    }
  }
  return FiniteMetricSpace(std::move(impl));
}

FiniteMetricSpace FiniteMetricSpace::grid(std::vector<double> lower, std::vector<double> upper,
                                          std::vector<std::size_t> cells) {
  const std::size_t dim = lower.size();
  if (dim == 0) throw Error("grid dimension must be positive");
  if (upper.size() != dim || cells.size() != dim) {
    throw Error("grid bounds and cell counts must have equal dimension");
  }
  std::size_t n = 1;
  for (std::size_t k = 0; k < dim; ++k) {
    if (cells[k] == 0) throw Error("grid needs at least one cell per axis");
    if (!(lower[k] < upper[k])) throw Error("grid bounds inverted on axis " + std::to_string(k));
    n *= cells[k] + 1;
  }
  auto impl = std::make_shared<Impl>();
  impl->kind = Kind::Coordinates;
  impl->n = n;
  impl->dim = dim;
  impl->coords.resize(n * dim);
  GridInfo info{lower, upper, cells};
  for (Index p = 0; p < n; ++p) {
    Index rest = p;
    for (std::size_t k = 0; k < dim; ++k) {
      const std::size_t ik = rest % (cells[k] + 1);
      rest /= cells[k] + 1;
      // Endpoints are placed exactly; interior points by linear interpolation.
      double c = ik == cells[k] ? upper[k]
                                : lower[k] + (upper[k] - lower[k]) * static_cast<double>(ik) /
                                                 static_cast<double>(cells[k]);
      impl->coords[p * dim + k] = c;
    }
  }
  impl->grid = std::move(info);
  return FiniteMetricSpace(std::move(impl));
}

FiniteMetricSpace FiniteMetricSpace::product(const FiniteMetricSpace& a,
                                             const FiniteMetricSpace& b) {
  auto impl = std::make_shared<Impl>();
  impl->kind = Kind::Product;
  impl->n = a.size() * b.size();
  impl->left = a;
  impl->right = b;
  return FiniteMetricSpace(std::move(impl));
}

FiniteMetricSpace::Kind FiniteMetricSpace::kind() const noexcept { return impl_->kind; }
std::size_t FiniteMetricSpace::size() const noexcept { return impl_->n; }
double FiniteMetricSpace::dist(Index i, Index j) const { return impl_->dist(i, j); }
std::size_t FiniteMetricSpace::dimension() const noexcept { return impl_->dim; }

std::span<const double> FiniteMetricSpace::coordinates(Index i) const {
  if (impl_->dim == 0) return {};
  return std::span<const double>(impl_->coords.data() + i * impl_->dim, impl_->dim);
}

const GridInfo* FiniteMetricSpace::grid_info() const noexcept {
  return impl_->grid ? &*impl_->grid : nullptr;
}

const FiniteMetricSpace& FiniteMetricSpace::left() const {
  if (!is_product()) throw Error("left() on a non-product space");
  return *impl_->left;
}

const FiniteMetricSpace& FiniteMetricSpace::right() const {
  if (!is_product()) throw Error("right() on a non-product space");
  return *impl_->right;
}

Index FiniteMetricSpace::pair_index(Index i, Index j) const {
  return i * right().size() + j;
}

std::pair<Index, Index> FiniteMetricSpace::split(Index p) const {
  const std::size_t m = right().size();
  return {p / m, p % m};
}

double FiniteMetricSpace::diameter() const {
  const Impl& s = *impl_;
  std::call_once(s.diameter_once, [&s] {
    double d = 0.0;
    if (s.kind == Kind::Product) {
      d = std::max(s.left->diameter(), s.right->diameter());
    } else if (s.grid) {
      d = s.dist(0, s.n - 1);
    } else {
      for (Index i = 0; i < s.n; ++i) {
        for (Index j = i + 1; j < s.n; ++j) d = std::max(d, s.dist(i, j));
      }
    }
    s.diameter = d;
  });
  return s.diameter;
}

bool operator==(const FiniteMetricSpace& a, const FiniteMetricSpace& b) {
  if (a.impl_ == b.impl_) return true;
  const auto& x = *a.impl_;
  const auto& y = *b.impl_;
  if (x.kind != y.kind || x.n != y.n) return false;
  switch (x.kind) {
    case FiniteMetricSpace::Kind::Matrix:
      return x.matrix == y.matrix;
    case FiniteMetricSpace::Kind::Coordinates:
      return x.dim == y.dim && x.coords == y.coords;
    case FiniteMetricSpace::Kind::Product:
      return *x.left == *y.left && *x.right == *y.right;
  }
  return false;
}

PointMap projection_left(const ProductSpace& p) {
  PointMap m(p.size());
  for (Index k = 0; k < p.size(); ++k) m[k] = p.split(k).first;
  return m;
}

PointMap projection_right(const ProductSpace& p) {
  PointMap m(p.size());
  for (Index k = 0; k < p.size(); ++k) m[k] = p.split(k).second;
  return m;
}

double hausdorff(std::span<const Index> a, std::span<const Index> b,
                 const FiniteMetricSpace& space) {
  if (a.empty() || b.empty()) throw Error("hausdorff distance of an empty set");
  auto directed = [&space](std::span<const Index> from, std::span<const Index> to) {
    double worst = 0.0;
    for (Index x : from) {
      double best = std::numeric_limits<double>::infinity();
      for (Index y : to) best = std::min(best, space.dist(x, y));
      worst = std::max(worst, best);
    }
    return worst;
  };
  return std::max(directed(a, b), directed(b, a));
}

void canonicalize(PointSet& s) {
  std::sort(s.begin(), s.end());
  s.erase(std::unique(s.begin(), s.end()), s.end());
}

}  // namespace idem
