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

#include "idem/ifs.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <sstream>

#include "idem/error.hpp"
#include "idem/metrics.hpp"

namespace idem {

ComparisonFunction ComparisonFunction::linear(double beta) {
  if (!(beta >= 0.0 && beta < 1.0)) throw Error("linear witness needs beta in [0, 1)");
  return ComparisonFunction(Kind::Linear, beta);
}

ComparisonFunction ComparisonFunction::rational(double c) {
  if (!(c > 0.0) || !std::isfinite(c)) throw Error("rational witness needs c > 0");
  return ComparisonFunction(Kind::Rational, c);
}

std::string ComparisonFunction::describe() const {
  std::ostringstream os;
  os.precision(17);
  os << (kind_ == Kind::Linear ? "linear:" : "rational:") << param_;
  return os.str();
}

LipschitzReport discrete_lipschitz(const FiniteMetricSpace& space, std::span<const Index> target) {
  LipschitzReport r;
  for (Index i = 0; i < target.size(); ++i) {
    for (Index j = i + 1; j < target.size(); ++j) {
      const double ratio = space.dist(target[i], target[j]) / space.dist(i, j);
      if (ratio > r.lip) r = {ratio, i, j};
    }
  }
  return r;
}

namespace {

void check_total(const FiniteMetricSpace& space, const PointMap& target) {
  if (target.size() != space.size()) throw Error("point map is not total on its space");
  for (Index t : target) {
    if (t >= space.size()) throw Error("point map image " + std::to_string(t) + " out of range");
  }
}

}  // namespace

ContractionMap ContractionMap::certified(FiniteMetricSpace space, PointMap target,
                                         ComparisonFunction witness,
                                         std::optional<double> declared_lip) {
  check_total(space, target);
  double worst = -1.0;
  Index wi = 0, wj = 0;
  double wl = 0.0, wr = 0.0;
  for (Index i = 0; i < target.size(); ++i) {
    for (Index j = i + 1; j < target.size(); ++j) {
      const double d = space.dist(i, j);
      const double lhs = space.dist(target[i], target[j]);
      const double rhs = witness(d);
      const double excess = lhs - rhs - 1e-12 * d;
      if (excess > 0.0 && excess > worst) {
        worst = excess;
        wi = i;
        wj = j;
        wl = lhs;
        wr = rhs;
      }
    }
  }
  if (worst > 0.0) {
    std::ostringstream os;
    os.precision(12);
    os << "contraction certificate failed for witness " << witness.describe() << ": pair (" << wi
       << ", " << wj << ") at distance " << space.dist(wi, wj) << " maps to distance " << wl
       << " > " << wr;
    throw CertificateError(os.str(), wi, wj, wl, wr);
  }
  const LipschitzReport lip = discrete_lipschitz(space, target);
  if (declared_lip && lip.lip > *declared_lip * (1.0 + 1e-12)) {
    std::ostringstream os;
    os.precision(12);
    os << "declared Lipschitz constant " << *declared_lip << " is below the discrete constant "
       << lip.lip << " attained at pair (" << lip.first << ", " << lip.second << ")";
    throw CertificateError(os.str(), lip.first, lip.second, lip.lip, *declared_lip);
  }
  return ContractionMap(std::move(space), std::move(target), witness, declared_lip, lip.lip);
}

ContractionMap ContractionMap::uncertified(FiniteMetricSpace space, PointMap target) {
  check_total(space, target);
  const double lip = discrete_lipschitz(space, target).lip;
  return ContractionMap(std::move(space), std::move(target), std::nullopt, std::nullopt, lip);
}

ContractionMap snap_affine(const FiniteMetricSpace& grid, std::span<const double> A,
                           std::span<const double> b, std::optional<ComparisonFunction> witness,
                           std::optional<double> declared_lip) {
  const GridInfo* g = grid.grid_info();
  if (g == nullptr) throw Error("snap_affine needs a grid space");
  const std::size_t dim = grid.dimension();
  if (A.size() != dim * dim || b.size() != dim) {
    throw Error("affine map dimensions do not match the grid");
  }
  PointMap target(grid.size());
  std::vector<double> image(dim);
  for (Index p = 0; p < grid.size(); ++p) {
    const auto x = grid.coordinates(p);
    Index idx = 0;
    Index stride = 1;
    for (std::size_t r = 0; r < dim; ++r) {
      double y = b[r];
      for (std::size_t c = 0; c < dim; ++c) y += A[r * dim + c] * x[c];
      const double extent = g->upper[r] - g->lower[r];
      const double slack = 1e-12 * extent;
      if (y < g->lower[r] - slack || y > g->upper[r] + slack) {
        std::ostringstream os;
        os.precision(12);
        os << "affine image of grid point " << p << " leaves the bounding box on axis " << r
           << " (coordinate " << y << ")";
        throw Error(os.str());
      }
      // Nearest cell index; exact halves go down.
      const double t = (y - g->lower[r]) / g->step(r);
      const double k = std::ceil(t - 0.5);
      const auto kc = static_cast<std::size_t>(
          std::clamp(k, 0.0, static_cast<double>(g->cells[r])));
      idx += kc * stride;
      stride *= g->cells[r] + 1;
    }
    target[p] = idx;
  }
  if (witness) return ContractionMap::certified(grid, std::move(target), *witness, declared_lip);
  return ContractionMap::uncertified(grid, std::move(target));
}

MaxPlusIFS::MaxPlusIFS(FiniteMetricSpace space, std::vector<ContractionMap> maps,
                       std::vector<MaxPlus> weights)
    : space_(std::move(space)), maps_(std::move(maps)), weights_(std::move(weights)) {
  if (maps_.empty()) throw Error("an IFS needs at least one map");
  if (maps_.size() != weights_.size()) throw Error("an IFS needs one weight per map");
  for (MaxPlus w : weights_) {
    if (w.is_bottom()) throw Error("IFS weights must be finite");
  }
  if (!(big_oplus(weights_) == MaxPlus::zero())) {
    throw Error("IFS weights are not max-plus normalized (maximum must be exactly 0)");
  }
  for (const auto& m : maps_) require_same_space(space_, m.space(), "MaxPlusIFS");
}

bool MaxPlusIFS::is_certified() const noexcept {
  return std::all_of(maps_.begin(), maps_.end(), [](const auto& m) { return m.is_certified(); });
}

double MaxPlusIFS::discrete_lip_max() const noexcept {
  double a = 0.0;
  for (const auto& m : maps_) a = std::max(a, m.discrete_lip());
  return a;
}

double MaxPlusIFS::witness_max(double t) const {
  if (!is_certified()) throw Error("witness_max on an IFS with uncertified maps");
  double v = 0.0;
  for (const auto& m : maps_) v = std::max(v, (*m.witness())(t));
  return v;
}

IdempotentMeasure markov(const MaxPlusIFS& s, const IdempotentMeasure& mu) {
  require_same_space(s.space(), mu.space(), "markov");
  std::vector<MaxPlus> out(mu.size());
  const auto d = mu.density();
  for (std::size_t j = 0; j < s.size(); ++j) {
    const MaxPlus q = s.weights()[j];
    const PointMap& f = s.maps()[j].target();
    for (Index x = 0; x < d.size(); ++x) {
      if (d[x].is_bottom()) continue;
      out[f[x]] = oplus(out[f[x]], odot(q, d[x]));
    }
  }
  // The maximum is q_j + lambda(x) = 0 + 0 for a top-weight map and a top point.
  if (!(big_oplus(out) == MaxPlus::zero())) {
    throw std::logic_error("markov: normalization lost");
  }
  return IdempotentMeasure::normalize(mu.space(), std::move(out));
}

TestFunction markov_dual(const MaxPlusIFS& s, const TestFunction& f) {
  require_same_space(s.space(), f.space(), "markov_dual");
  std::vector<double> out(f.size(), -std::numeric_limits<double>::infinity());
  for (std::size_t j = 0; j < s.size(); ++j) {
    const double q = s.weights()[j].value();
    const PointMap& m = s.maps()[j].target();
    for (Index x = 0; x < out.size(); ++x) out[x] = std::max(out[x], q + f[m[x]]);
  }
  return TestFunction(f.space(), std::move(out));
}

FixedPointResult iterate_fixed_point(const MaxPlusIFS& s, const IdempotentMeasure& mu0,
                                     FixedPointMetric metric, double tol, std::size_t max_iter) {
  if (!(tol > 0.0)) throw Error("iterate_fixed_point: tol must be positive");
  require_same_space(s.space(), mu0.space(), "iterate_fixed_point");
  const double alpha = s.discrete_lip_max();
  const bool banach = metric == FixedPointMetric::D1 && alpha < 1.0;

  FixedPointResult r{mu0, {}};
  FixedPointDiagnostics& diag = r.diagnostics;
  diag.stopping_rule = banach ? "residual with a-priori bound (Banach, d1)" : "residual only";
  for (std::size_t k = 0; k < max_iter; ++k) {
    IdempotentMeasure next = markov(s, r.measure);
    double res = 0.0;
    if (!(next == r.measure)) {
      res = metric == FixedPointMetric::D1 ? d1(r.measure, next)
                                           : sup_density_distance(r.measure, next);
    }
    diag.residuals.push_back(res);
    diag.iterations = k + 1;
    const bool identical = next == r.measure;
    r.measure = std::move(next);
    if (banach) diag.apriori_bound = res * alpha / (1.0 - alpha);
    if (identical) {
      diag.exact = true;
      diag.converged = true;
      break;
    }
    if (res <= tol) {
      diag.converged = true;
      break;
    }
  }
  return r;
}

MaxPlusIFS product_ifs(const MaxPlusIFS& s) {
  const FiniteMetricSpace& X = s.space();
  const FiniteMetricSpace P = product(X, X);
  const std::size_t n = X.size();
  std::vector<ContractionMap> maps;
  maps.reserve(s.size());
  for (const auto& m : s.maps()) {
    const PointMap& f = m.target();
    PointMap t(n * n);
    for (Index x = 0; x < n; ++x) {
      for (Index y = 0; y < n; ++y) t[x * n + y] = f[x] * n + f[y];
    }
    // Under the maximum metric the factor's witness and Lipschitz constant carry over.
    maps.push_back(ContractionMap(P, std::move(t), m.witness(), m.declared_lip(), m.discrete_lip()));
  }
  return MaxPlusIFS(P, std::move(maps), std::vector<MaxPlus>(s.weights().begin(), s.weights().end()));
}

PointSet attractor(const MaxPlusIFS& s, PointSet start) {
  if (start.empty()) throw Error("attractor needs a nonempty start set");
  canonicalize(start);
  for (Index p : start) {
    if (p >= s.space().size()) throw Error("attractor start point out of range");
  }
  std::set<PointSet> seen;
  PointSet k = std::move(start);
  for (;;) {
    PointSet next;
    next.reserve(k.size() * s.size());
    for (const auto& m : s.maps()) {
      for (Index p : k) next.push_back(m(p));
    }
    canonicalize(next);
    if (next == k) return k;
    if (!seen.insert(k).second) throw Error("set iteration cycles without a fixed set");
    k = std::move(next);
  }
}

}  // namespace idem
