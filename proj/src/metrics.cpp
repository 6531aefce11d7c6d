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

#include "idem/metrics.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <limits>
#include <string>

#include "idem/error.hpp"

namespace idem {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

MaxPlus min_of(MaxPlus a, MaxPlus b) { return a < b ? a : b; }

}  // namespace

bool CouplingCandidate::satisfies_marginals(const IdempotentMeasure& left,
                                            const IdempotentMeasure& right) const {
  const std::size_t n = left.size();
  const std::size_t m = right.size();
  if (density.size() != n * m) return false;
  std::vector<MaxPlus> rows(n), cols(m);
  for (Index x = 0; x < n; ++x) {
    for (Index y = 0; y < m; ++y) {
      const MaxPlus e = density[x * m + y];
      rows[x] = oplus(rows[x], e);
      cols[y] = oplus(cols[y], e);
    }
  }
  for (Index x = 0; x < n; ++x) {
    if (!(rows[x] == left[x])) return false;
  }
  for (Index y = 0; y < m; ++y) {
    if (!(cols[y] == right[y])) return false;
  }
  return true;
}

CouplingCandidate maximal_coupling(const IdempotentMeasure& mu1, const IdempotentMeasure& mu2,
                                   double t) {
  require_same_space(mu1.space(), mu2.space(), "maximal_coupling");
  const FiniteMetricSpace& X = mu1.space();
  const std::size_t n = X.size();
  CouplingCandidate c{product(X, X), std::vector<MaxPlus>(n * n), t};
  for (Index x : mu1.support()) {
    for (Index y : mu2.support()) {
      if (X.dist(x, y) <= t) c.density[x * n + y] = min_of(mu1[x], mu2[y]);
    }
  }
  return c;
}

bool coupling_feasible(const IdempotentMeasure& mu1, const IdempotentMeasure& mu2, double t) {
  require_same_space(mu1.space(), mu2.space(), "coupling_feasible");
  const FiniteMetricSpace& X = mu1.space();
  const PointSet s1 = mu1.support();
  const PointSet s2 = mu2.support();
  // Rows and columns outside the supports are -inf on both sides.
  for (Index x : s1) {
    MaxPlus row;
    for (Index y : s2) {
      if (X.dist(x, y) <= t) row = oplus(row, min_of(mu1[x], mu2[y]));
    }
    if (!(row == mu1[x])) return false;
  }
  for (Index y : s2) {
    MaxPlus col;
    for (Index x : s1) {
      if (X.dist(x, y) <= t) col = oplus(col, min_of(mu1[x], mu2[y]));
    }
    if (!(col == mu2[y])) return false;
  }
  return true;
}

Coupling::Coupling(IdempotentMeasure measure, IdempotentMeasure left, IdempotentMeasure right)
    : measure_(std::move(measure)), left_(std::move(left)), right_(std::move(right)) {
  const FiniteMetricSpace& P = measure_.space();
  if (!P.is_product()) throw Error("coupling must live on a product space");
  require_same_space(P.left(), left_.space(), "coupling (left marginal)");
  require_same_space(P.right(), right_.space(), "coupling (right marginal)");
  if (!(pushforward(measure_, projection_left(P), P.left()) == left_) ||
      !(pushforward(measure_, projection_right(P), P.right()) == right_)) {
    throw Error("coupling projections do not reproduce the marginals");
  }
}

double Coupling::spread() const {
  const FiniteMetricSpace& P = measure_.space();
  double s = 0.0;
  for (Index p : measure_.support()) {
    const auto [x, y] = P.split(p);
    s = std::max(s, P.left().dist(x, y));
  }
  return s;
}

namespace {

// Sorted distinct candidate thresholds and the index of the first feasible one.
struct ThresholdSearch {
  std::vector<double> candidates;
  std::size_t feasible = 0;
};

ThresholdSearch search_threshold(const IdempotentMeasure& mu1, const IdempotentMeasure& mu2) {
  require_same_space(mu1.space(), mu2.space(), "d1");
  const FiniteMetricSpace& X = mu1.space();
  const PointSet s1 = mu1.support();
  const PointSet s2 = mu2.support();
  ThresholdSearch s;
  s.candidates.reserve(s1.size() * s2.size() + 1);
  s.candidates.push_back(0.0);
  for (Index x : s1) {
    for (Index y : s2) s.candidates.push_back(X.dist(x, y));
  }
  std::sort(s.candidates.begin(), s.candidates.end());
  s.candidates.erase(std::unique(s.candidates.begin(), s.candidates.end()), s.candidates.end());
  // Feasibility is monotone in t and holds at the largest candidate.
  std::size_t lo = 0;
  std::size_t hi = s.candidates.size() - 1;
  while (lo < hi) {
    const std::size_t mid = lo + (hi - lo) / 2;
    if (coupling_feasible(mu1, mu2, s.candidates[mid])) {
      hi = mid;
    } else {
      lo = mid + 1;
    }
  }
  s.feasible = lo;
  return s;
}

}  // namespace

double d1(const IdempotentMeasure& mu1, const IdempotentMeasure& mu2) {
  const ThresholdSearch s = search_threshold(mu1, mu2);
  const double t = s.candidates[s.feasible];
  // Largest distance actually present in supp eta_t.
  const FiniteMetricSpace& X = mu1.space();
  double spread = 0.0;
  for (Index x : mu1.support()) {
    for (Index y : mu2.support()) {
      const double d = X.dist(x, y);
      if (d <= t) spread = std::max(spread, d);
    }
  }
  return spread;
}

Coupling optimal_coupling(const IdempotentMeasure& mu1, const IdempotentMeasure& mu2) {
  const ThresholdSearch s = search_threshold(mu1, mu2);
  CouplingCandidate c = maximal_coupling(mu1, mu2, s.candidates[s.feasible]);
  return Coupling(IdempotentMeasure::normalize(c.space, std::move(c.density)), mu1, mu2);
}

double d1_oracle(const IdempotentMeasure& mu1, const IdempotentMeasure& mu2) {
  require_same_space(mu1.space(), mu2.space(), "d1_oracle");
  const FiniteMetricSpace& X = mu1.space();
  const PointSet s1 = mu1.support();
  const PointSet s2 = mu2.support();
  const std::size_t pairs = s1.size() * s2.size();
  if (pairs > 16) throw Error("d1_oracle: support product exceeds 16 pairs");

  // For pair p = (x, y) with entry min(lambda1(x), lambda2(y)): the entry
  // equals lambda1(x) iff lambda2(y) >= lambda1(x), and then row x attains
  // its marginal; likewise for column y. A subset A is feasible iff every
  // row and every column of the supports is attained by some entry of A.
  std::vector<std::uint32_t> hits(pairs);
  std::vector<double> dist(pairs);
  for (std::size_t a = 0; a < s1.size(); ++a) {
    for (std::size_t b = 0; b < s2.size(); ++b) {
      const std::size_t p = a * s2.size() + b;
      const MaxPlus e = min_of(mu1[s1[a]], mu2[s2[b]]);
      std::uint32_t h = 0;
      if (e == mu1[s1[a]]) h |= 1u << a;
      if (e == mu2[s2[b]]) h |= 1u << (16 + b);
      hits[p] = h;
      dist[p] = X.dist(s1[a], s2[b]);
    }
  }
  const std::uint32_t all =
      static_cast<std::uint32_t>(((1ull << s1.size()) - 1) | (((1ull << s2.size()) - 1) << 16));
  const std::uint32_t subsets = 1u << pairs;
  thread_local std::vector<std::uint32_t> cover;
  thread_local std::vector<double> spread;
  cover.assign(subsets, 0);
  spread.assign(subsets, 0.0);
  double best = kInf;
  for (std::uint32_t A = 1; A < subsets; ++A) {
    const int low = std::countr_zero(A);
    const std::uint32_t rest = A & (A - 1);
    cover[A] = cover[rest] | hits[low];
    spread[A] = std::max(spread[rest], dist[low]);
    if (cover[A] == all) best = std::min(best, spread[A]);
  }
  return best;
}

namespace {

// max_{x in supp mu} [lambda_mu(x) - max_{y in supp nu} (lambda_nu(y) - a d(x, y))]
// together with the maximizing x (lowest index on ties).
std::pair<double, Index> directed_da(const IdempotentMeasure& mu, const IdempotentMeasure& nu,
                                     double a) {
  const FiniteMetricSpace& X = mu.space();
  const PointSet su = mu.support();
  const PointSet sv = nu.support();
  double best = -kInf;
  Index arg = su.front();
  for (Index x : su) {
    double inner = -kInf;
    for (Index y : sv) inner = std::max(inner, nu[y].value() - a * X.dist(x, y));
    const double v = mu[x].value() - inner;
    if (v > best) {
      best = v;
      arg = x;
    }
  }
  return {best, arg};
}

void check_da_args(const IdempotentMeasure& mu1, const IdempotentMeasure& mu2, double a,
                   const char* what) {
  require_same_space(mu1.space(), mu2.space(), what);
  if (!(a > 0.0) || !std::isfinite(a)) {
    throw Error(std::string(what) + ": Lipschitz bound must be positive and finite");
  }
}

}  // namespace

double d_a(const IdempotentMeasure& mu1, const IdempotentMeasure& mu2, double a) {
  check_da_args(mu1, mu2, a, "d_a");
  return std::max(directed_da(mu1, mu2, a).first, directed_da(mu2, mu1, a).first);
}

ConeWitness d_a_cone(const IdempotentMeasure& mu1, const IdempotentMeasure& mu2, double a) {
  check_da_args(mu1, mu2, a, "d_a_cone");
  const auto fwd = directed_da(mu1, mu2, a);
  const auto rev = directed_da(mu2, mu1, a);
  const bool reversed = rev.first > fwd.first;
  const Index center = reversed ? rev.second : fwd.second;
  const FiniteMetricSpace& X = mu1.space();
  std::vector<double> values(X.size());
  for (Index y = 0; y < X.size(); ++y) values[y] = -a * X.dist(center, y);
  TestFunction cone(X, std::move(values));
  const double v = std::abs(integrate(mu1, cone) - integrate(mu2, cone));
  return ConeWitness{center, reversed, std::move(cone), v};
}

TestFunction lipschitz_regularize(const TestFunction& f, double a) {
  const FiniteMetricSpace& X = f.space();
  std::vector<double> out(X.size());
  for (Index x = 0; x < X.size(); ++x) {
    double m = kInf;
    for (Index y = 0; y < X.size(); ++y) m = std::min(m, f[y] + a * X.dist(x, y));
    out[x] = m;
  }
  return TestFunction(X, std::move(out));
}

DaCertificate d_a_oracle(const IdempotentMeasure& mu1, const IdempotentMeasure& mu2, double a,
                         Rng& rng, std::size_t samples) {
  check_da_args(mu1, mu2, a, "d_a_oracle");
  const FiniteMetricSpace& X = mu1.space();
  const std::size_t n = X.size();
  if (n > 50) throw Error("d_a_oracle: space exceeds 50 points");

  DaCertificate c;
  c.closed_form = d_a(mu1, mu2, a);
  const ConeWitness w = d_a_cone(mu1, mu2, a);
  c.cone_value = w.value;
  c.cone_lipschitz = w.cone.lipschitz_constant();
  c.samples = samples;

  // Inner loop works on flat arrays; dist is cached once.
  std::vector<double> dist(n * n);
  for (Index x = 0; x < n; ++x) {
    for (Index y = 0; y < n; ++y) dist[x * n + y] = a * X.dist(x, y);
  }
  const double span = a * std::max(X.diameter(), 1e-300);
  std::vector<double> f(n), g(n);
  for (std::size_t s = 0; s < samples; ++s) {
    const double scale = span * rng.uniform(0.0, 2.0);
    for (Index y = 0; y < n; ++y) f[y] = rng.uniform(-scale, scale);
    for (Index x = 0; x < n; ++x) {
      double m = kInf;
      const double* row = dist.data() + x * n;
      for (Index y = 0; y < n; ++y) m = std::min(m, f[y] + row[y]);
      g[x] = m;
    }
    TestFunction reg(X, g);
    if (s < 64) c.sample_lipschitz = std::max(c.sample_lipschitz, reg.lipschitz_constant());
    c.lower = std::max(c.lower, std::abs(integrate(mu1, reg) - integrate(mu2, reg)));
  }
  return c;
}

SeriesValue tilde_d_alpha_q(const IdempotentMeasure& mu1, const IdempotentMeasure& mu2,
                            const SeriesParams& p) {
  require_same_space(mu1.space(), mu2.space(), "tilde_d_alpha_q");
  if (!(p.alpha > 0.0 && p.alpha < 1.0) || !(p.q > 0.0 && p.q < 1.0)) {
    throw Error("tilde_d_alpha_q: alpha and q must lie in (0, 1)");
  }
  if (!(p.tol > 0.0)) throw Error("tilde_d_alpha_q: tol must be positive");
  const double diam = mu1.space().diameter();
  // Each term is at most q^|n| * diam, so the two tails beyond |n| = N sum
  // to at most 2 diam q^(N+1) / (1 - q).
  auto tail = [&](int N) { return 2.0 * diam * std::pow(p.q, N + 1) / (1.0 - p.q); };
  int N = 0;
  while (tail(N) > p.tol) ++N;

  SeriesValue out;
  out.truncation = N;
  out.tail_bound = tail(N);
  auto term = [&](int n) {
    const double a = std::pow(p.alpha, n);
    return std::pow(p.q, std::abs(n)) / a * d_a(mu1, mu2, a);
  };
  out.value = term(0);
  for (int k = 1; k <= N; ++k) out.value += term(k) + term(-k);
  return out;
}

SeriesValue tilde_d_brz(const IdempotentMeasure& mu1, const IdempotentMeasure& mu2, double tol) {
  require_same_space(mu1.space(), mu2.space(), "tilde_d_brz");
  if (!(tol > 0.0)) throw Error("tilde_d_brz: tol must be positive");
  const double diam = mu1.space().diameter();
  // d_n <= n diam, so the tail beyond N is at most diam 2^-N.
  int N = 1;
  while (diam * std::ldexp(1.0, -N) > tol) ++N;
  SeriesValue out;
  out.truncation = N;
  out.tail_bound = diam * std::ldexp(1.0, -N);
  for (int n = 1; n <= N; ++n) {
    out.value += d_a(mu1, mu2, n) / (n * std::ldexp(1.0, n));
  }
  return out;
}

double sup_density_distance(const IdempotentMeasure& mu1, const IdempotentMeasure& mu2) {
  require_same_space(mu1.space(), mu2.space(), "sup_density_distance");
  double s = 0.0;
  for (Index x = 0; x < mu1.size(); ++x) {
    const MaxPlus a = mu1[x];
    const MaxPlus b = mu2[x];
    if (a.is_bottom() && b.is_bottom()) continue;
    if (a.is_bottom() || b.is_bottom()) return kInf;
    s = std::max(s, std::abs(a.value() - b.value()));
  }
  return s;
}

ContractionEstimate empirical_contraction(const MeasureOperator& op, const MeasureMetric& metric,
                                          std::span<const MeasurePair> pairs) {
  ContractionEstimate e;
  for (std::size_t k = 0; k < pairs.size(); ++k) {
    const double before = metric(pairs[k].first, pairs[k].second);
    if (!(before > 0.0)) continue;
    const double after = metric(op(pairs[k].first), op(pairs[k].second));
    const double r = after / before;
    if (e.evaluated == 0 || r > e.max_ratio) {
      e.max_ratio = r;
      e.witness = k;
    }
    ++e.evaluated;
  }
  if (e.evaluated == 0) throw Error("empirical_contraction: every pair has zero distance");
  return e;
}

}  // namespace idem
