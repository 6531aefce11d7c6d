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

#include "idem/commands.hpp"

#include <cstdio>
#include <fstream>
#include <limits>
#include <map>
#include <ostream>
#include <sstream>

#include "idem/render.hpp"
#include "idem/sampling.hpp"

namespace idem {

namespace {

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

void write_support(std::ostream& out, const char* label, const PointSet& s) {
  out << label << ' ' << s.size() << ':';
  for (Index i : s) out << ' ' << i;
  out << '\n';
}

struct Loaded {
  FiniteMetricSpace space;
  MaxPlusIFS ifs;
};

Loaded load(const ExperimentConfig& cfg, const RunOptions& opts) {
  FiniteMetricSpace space = [&] {
    try {
      return build_space(cfg.space);
    } catch (const Error& e) {
      throw ConfigError(cfg.source + ":" + std::to_string(cfg.space.line) + ": " + e.what());
    }
  }();
  MaxPlusIFS ifs = build_ifs(cfg, space, opts.renormalize);
  return {space, std::move(ifs)};
}

}  // namespace

int cmd_solve(const ExperimentConfig& cfg, const RunOptions& opts, std::ostream& out) {
  const Loaded l = load(cfg, opts);
  const IdempotentMeasure mu0 = build_initial(cfg, l.space);
  const FixedPointResult r =
      iterate_fixed_point(l.ifs, mu0, cfg.run.metric, cfg.run.tol, cfg.run.max_iter);
  const auto& d = r.diagnostics;

  out << "solve " << cfg.source << '\n';
  out << "points " << l.space.size() << '\n';
  out << "maps " << l.ifs.size() << '\n';
  out << "discrete_lip_max " << fmt(l.ifs.discrete_lip_max()) << '\n';
  out << "metric " << (cfg.run.metric == FixedPointMetric::D1 ? "d1" : "sup_density") << '\n';
  out << "stopping_rule " << d.stopping_rule << '\n';
  out << "iterations " << d.iterations << '\n';
  out << "converged " << (d.converged ? "yes" : "no") << '\n';
  out << "exact_fixed_point " << (d.exact ? "yes" : "no") << '\n';
  out << "final_residual " << fmt(d.residuals.empty() ? 0.0 : d.residuals.back()) << '\n';
  out << "apriori_bound " << (d.apriori_bound ? fmt(*d.apriori_bound) : "n/a") << '\n';
  write_support(out, "support", r.measure.support());

  const std::string path = opts.output.empty() ? cfg.run.output : opts.output;
  if (path.empty()) {
    out << "density\n";
    write_density(out, r.measure);
  } else {
    write_density_file(path, r.measure);
    out << "density_file " << path << '\n';
  }
  return d.converged ? kExitOk : kExitNonConvergence;
}

int cmd_attractor(const ExperimentConfig& cfg, const RunOptions& opts, std::ostream& out) {
  const Loaded l = load(cfg, opts);
  PointSet all(l.space.size());
  for (Index i = 0; i < all.size(); ++i) all[i] = i;
  const PointSet k = attractor(l.ifs, std::move(all));
  out << "attractor " << cfg.source << '\n';
  write_support(out, "points", k);
  if (l.space.dimension() > 0) {
    for (Index i : k) {
      out << i;
      for (double c : l.space.coordinates(i)) out << ' ' << fmt(c);
      out << '\n';
    }
  }
  return kExitOk;
}

int cmd_verify(const ExperimentConfig& cfg, const RunOptions& opts, std::ostream& out) {
  const Loaded l = load(cfg, opts);
  const MaxPlusIFS& S = l.ifs;
  for (std::size_t j = 0; j < S.size(); ++j) {
    if (!S.maps()[j].is_certified()) {
      throw CertificateError("map " + std::to_string(j) + " (config line " +
                                 std::to_string(cfg.maps[j].line) +
                                 ") declares no contraction witness",
                             0, 0, 0.0, 0.0);
    }
  }
  const VerifySpec& v = cfg.verify;
  const double lip = S.discrete_lip_max();
  const double alpha = v.alpha ? *v.alpha : (lip > 0.0 ? lip : v.q / 2.0);
  if (!(alpha > 0.0 && alpha < 1.0) || !(v.q > alpha && v.q < 1.0)) {
    throw ConfigError(cfg.source + ": verify needs 0 < alpha < q < 1 (alpha " + fmt(alpha) +
                      ", q " + fmt(v.q) + ")");
  }
  if (alpha < lip * (1.0 - 1e-12)) {
    throw ConfigError(cfg.source + ": verify alpha " + fmt(alpha) +
                      " is below the discrete Lipschitz constant " + fmt(lip));
  }

  Rng rng(cfg.seed);
  std::vector<MeasurePair> pairs;
  pairs.reserve(v.pairs);
  while (pairs.size() < v.pairs) {
    IdempotentMeasure a = random_measure(l.space, rng);
    IdempotentMeasure b = random_measure(l.space, rng);
    if (a == b) continue;
    pairs.emplace_back(std::move(a), std::move(b));
  }
  const MeasureOperator M = [&S](const IdempotentMeasure& mu) { return markov(S, mu); };

  out << "verify " << cfg.source << '\n';
  out << "points " << l.space.size() << '\n';
  out << "maps " << S.size() << '\n';
  out << "discrete_lip_max " << fmt(lip) << '\n';
  out << "pairs " << pairs.size() << " seed " << cfg.seed << '\n';

  bool ok = true;

  // d1(M mu1, M mu2) <= phi_S(d1(mu1, mu2)) pair by pair.
  double worst_excess = -std::numeric_limits<double>::infinity();
  for (const auto& [a, b] : pairs) {
    const double before = d1(a, b);
    const double after = d1(markov(S, a), markov(S, b));
    worst_excess = std::max(worst_excess, after - S.witness_max(before));
  }
  const ContractionEstimate e1 = empirical_contraction(M, d1, pairs);
  const bool d1_ok = worst_excess <= v.d1_slack;
  ok = ok && d1_ok;
  out << "d1 max_ratio " << fmt(e1.max_ratio) << " witness_pair " << e1.witness
      << " max_excess_over_witness " << fmt(worst_excess) << " slack " << fmt(v.d1_slack) << ' '
      << (d1_ok ? "PASS" : "FAIL") << '\n';

  const SeriesParams sp{alpha, v.q, v.series_tol};
  const MeasureMetric series = [&sp](const IdempotentMeasure& a, const IdempotentMeasure& b) {
    return tilde_d_alpha_q(a, b, sp).value;
  };
  const ContractionEstimate e2 = empirical_contraction(M, series, pairs);
  const double bound = alpha / v.q;
  const bool series_ok = e2.max_ratio <= bound + v.series_slack;
  ok = ok && series_ok;
  out << "dtilde alpha " << fmt(alpha) << " q " << fmt(v.q) << " tol " << fmt(v.series_tol)
      << " max_ratio " << fmt(e2.max_ratio) << " bound " << fmt(bound) << " slack "
      << fmt(v.series_slack) << ' ' << (series_ok ? "PASS" : "FAIL") << '\n';
  out << "result " << (ok ? "PASS" : "FAIL") << '\n';
  return ok ? kExitOk : kExitVerificationViolation;
}

MetricSpec parse_metric_spec(const std::string& text) {
  const auto colon = text.find(':');
  const std::string name = text.substr(0, colon);
  std::map<std::string, double> kv;
  if (colon != std::string::npos) {
    std::istringstream is(text.substr(colon + 1));
    for (std::string item; std::getline(is, item, ',');) {
      const auto eq = item.find('=');
      if (eq == std::string::npos) throw ConfigError("metric parameter '" + item + "' lacks '='");
      try {
        kv[item.substr(0, eq)] = parse_real(item.substr(eq + 1));
      } catch (const std::invalid_argument& e) {
        throw ConfigError("metric spec: " + std::string(e.what()));
      }
    }
  }
  auto take = [&](const std::string& key, std::optional<double> fallback) {
    const auto it = kv.find(key);
    if (it == kv.end()) {
      if (!fallback) throw ConfigError("metric '" + name + "' needs parameter '" + key + "'");
      return *fallback;
    }
    const double x = it->second;
    kv.erase(it);
    return x;
  };
  MetricSpec m;
  if (name == "d1") {
    m.kind = MetricSpec::Kind::D1;
  } else if (name == "da") {
    m.kind = MetricSpec::Kind::Da;
    m.a = take("a", std::nullopt);
  } else if (name == "dtilde") {
    m.kind = MetricSpec::Kind::DTilde;
    m.series.alpha = take("alpha", std::nullopt);
    m.series.q = take("q", std::nullopt);
    m.series.tol = take("tol", 1e-6);
  } else if (name == "brz") {
    m.kind = MetricSpec::Kind::Brz;
    m.tol = take("tol", 1e-6);
  } else {
    throw ConfigError("unknown metric '" + name + "' (expected d1, da, dtilde or brz)");
  }
  if (!kv.empty()) throw ConfigError("unknown parameter '" + kv.begin()->first + "'");
  return m;
}

int cmd_metric(const std::string& file_a, const std::string& file_b, const std::string& spec,
               const std::optional<ExperimentConfig>& cfg, std::ostream& out) {
  const MetricSpec m = parse_metric_spec(spec);
  const DensityTable ta = read_density_file(file_a);
  const DensityTable tb = read_density_file(file_b);
  const FiniteMetricSpace space = cfg ? build_space(cfg->space) : space_from_table(ta);
  const IdempotentMeasure a = to_measure(ta, space);
  const IdempotentMeasure b = to_measure(tb, space);
  switch (m.kind) {
    case MetricSpec::Kind::D1:
      out << fmt(d1(a, b)) << '\n';
      break;
    case MetricSpec::Kind::Da:
      out << fmt(d_a(a, b, m.a)) << '\n';
      break;
    case MetricSpec::Kind::DTilde: {
      const SeriesValue s = tilde_d_alpha_q(a, b, m.series);
      out << fmt(s.value) << '\n' << "tail " << fmt(s.tail_bound) << '\n';
      break;
    }
    case MetricSpec::Kind::Brz: {
      const SeriesValue s = tilde_d_brz(a, b, m.tol);
      out << fmt(s.value) << '\n' << "tail " << fmt(s.tail_bound) << '\n';
      break;
    }
  }
  return kExitOk;
}

int cmd_render(const std::string& density_file, const std::string& image_file, double floor,
               std::ostream& out) {
  const DensityTable t = read_density_file(density_file);
  const GrayImage img = render_density(t, floor);
  std::ofstream os(image_file, std::ios::binary);
  if (!os) throw Error("cannot open '" + image_file + "' for writing");
  write_pgm(os, img);
  if (!os) throw Error("failed writing '" + image_file + "'");
  out << "image " << image_file << ' ' << img.width << 'x' << img.height << '\n';
  return kExitOk;
}

int run_guarded(const std::function<int()>& body, std::ostream& err) {
  try {
    return body();
  } catch (const CertificateError& e) {
    err << "certificate failure: " << e.what() << '\n';
    return kExitCertificateFailure;
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << '\n';
    return kExitConfigError;
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << '\n';
    return kExitConfigError;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitConfigError;
  }
}

}  // namespace idem
