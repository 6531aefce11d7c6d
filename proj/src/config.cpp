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

#include "idem/config.hpp"

#include <cerrno>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace idem {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split_ws(const std::string& s) {
  std::istringstream is(s);
  std::vector<std::string> out;
  for (std::string t; is >> t;) out.push_back(t);
  return out;
}

double strict_double(const std::string& s) {
  if (s.empty()) throw std::invalid_argument("empty number");
  errno = 0;
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (end != s.c_str() + s.size() || errno == ERANGE || !std::isfinite(v)) {
    throw std::invalid_argument("malformed number '" + s + "'");
  }
  return v;
}

class Parser {
 public:
  Parser(std::string source) : source_(std::move(source)) {}

  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(source_, line_, msg); }

  double real(const std::string& v) const {
    try {
      return parse_real(v);
    } catch (const std::invalid_argument& e) {
      fail(e.what());
    }
  }

  std::vector<double> reals(const std::string& v) const {
    std::vector<double> out;
    for (const auto& t : split_ws(v)) out.push_back(real(t));
    if (out.empty()) fail("expected at least one number");
    return out;
  }

  std::size_t count(const std::string& v, bool allow_zero = false) const {
    char* end = nullptr;
    errno = 0;
    const unsigned long long x = std::strtoull(v.c_str(), &end, 10);
    if (v.empty() || v[0] == '-' || *end != '\0' || errno == ERANGE || (!allow_zero && x == 0)) {
      fail("expected a " + std::string(allow_zero ? "nonnegative" : "positive") +
           " integer, got '" + v + "'");
    }
    return static_cast<std::size_t>(x);
  }

  std::vector<std::size_t> counts(const std::string& v, bool allow_zero) const {
    std::vector<std::size_t> out;
    for (const auto& t : split_ws(v)) out.push_back(count(t, allow_zero));
    if (out.empty()) fail("expected at least one integer");
    return out;
  }

  ComparisonFunction witness(const std::string& v) const {
    const auto colon = v.find(':');
    if (colon == std::string::npos) fail("witness must be linear:<beta> or rational:<c>");
    const std::string kind = trim(v.substr(0, colon));
    const double p = real(trim(v.substr(colon + 1)));
    try {
      if (kind == "linear") return ComparisonFunction::linear(p);
      if (kind == "rational") return ComparisonFunction::rational(p);
    } catch (const Error& e) {
      fail(e.what());
    }
    fail("unknown witness kind '" + kind + "'");
  }

  ExperimentConfig parse(std::istream& is) {
    ExperimentConfig cfg;
    cfg.source = source_;
    std::string section;
    std::string raw;
    while (std::getline(is, raw)) {
      ++line_;
      const auto hash = raw.find('#');
      const std::string line = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
      if (line.empty()) continue;
      if (line.front() == '[') {
        if (line.back() != ']') fail("unterminated section header");
        section = trim(line.substr(1, line.size() - 2));
        if (section == "map") {
          cfg.maps.emplace_back();
          cfg.maps.back().line = line_;
        } else if (section == "space") {
          cfg.space.line = line_;
        } else if (section == "initial") {
          cfg.initial.line = line_;
        } else if (section != "run" && section != "verify") {
          fail("unknown section [" + section + "]");
        }
        continue;
      }
      const auto eq = line.find('=');
      if (eq == std::string::npos) fail("expected 'key = value'");
      const std::string key = trim(line.substr(0, eq));
      const std::string value = trim(line.substr(eq + 1));
      if (key.empty()) fail("empty key");
      if (value.empty()) fail("empty value for '" + key + "'");
      assign(cfg, section, key, value);
    }
    return cfg;
  }

 private:
  void assign(ExperimentConfig& cfg, const std::string& section, const std::string& key,
              const std::string& v) {
    if (section.empty()) {
      if (key == "seed") {
        cfg.seed = count(v, true);
        return;
      }
    } else if (section == "space") {
      SpaceSpec& s = cfg.space;
      if (key == "kind") {
        if (v == "grid") s.kind = SpaceSpec::Kind::Grid;
        else if (v == "matrix") s.kind = SpaceSpec::Kind::Matrix;
        else if (v == "points") s.kind = SpaceSpec::Kind::Points;
        else fail("space kind must be grid, matrix or points");
        return;
      }
      if (key == "lower") return void(s.lower = reals(v));
      if (key == "upper") return void(s.upper = reals(v));
      if (key == "cells") return void(s.cells = counts(v, false));
      if (key == "row") return void(s.rows.push_back(reals(v)));
      if (key == "point") return void(s.points.push_back(reals(v)));
    } else if (section == "map") {
      MapSpec& m = cfg.maps.back();
      if (key == "A") return void(m.A = reals(v));
      if (key == "b") return void(m.b = reals(v));
      if (key == "table") {
        const auto t = counts(v, true);
        return void(m.table = PointMap(t.begin(), t.end()));
      }
      if (key == "weight") return void(m.weight = real(v));
      if (key == "lip") return void(m.declared_lip = real(v));
      if (key == "witness") {
        if (v == "none") return void(m.witness.reset());
        return void(m.witness = witness(v));
      }
    } else if (section == "initial") {
      InitialSpec& i = cfg.initial;
      if (key == "kind") {
        if (v == "dirac") i.kind = InitialSpec::Kind::Dirac;
        else if (v == "uniform") i.kind = InitialSpec::Kind::Uniform;
        else if (v == "file") i.kind = InitialSpec::Kind::File;
        else fail("initial kind must be dirac, uniform or file");
        return;
      }
      if (key == "index") return void(i.index = count(v, true));
      if (key == "file") return void(i.file = v);
    } else if (section == "run") {
      RunSpec& r = cfg.run;
      if (key == "metric") {
        if (v == "d1") r.metric = FixedPointMetric::D1;
        else if (v == "sup_density") r.metric = FixedPointMetric::SupDensity;
        else fail("run metric must be d1 or sup_density");
        return;
      }
      if (key == "tol") {
        r.tol = real(v);
        if (!(r.tol > 0.0)) fail("tol must be positive");
        return;
      }
      if (key == "max_iter") return void(r.max_iter = count(v));
      if (key == "output") return void(r.output = v);
    } else if (section == "verify") {
      VerifySpec& s = cfg.verify;
      if (key == "pairs") return void(s.pairs = count(v));
      if (key == "alpha") return void(s.alpha = real(v));
      if (key == "q") return void(s.q = real(v));
      if (key == "series_tol") return void(s.series_tol = real(v));
      if (key == "d1_slack") return void(s.d1_slack = real(v));
      if (key == "series_slack") return void(s.series_slack = real(v));
    }
    fail("unknown key '" + key + "'" + (section.empty() ? "" : " in [" + section + "]"));
  }

  std::string source_;
  std::size_t line_ = 0;
};

// Re-raises a library error as a ConfigError tagged with a config line.
[[noreturn]] void config_fail(const ExperimentConfig& cfg, std::size_t line,
                              const std::string& msg) {
  throw ConfigError(cfg.source + ":" + std::to_string(line) + ": " + msg);
}

}  // namespace

double parse_real(const std::string& token) {
  const auto slash = token.find('/');
  if (slash == std::string::npos) return strict_double(token);
  const double num = strict_double(token.substr(0, slash));
  const double den = strict_double(token.substr(slash + 1));
  if (den == 0.0) throw std::invalid_argument("zero denominator in '" + token + "'");
  return num / den;
}

ExperimentConfig parse_config(std::istream& is, const std::string& source) {
  return Parser(source).parse(is);
}

ExperimentConfig read_config_file(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw ConfigError("cannot open config '" + path + "'");
  return parse_config(is, path);
}

FiniteMetricSpace build_space(const SpaceSpec& s) {
  switch (s.kind) {
    case SpaceSpec::Kind::Grid:
      return FiniteMetricSpace::grid(s.lower, s.upper, s.cells);
    case SpaceSpec::Kind::Matrix: {
      const std::size_t n = s.rows.size();
      std::vector<double> m;
      m.reserve(n * n);
      for (const auto& r : s.rows) {
        if (r.size() != n) throw Error("distance matrix must be square");
        m.insert(m.end(), r.begin(), r.end());
      }
      return FiniteMetricSpace::from_matrix(n, std::move(m));
    }
    case SpaceSpec::Kind::Points:
      return FiniteMetricSpace::from_coordinates(s.points);
  }
  throw Error("unknown space kind");
}

MaxPlusIFS build_ifs(const ExperimentConfig& cfg, const FiniteMetricSpace& space,
                     bool renormalize) {
  if (cfg.maps.empty()) throw ConfigError(cfg.source + ": no [map] sections");
  std::vector<double> w;
  for (const auto& m : cfg.maps) w.push_back(m.weight);
  const double top = *std::max_element(w.begin(), w.end());
  if (top != 0.0) {
    if (!renormalize) {
      config_fail(cfg, cfg.maps.front().line,
                  "weights have maximum " + std::to_string(top) +
                      " instead of 0 (use --renormalize to shift them)");
    }
    for (double& x : w) x -= top;
  }
  std::vector<ContractionMap> maps;
  std::vector<MaxPlus> weights;
  for (std::size_t j = 0; j < cfg.maps.size(); ++j) {
    const MapSpec& m = cfg.maps[j];
    const bool affine = !m.A.empty() || !m.b.empty();
    if (affine == m.table.has_value()) {
      config_fail(cfg, m.line, "a map needs exactly one of 'A'/'b' or 'table'");
    }
    if (affine) {
      if (space.grid_info() == nullptr) config_fail(cfg, m.line, "affine maps need a grid space");
      try {
        maps.push_back(snap_affine(space, m.A, m.b, m.witness, m.declared_lip));
      } catch (const CertificateError&) {
        throw;
      } catch (const Error& e) {
        config_fail(cfg, m.line, e.what());
      }
    } else {
      for (Index t : *m.table) {
        if (t >= space.size()) config_fail(cfg, m.line, "table entry out of range");
      }
      if (m.table->size() != space.size()) {
        config_fail(cfg, m.line, "table must have one entry per point");
      }
      maps.push_back(m.witness ? ContractionMap::certified(space, *m.table, *m.witness,
                                                           m.declared_lip)
                               : ContractionMap::uncertified(space, *m.table));
    }
    weights.emplace_back(w[j]);
  }
  return MaxPlusIFS(space, std::move(maps), std::move(weights));
}

IdempotentMeasure build_initial(const ExperimentConfig& cfg, const FiniteMetricSpace& space) {
  const InitialSpec& i = cfg.initial;
  switch (i.kind) {
    case InitialSpec::Kind::Uniform:
      return IdempotentMeasure::uniform(space);
    case InitialSpec::Kind::Dirac:
      if (i.index >= space.size()) config_fail(cfg, i.line, "initial index out of range");
      return IdempotentMeasure::dirac(space, i.index);
    case InitialSpec::Kind::File: {
      if (i.file.empty()) config_fail(cfg, i.line, "initial kind 'file' needs 'file ='");
      std::filesystem::path p(i.file);
      if (p.is_relative()) p = std::filesystem::path(cfg.source).parent_path() / p;
      return to_measure(read_density_file(p.string()), space);
    }
  }
  throw Error("unknown initial measure kind");
}

}  // namespace idem
