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

#include "idem/density_io.hpp"

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace idem {

namespace {

std::string format17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::vector<std::string> split_ws(const std::string& line) {
  std::istringstream is(line);
  std::vector<std::string> out;
  for (std::string tok; is >> tok;) out.push_back(tok);
  return out;
}

bool is_blank_or_comment(const std::string& line) {
  for (char c : line) {
    if (c == '#') return true;
    if (!std::isspace(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

}  // namespace

void write_density(std::ostream& os, const IdempotentMeasure& mu) {
  const FiniteMetricSpace& s = mu.space();
  os << "space " << s.size() << '\n';
  for (Index i = 0; i < s.size(); ++i) {
    os << i;
    for (double c : s.coordinates(i)) os << ' ' << format17(c);
    os << ' ' << to_string(mu[i]) << '\n';
  }
}

void write_density_file(const std::string& path, const IdempotentMeasure& mu) {
  std::ofstream os(path);
  if (!os) throw Error("cannot open '" + path + "' for writing");
  write_density(os, mu);
  if (!os) throw Error("failed writing '" + path + "'");
}

DensityTable parse_density(std::istream& is, const std::string& source) {
  std::string line;
  std::size_t lineno = 0;
  std::size_t n = 0;
  bool have_header = false;
  while (std::getline(is, line)) {
    ++lineno;
    if (is_blank_or_comment(line)) continue;
    const auto tok = split_ws(line);
    if (tok.size() != 2 || tok[0] != "space") {
      throw ParseError(source, lineno, "expected header 'space <n_points>'");
    }
    char* end = nullptr;
    const unsigned long long v = std::strtoull(tok[1].c_str(), &end, 10);
    if (*end != '\0' || v == 0 || tok[1][0] == '-') {
      throw ParseError(source, lineno, "point count must be a positive integer");
    }
    n = static_cast<std::size_t>(v);
    have_header = true;
    break;
  }
  if (!have_header) throw ParseError(source, lineno, "missing 'space' header");

  DensityTable t;
  t.coordinates.resize(n);
  t.values.resize(n);
  std::vector<bool> seen(n, false);
  std::size_t count = 0;
  bool dim_known = false;
  while (std::getline(is, line)) {
    ++lineno;
    if (is_blank_or_comment(line)) continue;
    const auto tok = split_ws(line);
    if (tok.size() < 2) throw ParseError(source, lineno, "expected '<index> <coord...> <value>'");
    char* end = nullptr;
    const unsigned long long idx = std::strtoull(tok[0].c_str(), &end, 10);
    if (*end != '\0' || tok[0][0] == '-') throw ParseError(source, lineno, "malformed index");
    if (idx >= n) throw ParseError(source, lineno, "index out of range");
    if (seen[idx]) throw ParseError(source, lineno, "duplicate index " + tok[0]);
    const std::size_t dim = tok.size() - 2;
    if (!dim_known) {
      t.dimension = dim;
      dim_known = true;
    } else if (dim != t.dimension) {
      throw ParseError(source, lineno, "inconsistent coordinate dimension");
    }
    std::vector<double> c(dim);
    for (std::size_t k = 0; k < dim; ++k) {
      const std::string& s = tok[1 + k];
      c[k] = std::strtod(s.c_str(), &end);
      if (end != s.c_str() + s.size()) throw ParseError(source, lineno, "malformed coordinate");
    }
    try {
      t.values[idx] = parse_maxplus(tok.back());
    } catch (const std::invalid_argument& e) {
      throw ParseError(source, lineno, e.what());
    }
    t.coordinates[idx] = std::move(c);
    seen[idx] = true;
    ++count;
  }
  if (count != n) {
    throw ParseError(source, lineno,
                     "expected " + std::to_string(n) + " points, found " + std::to_string(count));
  }
  return t;
}

DensityTable read_density_file(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw Error("cannot open density file '" + path + "'");
  return parse_density(is, path);
}

FiniteMetricSpace space_from_table(const DensityTable& t) {
  if (t.dimension == 0) {
    throw Error("density file carries no coordinates; supply the space explicitly");
  }
  return FiniteMetricSpace::from_coordinates(t.coordinates);
}

IdempotentMeasure to_measure(const DensityTable& t, const FiniteMetricSpace& space) {
  if (t.size() != space.size()) {
    throw SpaceMismatch("density has " + std::to_string(t.size()) + " points, space has " +
                        std::to_string(space.size()));
  }
  if (t.dimension != 0 && space.dimension() != 0) {
    if (t.dimension != space.dimension()) throw SpaceMismatch("coordinate dimension differs");
    for (Index i = 0; i < t.size(); ++i) {
      const auto c = space.coordinates(i);
      if (!std::equal(c.begin(), c.end(), t.coordinates[i].begin())) {
        throw SpaceMismatch("coordinates of point " + std::to_string(i) + " differ");
      }
    }
  }
  return IdempotentMeasure::normalize(space, t.values);
}

}  // namespace idem
