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

// Plain-text density files.
//
//   space <n_points>
//   <index> <coord...> <value|-inf>      (one line per point)
//
// Finite values and coordinates are written with 17 significant digits,
// which round-trips doubles exactly.

#include <iosfwd>
#include <string>
#include <vector>

#include "idem/error.hpp"
#include "idem/measure.hpp"

namespace idem {

class ParseError : public Error {
 public:
  ParseError(const std::string& source, std::size_t line, const std::string& msg)
      : Error(source + ":" + std::to_string(line) + ": " + msg), line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

struct DensityTable {
  std::size_t dimension = 0;
  std::vector<std::vector<double>> coordinates;  ///< empty rows when dimension == 0
  std::vector<MaxPlus> values;

  std::size_t size() const noexcept { return values.size(); }
};

void write_density(std::ostream& os, const IdempotentMeasure& mu);
void write_density_file(const std::string& path, const IdempotentMeasure& mu);

DensityTable parse_density(std::istream& is, const std::string& source = "<density>");
DensityTable read_density_file(const std::string& path);

/// Euclidean space on the table's coordinates. Throws when it has none.
FiniteMetricSpace space_from_table(const DensityTable& t);

/// Normalized measure on `space`. The point count must match, and so must
/// the coordinates whenever both sides carry them.
IdempotentMeasure to_measure(const DensityTable& t, const FiniteMetricSpace& space);

}  // namespace idem
