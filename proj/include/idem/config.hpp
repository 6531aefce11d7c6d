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

// Experiment configuration files.
//
// Sectioned `key = value` text; `#` starts a comment. Top-level keys come
// before the first section. `[map]` may repeat, one section per map.
//
//   seed = 0
//
//   [space]
//   kind  = grid            # grid | matrix | points
//   lower = 0               # grid: per-axis bounds and cell counts
//   upper = 1
//   cells = 81
//   row   = 0 1 2           # matrix: one row per line
//   point = 0.5 0.25        # points: one point per line
//
//   [map]
//   A       = 1/3           # affine (grid only), row-major
//   b       = 2/3
//   table   = 0 0 1 1       # or an explicit image table
//   weight  = -1
//   witness = linear:1/3    # linear:<beta> | rational:<c> | none
//   lip     = 0.34          # optional declared Lipschitz constant
//
//   [initial]
//   kind  = dirac           # dirac | uniform | file
//   index = 0
//   file  = start.density
//
//   [run]
//   metric   = d1           # d1 | sup_density
//   tol      = 1e-12
//   max_iter = 200
//   output   = invariant.density
//
//   [verify]
//   pairs = 100
//   alpha = 1/3             # default: the discrete Lipschitz constant
//   q = 0.5
//   series_tol = 1e-6
//   d1_slack = 1e-9
//   series_slack = 1e-3
//
// Numbers may be written as fractions `p/q`.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "idem/density_io.hpp"
#include "idem/ifs.hpp"

namespace idem {

class ConfigError : public Error {
 public:
  using Error::Error;
};

struct SpaceSpec {
  enum class Kind { Grid, Matrix, Points };
  Kind kind = Kind::Grid;
  std::vector<double> lower, upper;
  std::vector<std::size_t> cells;
  std::vector<std::vector<double>> rows;
  std::vector<std::vector<double>> points;
  std::size_t line = 0;
};

struct MapSpec {
  std::vector<double> A, b;
  std::optional<PointMap> table;
  double weight = 0.0;
  std::optional<ComparisonFunction> witness;
  std::optional<double> declared_lip;
  std::size_t line = 0;
};

struct InitialSpec {
  enum class Kind { Dirac, Uniform, File };
  Kind kind = Kind::Uniform;
  Index index = 0;
  std::string file;
  std::size_t line = 0;
};

struct RunSpec {
  FixedPointMetric metric = FixedPointMetric::D1;
  double tol = 1e-12;
  std::size_t max_iter = 200;
  std::string output;
};

struct VerifySpec {
  std::size_t pairs = 100;
  std::optional<double> alpha;
  double q = 0.5;
  double series_tol = 1e-6;
  double d1_slack = 1e-9;
  double series_slack = 1e-3;
};

struct ExperimentConfig {
  std::string source;
  std::uint64_t seed = 0;
  SpaceSpec space;
  std::vector<MapSpec> maps;
  InitialSpec initial;
  RunSpec run;
  VerifySpec verify;
};

/// Throws ParseError with the offending line.
ExperimentConfig parse_config(std::istream& is, const std::string& source = "<config>");
ExperimentConfig read_config_file(const std::string& path);

/// Parses a real number or a fraction `p/q`.
double parse_real(const std::string& token);

FiniteMetricSpace build_space(const SpaceSpec& spec);

/// Weights that do not have maximum 0 are rejected with ConfigError unless
/// `renormalize` is set, in which case they are shifted by -max q_j.
/// Certificate violations propagate as CertificateError.
MaxPlusIFS build_ifs(const ExperimentConfig& cfg, const FiniteMetricSpace& space,
                     bool renormalize = false);

/// Relative paths in `file =` are resolved against the config's directory.
IdempotentMeasure build_initial(const ExperimentConfig& cfg, const FiniteMetricSpace& space);

}  // namespace idem
