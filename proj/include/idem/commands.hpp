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

// Batch commands behind the `idem` executable.
//
// Each command writes a deterministic plain-text report and returns an exit
// status; errors are thrown and mapped to statuses by run_guarded().

#include <functional>
#include <iosfwd>
#include <optional>
#include <string>

#include "idem/config.hpp"
#include "idem/metrics.hpp"

namespace idem {

enum ExitCode : int {
  kExitOk = 0,
  kExitConfigError = 2,
  kExitCertificateFailure = 3,
  kExitNonConvergence = 4,
  kExitVerificationViolation = 5,
};

struct RunOptions {
  bool renormalize = false;
  std::string output;  ///< overrides [run] output
};

int cmd_solve(const ExperimentConfig& cfg, const RunOptions& opts, std::ostream& out);
int cmd_attractor(const ExperimentConfig& cfg, const RunOptions& opts, std::ostream& out);
int cmd_verify(const ExperimentConfig& cfg, const RunOptions& opts, std::ostream& out);

struct MetricSpec {
  enum class Kind { D1, Da, DTilde, Brz };
  Kind kind = Kind::D1;
  double a = 1.0;
  SeriesParams series;
  double tol = 1e-6;
};

/// `d1`, `da:a=<r>`, `dtilde:alpha=<r>,q=<r>,tol=<r>` or `brz:tol=<r>`.
MetricSpec parse_metric_spec(const std::string& text);

/// Prints the value with 12 significant digits; series metrics add a
/// `tail <bound>` line. Without a config the space is rebuilt from the
/// files' coordinates.
int cmd_metric(const std::string& file_a, const std::string& file_b, const std::string& spec,
               const std::optional<ExperimentConfig>& cfg, std::ostream& out);

int cmd_render(const std::string& density_file, const std::string& image_file, double floor,
               std::ostream& out);

/// Runs `body`, mapping ParseError/ConfigError/other idem::Error to 2 and
/// CertificateError to 3; the message goes to `err`.
int run_guarded(const std::function<int()>& body, std::ostream& err);

}  // namespace idem
