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

// idem: invariant idempotent measures of max-plus IFSs.
//
//   idem solve <config> [-o out.density] [--renormalize]
//   idem attractor <config>
//   idem verify <config>
//   idem metric <fileA> <fileB> <spec> [--config cfg]
//   idem render <file> <out.pgm> --floor <r>

#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "idem/commands.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Invariant idempotent measures of max-plus normalized IFSs"};
  app.require_subcommand(1);

  std::string config;
  idem::RunOptions opts;

  auto* solve = app.add_subcommand("solve", "Iterate the Markov operator to its fixed point");
  solve->add_option("config", config, "Experiment config")->required();
  solve->add_option("-o,--output", opts.output, "Density output file");
  solve->add_flag("--renormalize", opts.renormalize, "Shift weights so that max q_j = 0");

  auto* attr = app.add_subcommand("attractor", "Fixed set of the Hutchinson set operator");
  attr->add_option("config", config, "Experiment config")->required();
  attr->add_flag("--renormalize", opts.renormalize, "Shift weights so that max q_j = 0");

  auto* verify = app.add_subcommand("verify", "Check the d1 and series contraction bounds");
  verify->add_option("config", config, "Experiment config")->required();
  verify->add_flag("--renormalize", opts.renormalize, "Shift weights so that max q_j = 0");

  std::string file_a, file_b, spec, metric_config;
  auto* metric = app.add_subcommand("metric", "Distance between two density files");
  metric->add_option("fileA", file_a)->required();
  metric->add_option("fileB", file_b)->required();
  metric->add_option("spec", spec, "d1 | da:a=R | dtilde:alpha=R,q=R,tol=R | brz:tol=R")
      ->required();
  metric->add_option("--config", metric_config, "Take the space from this config");

  std::string density, image;
  double floor = -10.0;
  auto* render = app.add_subcommand("render", "Write a density as a binary PGM image");
  render->add_option("file", density)->required();
  render->add_option("out", image)->required();
  render->add_option("--floor", floor, "Density mapped to black (negative)")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : idem::kExitConfigError;
  }

  return idem::run_guarded(
      [&]() -> int {
        if (*solve) return idem::cmd_solve(idem::read_config_file(config), opts, std::cout);
        if (*attr) return idem::cmd_attractor(idem::read_config_file(config), opts, std::cout);
        if (*verify) return idem::cmd_verify(idem::read_config_file(config), opts, std::cout);
        if (*metric) {
          std::optional<idem::ExperimentConfig> cfg;
          if (!metric_config.empty()) cfg = idem::read_config_file(metric_config);
          return idem::cmd_metric(file_a, file_b, spec, cfg, std::cout);
        }
        return idem::cmd_render(density, image, floor, std::cout);
      },
      std::cerr);
}
