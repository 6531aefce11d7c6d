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

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "doctest.h"
#include "idem/commands.hpp"
#include "idem/config.hpp"
#include "idem/density_io.hpp"
#include "idem/render.hpp"
#include "idem/sampling.hpp"
#include "support.hpp"

using idem::FiniteMetricSpace;
using idem::IdempotentMeasure;
using idem::MaxPlus;

namespace {

idem::ExperimentConfig config(const std::string& text) {
  std::istringstream is(text);
  return idem::parse_config(is, "test.cfg");
}

std::filesystem::path scratch(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() / "idem_unit";
  std::filesystem::create_directories(dir);
  return dir / name;
}

const char* kTwoPoint = R"(
seed = 3
[space]
kind = matrix
row = 0 1
row = 1 0
[map]
table = 0 0
weight = 0
witness = linear:0
[map]
table = 1 1
weight = -2
witness = linear:0
[initial]
kind = uniform
)";

}  // namespace

TEST_CASE("parse_real accepts fractions") {
  CHECK(idem::parse_real("1/3") == doctest::Approx(1.0 / 3.0));
  CHECK(idem::parse_real("-2.5") == -2.5);
  CHECK_THROWS(idem::parse_real("1/0"));
  CHECK_THROWS(idem::parse_real("x"));
}

TEST_CASE("config sections") {
  const auto cfg = config(kTwoPoint);
  CHECK(cfg.seed == 3);
  CHECK(cfg.space.kind == idem::SpaceSpec::Kind::Matrix);
  REQUIRE(cfg.maps.size() == 2);
  CHECK(cfg.maps[1].weight == -2.0);
  CHECK(cfg.maps[1].witness.has_value());
  const auto X = idem::build_space(cfg.space);
  const auto s = idem::build_ifs(cfg, X);
  CHECK(s.is_certified());
  CHECK(s.size() == 2);
}

TEST_CASE("config errors carry line numbers") {
  try {
    config("[space]\nkind = torus\n");
    FAIL("expected a parse error");
  } catch (const idem::ParseError& e) {
    CHECK(e.line() == 2);
  }
  CHECK_THROWS_AS(config("[nowhere]\n"), idem::ParseError);
  CHECK_THROWS_AS(config("seed = -1\n"), idem::ParseError);
  CHECK_THROWS_AS(config("[map]\nwitness = cubic:1\n"), idem::ParseError);
  CHECK_THROWS_AS(config("[map]\nwitness = linear:2\n"), idem::ParseError);
  CHECK_THROWS_AS(config("[run]\ntol = 0\n"), idem::ParseError);
  CHECK_THROWS_AS(config("[space]\nkind\n"), idem::ParseError);
}

TEST_CASE("weights must be normalized unless asked to shift") {
  std::string text = kTwoPoint;
  text.replace(text.find("weight = 0"), 10, "weight = 1");
  const auto cfg = config(text);
  const auto X = idem::build_space(cfg.space);
  CHECK_THROWS_AS(idem::build_ifs(cfg, X), idem::ConfigError);
  const auto s = idem::build_ifs(cfg, X, true);
  CHECK(s.weights()[0] == MaxPlus::zero());
  CHECK(s.weights()[1] == MaxPlus(-3.0));
}

TEST_CASE("failing witnesses surface as certificate errors") {
  const auto cfg = config(R"(
[space]
kind = grid
lower = 0
upper = 1
cells = 27
[map]
A = 1/3
b = 0
witness = linear:1/3
)");
  const auto X = idem::build_space(cfg.space);
  CHECK_THROWS_AS(idem::build_ifs(cfg, X), idem::CertificateError);
}

TEST_CASE("maps need exactly one definition") {
  const auto cfg = config("[space]\nkind = points\npoint = 0\npoint = 1\n[map]\n");
  const auto X = idem::build_space(cfg.space);
  CHECK_THROWS_AS(idem::build_ifs(cfg, X), idem::ConfigError);
  const auto bad = config("[space]\nkind = points\npoint = 0\npoint = 1\n[map]\ntable = 0 5\n");
  CHECK_THROWS_AS(idem::build_ifs(bad, X), idem::ConfigError);
  const auto affine = config("[space]\nkind = points\npoint = 0\npoint = 1\n[map]\nA = 1\nb = 0\n");
  CHECK_THROWS_AS(idem::build_ifs(affine, X), idem::ConfigError);
}

TEST_CASE("density files round trip") {
  idem::Rng rng(51);
  const auto G = idem::build_grid({0.0, -1.0}, {1.0, 1.0}, {3, 4});
  for (int t = 0; t < 20; ++t) {
    const auto mu = idem::random_measure(G, rng);
    std::stringstream ss;
    idem::write_density(ss, mu);
    const auto table = idem::parse_density(ss);
    CHECK(table.dimension == 2);
    CHECK(idem::to_measure(table, G) == mu);
    const auto rebuilt = idem::space_from_table(table);
    CHECK(rebuilt.size() == G.size());
    CHECK(rebuilt.dist(0, 19) == doctest::Approx(G.dist(0, 19)));
  }
}

TEST_CASE("density parse errors") {
  auto parse = [](const std::string& text) {
    std::istringstream is(text);
    return idem::parse_density(is, "d");
  };
  CHECK_NOTHROW(parse("# comment\nspace 2\n1 5 -inf\n0 4 0\n"));
  CHECK_THROWS_AS(parse("points 2\n"), idem::ParseError);
  CHECK_THROWS_AS(parse("space 2\n0 1 0\n"), idem::ParseError);
  CHECK_THROWS_AS(parse("space 2\n0 1 0\n0 2 -1\n"), idem::ParseError);
  CHECK_THROWS_AS(parse("space 2\n0 1 0\n2 2 -1\n"), idem::ParseError);
  CHECK_THROWS_AS(parse("space 2\n0 1 0\n1 2 3 -1\n"), idem::ParseError);
  CHECK_THROWS_AS(parse("space 1\n0 1 nan\n"), idem::ParseError);
  CHECK_THROWS_AS(parse("space 1\n0 x 0\n"), idem::ParseError);
  try {
    parse("space 2\n0 1 0\n\n1 2 zz\n");
  } catch (const idem::ParseError& e) {
    CHECK(e.line() == 4);
  }
  const auto t = parse("space 2\n0 0\n1 -inf\n");
  CHECK(t.dimension == 0);
  CHECK_THROWS_AS(idem::space_from_table(t), idem::Error);
  const auto X = FiniteMetricSpace::from_coordinates({{0.0}, {1.0}, {2.0}});
  CHECK_THROWS_AS(idem::to_measure(t, X), idem::SpaceMismatch);
  CHECK_THROWS_AS(idem::to_measure(parse("space 1\n0 -inf\n"),
                                   FiniteMetricSpace::from_coordinates({{0.0}})),
                  idem::Error);
}

TEST_CASE("render maps the floor to black and zero to white") {
  std::istringstream is("space 4\n0 0 0 0\n1 1 0 -1\n2 0 1 -4\n3 1 1 -inf\n");
  const auto t = idem::parse_density(is);
  const auto img = idem::render_density(t, -2.0);
  CHECK(img.width == 2);
  CHECK(img.height == 2);
  CHECK(img.at(0, 1) == 255);
  CHECK(img.at(1, 1) == 128);
  CHECK(img.at(0, 0) == 0);
  CHECK(img.at(1, 0) == 0);
  std::ostringstream os;
  idem::write_pgm(os, img);
  CHECK(os.str().rfind("P5\n2 2\n255\n", 0) == 0);
  CHECK(os.str().size() == std::string("P5\n2 2\n255\n").size() + 4);
  CHECK_THROWS(idem::render_density(t, 0.0));
}

TEST_CASE("metric specs") {
  CHECK(idem::parse_metric_spec("d1").kind == idem::MetricSpec::Kind::D1);
  const auto da = idem::parse_metric_spec("da:a=1/4");
  CHECK(da.a == 0.25);
  const auto dt = idem::parse_metric_spec("dtilde:alpha=0.3,q=0.5,tol=1e-8");
  CHECK(dt.series.alpha == 0.3);
  CHECK(dt.series.tol == 1e-8);
  CHECK(idem::parse_metric_spec("brz").tol == 1e-6);
  CHECK_THROWS_AS(idem::parse_metric_spec("da"), idem::ConfigError);
  CHECK_THROWS_AS(idem::parse_metric_spec("dtilde:alpha=0.3"), idem::ConfigError);
  CHECK_THROWS_AS(idem::parse_metric_spec("d1:z=1"), idem::ConfigError);
  CHECK_THROWS_AS(idem::parse_metric_spec("wasserstein"), idem::ConfigError);
}

TEST_CASE("solve, metric and verify commands") {
  const auto cfg = config(kTwoPoint);
  std::ostringstream out;
  CHECK(idem::cmd_solve(cfg, {}, out) == idem::kExitOk);
  CHECK(out.str().find("converged yes") != std::string::npos);

  const auto a = scratch("a.density");
  const auto b = scratch("b.density");
  const auto X = FiniteMetricSpace::from_coordinates({{0.0}, {1.0}});
  idem::write_density_file(a.string(), idem::dirac(X, 0));
  idem::write_density_file(b.string(), idem::dirac(X, 1));
  std::ostringstream m;
  CHECK(idem::cmd_metric(a.string(), b.string(), "da:a=2", std::nullopt, m) == idem::kExitOk);
  CHECK(m.str() == "2\n");
  std::ostringstream brz;
  idem::cmd_metric(a.string(), b.string(), "brz:tol=1e-9", std::nullopt, brz);
  CHECK(std::stod(brz.str()) == doctest::Approx(1.0).epsilon(1e-8));
  CHECK(brz.str().find("\ntail ") != std::string::npos);

  const auto v = config(std::string(kTwoPoint) + "[verify]\npairs = 10\n");
  std::ostringstream vo;
  CHECK(idem::cmd_verify(v, {}, vo) == idem::kExitOk);
  CHECK(vo.str().find("result PASS") != std::string::npos);

  std::string unc = kTwoPoint;
  unc.replace(unc.find("witness = linear:0"), 18, "witness = none");
  std::ostringstream err;
  const int code = idem::run_guarded(
      [&] {
        std::ostringstream o;
        return idem::cmd_verify(config(unc), {}, o);
      },
      err);
  CHECK(code == idem::kExitCertificateFailure);
}

TEST_CASE("non-convergence has its own exit code") {
  const auto cfg = config(R"(
[space]
kind = points
point = 0
point = 1
[map]
table = 1 0
[initial]
kind = dirac
index = 0
[run]
max_iter = 10
)");
  std::ostringstream out;
  CHECK(idem::cmd_solve(cfg, {}, out) == idem::kExitNonConvergence);
}

TEST_CASE("re-solving from a solved density is immediately exact") {
  const auto path = scratch("two_point_fixed.density");
  idem::RunOptions opts;
  opts.output = path.string();
  std::ostringstream first;
  REQUIRE(idem::cmd_solve(config(kTwoPoint), opts, first) == idem::kExitOk);

  std::string again = kTwoPoint;
  again.replace(again.find("kind = uniform"), 14, "kind = file\nfile = " + path.string());
  std::ostringstream second;
  CHECK(idem::cmd_solve(config(again), {}, second) == idem::kExitOk);
  CHECK(second.str().find("iterations 1\n") != std::string::npos);
  CHECK(second.str().find("final_residual 0\n") != std::string::npos);
  CHECK(second.str().find("exact_fixed_point yes\n") != std::string::npos);
}

TEST_CASE("reports are deterministic for a fixed seed") {
  const auto v = config(std::string(kTwoPoint) + "[verify]\npairs = 25\n");
  std::ostringstream a, b;
  idem::cmd_verify(v, {}, a);
  idem::cmd_verify(v, {}, b);
  CHECK(a.str() == b.str());
  std::ostringstream s1, s2;
  idem::cmd_solve(v, {}, s1);
  idem::cmd_solve(v, {}, s2);
  CHECK(s1.str() == s2.str());
}
