// Copyright 2026 The Sikorski Authors
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

#include <doctest.h>

#include <cmath>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "sikorski/commands.hpp"

using namespace sikorski;

namespace {

SpecFile bundled(const std::string& name) {
  return load_spec(std::string(SIKORSKI_SPEC_DIR) + "/" + name + ".spec");
}

const Artifact* find(const RunResult& r, const std::string& name) {
  for (const auto& a : r.artifacts)
    if (a.name == name) return &a;
  return nullptr;
}

// Rows after the header, split on commas (test CSVs carry no quoted commas).
std::vector<std::vector<std::string>> rows(const std::string& csv) {
  std::vector<std::vector<std::string>> out;
  std::istringstream in(csv);
  std::string line;
  std::getline(in, line);
  while (std::getline(in, line)) {
    std::vector<std::string> cells;
    std::istringstream cell_in(line);
    std::string cell;
    while (std::getline(cell_in, cell, ',')) cells.push_back(cell);
    if (!line.empty() && line.back() == ',') cells.emplace_back();
    out.push_back(cells);
  }
  return out;
}

}  // namespace

TEST_CASE("complete on the real line adjoins the two ends") {
  const auto spec = bundled("real_line_atan");
  const auto r = run_command("complete", &spec, {});
  INFO(r.report);
  CHECK(r.exit_code == kExitOk);
  const auto* adjoined = find(r, "complete_adjoined.csv");
  REQUIRE(adjoined != nullptr);
  const auto table = rows(adjoined->content);
  REQUIRE(table.size() == 2);
  CHECK(table[0][0] == "up");
  CHECK(std::fabs(std::stod(table[0][1]) - std::numbers::pi / 2) <= 1e-3);
  CHECK(std::fabs(std::stod(table[1][1]) + std::numbers::pi / 2) <= 1e-3);
  // The identity coordinate adjoins nothing.
  const auto* compare = find(r, "complete_compare_adjoined.csv");
  REQUIRE(compare != nullptr);
  CHECK(rows(compare->content).empty());
  CHECK(find(r, "complete_report.txt") != nullptr);
}

TEST_CASE("compare-uniform reports the (10, 10.05) witness") {
  const auto spec = bundled("parabola_refinement");
  const auto r = run_command("compare-uniform", &spec, {});
  CHECK(r.exit_code == kExitOk);
  const auto table = rows(find(r, "compare_uniform.csv")->content);
  REQUIRE(table.size() == 3);
  CHECK(table[1][1] == "0.10000000000000001");
  CHECK(table[1][2] == "0");
  CHECK(std::stod(table[1][3]) == 10.0);
  CHECK(std::stod(table[1][4]) == doctest::Approx(10.05));
}

TEST_CASE("verify-filters needs no spec") {
  RunOptions opts;
  opts.max_size = 3;
  const auto r = run_command("verify-filters", nullptr, opts);
  CHECK(r.exit_code == kExitOk);
  CHECK(r.report.find("FAIL") == std::string::npos);
  CHECK(find(r, "verify_filters.csv") != nullptr);
  opts.max_size = 9;
  CHECK(run_command("verify-filters", nullptr, opts).exit_code == kExitUsage);
}

TEST_CASE("every bundled spec is deterministic") {
  for (const char* name : {"real_line_atan", "parabola_refinement", "spiral", "rationals_sqrt2",
                           "unit_interval_compact"}) {
    const auto spec = bundled(name);
    for (const auto& command : planned_commands(spec)) {
      const auto a = run_command(command, &spec, {});
      const auto b = run_command(command, &spec, {});
      INFO(name << " " << command << "\n" << a.report);
      CHECK(a.exit_code == kExitOk);
      REQUIRE(a.artifacts.size() == b.artifacts.size());
      for (std::size_t i = 0; i < a.artifacts.size(); ++i) {
        CHECK(a.artifacts[i].name == b.artifacts[i].name);
        CHECK(a.artifacts[i].content == b.artifacts[i].content);
      }
    }
  }
}

TEST_CASE("flags override spec settings") {
  const auto spec = bundled("real_line_atan");
  RunOptions strict;
  strict.tol = 1e-9;
  // At 1e-9 the atan tail no longer settles: nothing is adjoined.
  const auto r = run_command("complete", &spec, strict);
  CHECK(r.exit_code == kExitOk);
  CHECK(rows(find(r, "complete_adjoined.csv")->content).empty());
  CHECK(r.report.find("tol 1.0000000000000001e-09") != std::string::npos);
}

TEST_CASE("failure paths name the module") {
  const auto spec = bundled("real_line_atan");
  const auto unknown = run_command("frobnicate", &spec, {});
  CHECK(unknown.exit_code == kExitUsage);
  CHECK(unknown.report.find("error [cli]") == 0);
  CHECK(run_command("complete", nullptr, {}).exit_code == kExitUsage);

  // compare-uniform settings are absent from this spec.
  const auto missing = run_command("compare-uniform", &spec, {});
  CHECK(missing.exit_code == kExitUsage);
  CHECK(missing.report.find("compare-uniform.target") != std::string::npos);

  // The identity is unbounded on the line: compactify refuses it.
  const auto unbounded = parse_spec(R"(
[space]
name = R
params = t
ambient = x
domain.t = (-inf, inf)
samples.t = [-5, 5]:11
[generators]
id = x
[experiments]
compactify.normalize = false
)");
  const auto c = run_command("compactify", &unbounded, {});
  CHECK(c.exit_code == kExitInvariant);
  CHECK(c.report.find("error [compactify]") != std::string::npos);

  const auto bad_tol = parse_spec("[space]\nname = R\nparams = t\nambient = x\ndomain.t = [0, 1]\n"
                                   "samples.t = 3\n[generators]\ng = x\n[experiments]\ntol = 0\n");
  CHECK(run_command("embed", &bad_tol, {}).exit_code == kExitUsage);
}

TEST_CASE("format_number is shortest round-trip stable") {
  CHECK(format_number(0.1) == "0.10000000000000001");
  CHECK(format_number(-0.0) == "0");
  CHECK(format_number(2.0) == "2");
  CHECK(std::stod(format_number(std::numbers::pi)) == std::numbers::pi);
}
